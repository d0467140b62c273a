#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetlc {

/// Largest supported base dimension.
inline constexpr int kMaxDimension = 4;

/// Every jet coordinate owns a fixed slot in the n = 4 layout:
///   x^k            -> slots  0..3
///   y_ij  (i <= j) -> slots  4..13
///   y_ij,k (i <= j)-> slots 14..53
/// For smaller n the active slots keep their relative order, so the slot
/// order is also the covector order dX < dY < dYJet (lexicographic inside).
inline constexpr int kSlotCount = 54;

/// Bit set over slots; a sorted tuple of distinct covectors is the same thing.
using SlotMask = std::uint64_t;

class UnsupportedDimension : public std::invalid_argument {
 public:
  explicit UnsupportedDimension(int n);
};

void require_dimension(int n);

enum class CoordKind : std::uint8_t { Base, Metric, MetricJet };

/// A coordinate of the first jet bundle of metrics. Indices are 0-based in
/// code and printed 1-based. Metric indices are normalized so that i <= j.
class JetCoordinate {
 public:
  static JetCoordinate base(int k);
  static JetCoordinate metric(int i, int j);
  static JetCoordinate metric_jet(int i, int j, int k);
  static JetCoordinate from_slot(int slot);

  CoordKind kind() const { return kind_; }
  int i() const { return i_; }
  int j() const { return j_; }
  int k() const { return k_; }

  int slot() const;
  /// True when every index is < n.
  bool active_in(int n) const;
  /// "x1", "y12", "y12,3".
  std::string name() const;
  /// Inverse of name(); throws ParseError on malformed input.
  static JetCoordinate parse(const std::string& name);

  friend bool operator==(const JetCoordinate&, const JetCoordinate&) = default;

 private:
  JetCoordinate(CoordKind kind, int i, int j, int k) : kind_(kind), i_(i), j_(j), k_(k) {}
  CoordKind kind_;
  int i_ = 0, j_ = 0, k_ = 0;
};

/// n + n(n+1)/2 + n^2(n+1)/2
int coordinate_count(int n);

/// Active slots for dimension n in increasing order.
const std::vector<int>& active_slots(int n);

/// Mask of the active slots for dimension n.
SlotMask active_mask(int n);

inline int base_slot(int k) { return k; }
int metric_slot(int i, int j);
int metric_jet_slot(int i, int j, int k);

/// Smallest supported dimension (>= 2) whose active slots cover `mask`.
int dimension_for_mask(SlotMask mask);

}  // namespace jetlc

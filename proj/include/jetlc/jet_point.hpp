#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "jetlc/coords.hpp"
#include "jetlc/rational.hpp"

namespace jetlc {

using RationalMatrix = std::vector<std::vector<Rational>>;

class InvalidPoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact assignment of every jet coordinate at fixed dimension n. The metric
/// block (y_ij) must be positive definite; `validated` checks this.
class JetPoint {
 public:
  /// Normal point: x = 0, y = identity, all jets 0.
  static JetPoint normal(int n);

  /// y = identity + symmetric perturbation with entries in [-1/4, 1/4]
  /// (resampled until positive definite), jets uniform in [-2, 2], base
  /// coordinates uniform in [-2, 2].
  static JetPoint random(int n, Rng& rng);

  int dimension() const { return n_; }
  const Rational& operator[](int slot) const { return values_[slot]; }
  const Rational& at(const JetCoordinate& c) const { return values_[c.slot()]; }

  /// Copy with one coordinate replaced.
  JetPoint with(const JetCoordinate& c, const Rational& value) const;
  void set(const JetCoordinate& c, const Rational& value);

  RationalMatrix metric() const;
  bool positive_definite() const;
  /// Returns *this or throws InvalidPoint when the metric is not positive definite.
  const JetPoint& validated() const;

 private:
  explicit JetPoint(int n);
  int n_;
  std::array<Rational, kSlotCount> values_;
};

/// Exact determinant by fraction-based elimination.
Rational determinant(RationalMatrix m);
/// Exact inverse; throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);
bool leading_minors_positive(const RationalMatrix& m);

}  // namespace jetlc

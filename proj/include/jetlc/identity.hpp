#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "jetlc/expr.hpp"
#include "jetlc/jet_point.hpp"

namespace jetlc {

/// Settings for identity testing of coefficient functions. Polynomial
/// differences are decided by expansion; everything else by exact evaluation
/// at `trials` deterministic pseudo-random jet points (Schwartz-Zippel style
/// probabilistic identity testing for rational functions).
struct IdentitySettings {
  int trials = 24;
  std::uint64_t seed = 1;
  /// 0 = infer from the slots the expressions depend on.
  int dimension = 0;
};

struct IdentityOutcome {
  bool holds = true;
  /// True when every compared coefficient was polynomial and decided by expansion.
  bool by_normalization = true;
  std::optional<JetPoint> witness;
  std::string detail;
  explicit operator bool() const { return holds; }
};

/// a == b as functions, decided as described in IdentitySettings.
IdentityOutcome test_identity(const Expr& a, const Expr& b, const IdentitySettings& settings = {});

/// True iff a - b vanishes at `trials` pseudo-random points drawn from `seed`.
/// Throws DivisionByZero if no admissible point is found after bounded retries.
bool equal_probabilistic(const Expr& a, const Expr& b, int trials, std::uint64_t seed);

/// Draws admissible sample points for a batch of expressions: points where
/// evaluation raises DivisionByZero are skipped (bounded retries).
class PointSampler {
 public:
  PointSampler(int dimension, std::uint64_t seed) : dimension_(dimension), rng_(seed) {}
  JetPoint next() { return JetPoint::random(dimension_, rng_); }
  int dimension() const { return dimension_; }
  Rng& rng() { return rng_; }

 private:
  int dimension_;
  Rng rng_;
};

inline constexpr int kMaxResamplesPerTrial = 16;

}  // namespace jetlc

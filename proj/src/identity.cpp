#include "jetlc/identity.hpp"

namespace jetlc {

IdentityOutcome test_identity(const Expr& a, const Expr& b, const IdentitySettings& settings) {
  IdentityOutcome out;
  const Expr diff = a - b;
  if (diff.is_zero()) return out;
  const int n = settings.dimension ? settings.dimension : dimension_for_mask(diff.deps());
  if (auto poly = expand_polynomial(diff)) {
    out.holds = poly->empty();
    if (out.holds) return out;
    out.detail = "nonzero polynomial difference";
    // a nonzero polynomial is nonzero at almost every sample point
    PointSampler sampler(n, settings.seed);
    for (int t = 0; t < kMaxResamplesPerTrial * settings.trials; ++t) {
      JetPoint p = sampler.next();
      const Rational v = eval(diff, p);
      if (!is_zero(v)) {
        out.witness = p;
        out.detail += " (evaluates to " + to_fraction_string(v) + " at the witness)";
        break;
      }
    }
    return out;
  }
  out.by_normalization = false;
  PointSampler sampler(n, settings.seed);
  int done = 0, attempts = 0;
  while (done < settings.trials) {
    JetPoint p = sampler.next();
    try {
      Rational v = eval(diff, p);
      ++done;
      if (!is_zero(v)) {
        out.holds = false;
        out.witness = p;
        out.detail = "difference evaluates to " + to_fraction_string(v);
        return out;
      }
    } catch (const DivisionByZero&) {
      if (++attempts > kMaxResamplesPerTrial * settings.trials) throw;
    }
  }
  return out;
}

bool equal_probabilistic(const Expr& a, const Expr& b, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("equal_probabilistic: trials must be >= 1");
  const Expr diff = a - b;
  const int n = dimension_for_mask(diff.deps());
  PointSampler sampler(n, seed);
  int done = 0, attempts = 0;
  while (done < trials) {
    JetPoint p = sampler.next();
    try {
      if (!is_zero(eval(diff, p))) return false;
      ++done;
    } catch (const DivisionByZero&) {
      if (++attempts > kMaxResamplesPerTrial * trials) throw;
    }
  }
  return true;
}

}  // namespace jetlc

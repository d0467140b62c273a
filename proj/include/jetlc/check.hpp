#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace jetlc {

/// How an identity was established.
///  Symbolic: every coefficient compared as a function (expansion for
///            polynomials, seeded probabilistic identity testing otherwise).
///  Sampled:  exact evaluation at seeded random points on random tangent tuples.
enum class CheckMode { Auto, Symbolic, Sampled };

const char* to_string(CheckMode mode);

struct CheckSettings {
  CheckMode mode = CheckMode::Auto;
  std::uint64_t seed = 1;
  /// Points per coefficient identity test in symbolic mode.
  int trials = 24;
  /// (point, tangent tuple) cases in sampled mode.
  int samples = 50;
};

struct CheckOutcome {
  bool passed = true;
  CheckMode mode = CheckMode::Symbolic;
  int cases = 0;
  std::string detail;
  nlohmann::json witness;  // null when there is nothing to show

  explicit operator bool() const { return passed; }
};

/// Resolves Auto: symbolic up to `symbolic_max_n`, sampled above.
inline CheckMode resolve_mode(CheckMode requested, int n, int symbolic_max_n) {
  if (requested != CheckMode::Auto) return requested;
  return n <= symbolic_max_n ? CheckMode::Symbolic : CheckMode::Sampled;
}

}  // namespace jetlc

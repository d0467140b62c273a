#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jetlc {

/// Exact rational number. mpq_class keeps values canonical (reduced,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Formats as "<num>/<den>", always with an explicit denominator.
std::string to_fraction_string(const Rational& q);

/// Accepts "<num>/<den>", "<num>" and surrounding whitespace.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Deterministic pseudo-random source used by every sampler in the library.
/// Only raw 64-bit outputs of mt19937_64 are consumed, so sequences are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Rational num/den with den drawn from [1, max_den] and value in [lo, hi].
  Rational uniform_rational(const Rational& lo, const Rational& hi, int max_den);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jetlc

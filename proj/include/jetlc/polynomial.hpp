#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jetlc/coords.hpp"
#include "jetlc/expr.hpp"
#include "jetlc/rational.hpp"
#include "json.hpp"

namespace jetlc {

/// Sparse polynomial in the base coordinates x^1..x^n with exact rational
/// coefficients. Used for chart maps and metric sections.
class Polynomial {
 public:
  using Exponents = std::array<std::uint8_t, kMaxDimension>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(int variables = 0) : variables_(variables) {}
  static Polynomial constant(int variables, const Rational& c);
  static Polynomial variable(int variables, int k);
  static Polynomial from_terms(int variables, Terms terms);

  int variables() const { return variables_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  Rational operator()(std::span<const Rational> x) const;
  Polynomial derivative(int k) const;
  /// Substitutes x^k -> inner[k].
  Polynomial compose(const std::vector<Polynomial>& inner) const;
  /// Expression over the base jet coordinates.
  Expr to_expr() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

  /// JSON object: exponent tuple "e1,e2,..." -> fraction string.
  nlohmann::json to_json() const;
  static Polynomial from_json(int variables, const nlohmann::json& j);

 private:
  void prune();
  int variables_;
  Terms terms_;
};

using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

}  // namespace jetlc

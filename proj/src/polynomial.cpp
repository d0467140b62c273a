#include "jetlc/polynomial.hpp"

#include <sstream>

namespace jetlc {

void Polynomial::prune() {
  std::erase_if(terms_, [](const auto& kv) { return jetlc::is_zero(kv.second); });
}

Polynomial Polynomial::constant(int variables, const Rational& c) {
  Polynomial p(variables);
  if (!jetlc::is_zero(c)) p.terms_[Exponents{}] = c;
  return p;
}

Polynomial Polynomial::variable(int variables, int k) {
  if (k < 0 || k >= variables) throw std::out_of_range("Polynomial::variable");
  Polynomial p(variables);
  Exponents e{};
  e[k] = 1;
  p.terms_[e] = 1;
  return p;
}

Polynomial Polynomial::from_terms(int variables, Terms terms) {
  Polynomial p(variables);
  for (const auto& [e, c] : terms)
    for (int k = variables; k < kMaxDimension; ++k)
      if (e[k] != 0) throw std::invalid_argument("Polynomial: exponent on an inactive variable");
  p.terms_ = std::move(terms);
  p.prune();
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (auto v : e) t += v;
    d = std::max(d, t);
  }
  return d;
}

Rational Polynomial::operator()(std::span<const Rational> x) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < variables_; ++k)
      for (int r = 0; r < e[k]; ++r) t *= x[k];
    total += t;
  }
  return total;
}

Polynomial Polynomial::derivative(int k) const {
  Polynomial d(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents f = e;
    --f[k];
    d.terms_[f] += c * e[k];
  }
  d.prune();
  return d;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  r.variables_ = std::max(a.variables_, b.variables_);
  for (const auto& [e, c] : b.terms_) r.terms_[e] += c;
  r.prune();
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Rational& s, const Polynomial& a) {
  Polynomial r(a.variables_);
  if (jetlc::is_zero(s)) return r;
  for (const auto& [e, c] : a.terms_) r.terms_[e] = s * c;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.variables_, b.variables_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e{};
      for (int k = 0; k < kMaxDimension; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
      r.terms_[e] += ca * cb;
    }
  r.prune();
  return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& inner) const {
  if (static_cast<int>(inner.size()) < variables_) throw std::invalid_argument("Polynomial::compose: arity");
  const int out_vars = inner.empty() ? variables_ : inner.front().variables();
  Polynomial total(out_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(out_vars, c);
    for (int k = 0; k < variables_; ++k)
      for (int r = 0; r < e[k]; ++r) t = t * inner[k];
    total = total + t;
  }
  return total;
}

Expr Polynomial::to_expr() const {
  std::vector<Expr> terms;
  for (const auto& [e, c] : terms_) {
    std::vector<Expr> factors{Expr(c)};
    for (int k = 0; k < variables_; ++k)
      if (e[k]) factors.push_back(power(Expr::x(k), e[k]));
    terms.push_back(product(std::move(factors)));
  }
  return sum(std::move(terms));
}

nlohmann::json Polynomial::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [e, c] : terms_) {
    std::string key;
    for (int k = 0; k < variables_; ++k) {
      if (k) key += ',';
      key += std::to_string(e[k]);
    }
    j[key] = to_fraction_string(c);
  }
  return j;
}

Polynomial Polynomial::from_json(int variables, const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("polynomial must be a JSON object of exponent tuple -> fraction string");
  Terms terms;
  for (const auto& [key, value] : j.items()) {
    Exponents e{};
    std::stringstream ss(key);
    std::string part;
    int k = 0;
    while (std::getline(ss, part, ',')) {
      if (k >= variables) throw ParseError("exponent tuple '" + key + "' has too many entries");
      int v = 0;
      try {
        v = std::stoi(part);
      } catch (const std::exception&) {
        throw ParseError("bad exponent tuple '" + key + "'");
      }
      if (v < 0 || v > 255) throw ParseError("bad exponent in '" + key + "'");
      e[k++] = static_cast<std::uint8_t>(v);
    }
    if (k != variables) throw ParseError("exponent tuple '" + key + "' must have " + std::to_string(variables) + " entries");
    Rational c = value.is_string() ? parse_rational(value.get<std::string>())
                 : value.is_number_integer() ? Rational(value.get<long>())
                                             : throw ParseError("coefficient for '" + key + "' must be a fraction string");
    terms[e] += c;
  }
  return from_terms(variables, std::move(terms));
}

}  // namespace jetlc

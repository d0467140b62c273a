#include "jetlc/jet_point.hpp"

#include <utility>

namespace jetlc {

JetPoint::JetPoint(int n) : n_(n) { require_dimension(n); }

JetPoint JetPoint::normal(int n) {
  JetPoint p(n);
  for (int i = 0; i < n; ++i) p.values_[metric_slot(i, i)] = 1;
  return p;
}

JetPoint JetPoint::random(int n, Rng& rng) {
  JetPoint p(n);
  const Rational quarter(1, 4), two(2);
  for (int attempt = 0;; ++attempt) {
    for (int k = 0; k < n; ++k) p.values_[base_slot(k)] = rng.uniform_rational(-two, two, 6);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        p.values_[metric_slot(i, j)] = (i == j ? Rational(1) : Rational(0)) +
                                        rng.uniform_rational(-quarter, quarter, 12);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = 0; k < n; ++k)
          p.values_[metric_jet_slot(i, j, k)] = rng.uniform_rational(-two, two, 6);
    if (p.positive_definite()) return p;
    if (attempt > 1000) throw std::logic_error("JetPoint::random: cannot draw a positive definite metric");
  }
}

JetPoint JetPoint::with(const JetCoordinate& c, const Rational& value) const {
  JetPoint copy = *this;
  copy.set(c, value);
  return copy;
}

void JetPoint::set(const JetCoordinate& c, const Rational& value) {
  if (!c.active_in(n_)) throw InvalidPoint("coordinate " + c.name() + " is not active in this dimension");
  values_[c.slot()] = value;
}

RationalMatrix JetPoint::metric() const {
  RationalMatrix g(n_, std::vector<Rational>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) g[i][j] = values_[metric_slot(i, j)];
  return g;
}

bool JetPoint::positive_definite() const { return leading_minors_positive(metric()); }

const JetPoint& JetPoint::validated() const {
  if (!positive_definite()) throw InvalidPoint("metric block of the jet point is not positive definite");
  return *this;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m = a;
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    std::swap(m[pivot], m[c]);
    std::swap(inv[pivot], inv[c]);
    const Rational p = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(m[r][c])) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

bool leading_minors_positive(const RationalMatrix& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    RationalMatrix sub(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
    if (sgn(determinant(sub)) <= 0) return false;
  }
  return true;
}

}  // namespace jetlc

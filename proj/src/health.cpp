#include "jetlc/health.hpp"

#include <bit>

#include "jetlc/serialize.hpp"

namespace jetlc {

namespace {

Rational small_rational(Rng& rng) { return rng.uniform_rational(Rational(-3), Rational(3), 3); }

/// Random subset of `count` distinct elements of `pool`, as a mask.
SlotMask random_key(const std::vector<int>& pool, int count, Rng& rng) {
  SlotMask key = 0;
  while (std::popcount(key) < count) key |= SlotMask{1} << pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
  return key;
}

std::vector<int> first_slots(int m) {
  std::vector<int> out(m);
  for (int i = 0; i < m; ++i) out[i] = i;
  return out;
}

CheckOutcome fail(int cases, std::string detail, nlohmann::json witness = nullptr) {
  CheckOutcome out;
  out.passed = false;
  out.mode = CheckMode::Sampled;
  out.cases = cases;
  out.detail = std::move(detail);
  out.witness = std::move(witness);
  return out;
}

CheckOutcome pass(CheckMode mode, int cases) {
  CheckOutcome out;
  out.mode = mode;
  out.cases = cases;
  return out;
}

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RationalMatrix mat_transpose(const RationalMatrix& a) {
  RationalMatrix t = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i];
  return t;
}

}  // namespace

Expr random_coefficient(int n, Rng& rng, bool rational) {
  const auto& slots = active_slots(n);
  std::vector<Expr> terms{Expr(small_rational(rng))};
  const int count = static_cast<int>(rng.uniform_int(1, 3));
  for (int t = 0; t < count; ++t) {
    std::vector<Expr> factors{Expr(small_rational(rng))};
    const int vars = static_cast<int>(rng.uniform_int(1, 2));
    for (int v = 0; v < vars; ++v) {
      const int slot = slots[rng.uniform_int(0, static_cast<int>(slots.size()) - 1)];
      factors.push_back(power(Expr::slot(slot), static_cast<int>(rng.uniform_int(1, 2))));
    }
    terms.push_back(product(std::move(factors)));
  }
  Expr p = sum(std::move(terms));
  if (!rational) return p;
  return p / (Expr(1) + power(Expr::y(0, 0), 2));
}

DiffForm random_form(int n, int degree, int terms, Rng& rng, bool rational) {
  FormAccumulator<Expr> acc(degree);
  for (int t = 0; t < terms; ++t) acc.add(random_key(active_slots(n), degree, rng), random_coefficient(n, rng, rational));
  DiffForm f = acc.finish();
  return f.is_zero() && degree == 0 ? DiffForm::scalar(Expr(1)) : f;
}

FormValue random_form_value(int slots, int degree, int terms, Rng& rng) {
  FormAccumulator<Rational> acc(degree);
  const auto pool = first_slots(slots);
  for (int t = 0; t < terms; ++t) acc.add(random_key(pool, degree, rng), small_rational(rng));
  return acc.finish();
}

MatrixFormValue random_antisymmetric(int size, int degree, int slots, int terms, Rng& rng) {
  MatrixFormValue a(size, degree);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      FormValue f = random_form_value(slots, degree, terms, rng);
      a.set(i, j, f);
      a.set(j, i, -f);
    }
  return a;
}

RationalMatrix random_invertible(int size, Rng& rng) {
  for (;;) {
    RationalMatrix m(size, std::vector<Rational>(size));
    for (auto& row : m)
      for (auto& v : row) v = small_rational(rng);
    if (!is_zero(determinant(m))) return m;
  }
}

CheckOutcome check_d_squared(const CheckSettings& settings) {
  Rng rng(settings.seed);
  int cases = 0;
  for (int n : {2, 3})
    for (int degree = 0; degree <= 2; ++degree)
      for (bool rational : {false, true})
        for (int s = 0; s < settings.samples; ++s) {
          const DiffForm a = random_form(n, degree, 3, rng, rational);
          Differentiator d;
          const DiffForm dda = dext(dext(a, d), d);
          const auto r = forms_identical(dda, DiffForm(degree + 2), {settings.trials, settings.seed, n});
          ++cases;
          if (!r.holds) return fail(cases, "d(d a) != 0: " + r.detail, {{"form", to_json(a)}});
        }
  return pass(CheckMode::Symbolic, cases);
}

CheckOutcome check_wedge_laws(const CheckSettings& settings) {
  Rng rng(settings.seed);
  int cases = 0;
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      for (int s = 0; s < settings.samples; ++s) {
        const FormValue a = random_form_value(10, p, 4, rng), b = random_form_value(10, q, 4, rng),
                        c = random_form_value(10, 2, 3, rng);
        const FormValue ab = wedge(a, b), ba = wedge(b, a);
        ++cases;
        if (ab.terms() != ((p * q) % 2 ? -ba : ba).terms())
          return fail(cases, "graded commutativity fails", {{"a", to_json(a)}, {"b", to_json(b)}});
        if (wedge(ab, c).terms() != wedge(a, wedge(b, c)).terms())
          return fail(cases, "associativity fails", {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}});
      }
  // symbolic coefficients
  for (int s = 0; s < settings.samples; ++s) {
    const DiffForm a = random_form(2, 1, 3, rng, true), b = random_form(2, 2, 3, rng), c = random_form(2, 1, 2, rng);
    const IdentitySettings id{settings.trials, settings.seed, 2};
    ++cases;
    if (!forms_identical(wedge(a, b), wedge(b, a), id).holds)
      return fail(cases, "graded commutativity fails for symbolic forms", {{"a", to_json(a)}, {"b", to_json(b)}});
    if (!forms_identical(wedge(wedge(a, b), c), wedge(a, wedge(b, c)), id).holds)
      return fail(cases, "associativity fails for symbolic forms");
    if (!forms_identical(wedge(a, a), DiffForm(2), id).holds) return fail(cases, "a ^ a != 0 for a 1-form");
  }
  return pass(CheckMode::Symbolic, cases);
}

CheckOutcome check_pfaffian_congruence(const CheckSettings& settings) {
  Rng rng(settings.seed);
  int cases = 0;
  for (int size : {2, 4})
    for (int s = 0; s < settings.samples; ++s) {
      const MatrixFormValue a = random_antisymmetric(size, 2, 10, 2, rng);
      const RationalMatrix b = random_invertible(size, rng);
      const MatrixFormValue btab = right_multiply(left_multiply(mat_transpose(b), a), b);
      const FormValue lhs = pfaffian(btab);
      const FormValue rhs = scale(determinant(b), pfaffian(a));
      ++cases;
      if (lhs.terms() != rhs.terms())
        return fail(cases, "Pf(B^T A B) != det B Pf(A)", {{"A", to_json(a)}, {"B", to_json(b)}});
      const FormValue pf = pfaffian(a);
      if (wedge(pf, pf).terms() != wedge_determinant(a).terms())
        return fail(cases, "Pf(A)^2 != det(A)", {{"A", to_json(a)}});
    }
  return pass(CheckMode::Sampled, cases);
}

CheckOutcome check_char_coeff_conjugation(const CheckSettings& settings) {
  Rng rng(settings.seed);
  int cases = 0;
  for (int size : {2, 3, 4})
    for (int s = 0; s < settings.samples; ++s) {
      MatrixFormValue a(size, 2);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) a.set(i, j, random_form_value(10, 2, 2, rng));
      const RationalMatrix m = random_invertible(size, rng);
      const MatrixFormValue conj = right_multiply(left_multiply(m, a), inverse(m));
      ++cases;
      for (int k = 0; 2 * k <= size; ++k) {
        const auto lhs = char_coeff(k, conj), rhs = char_coeff(k, a);
        if (lhs.two_pi_power != rhs.two_pi_power || lhs.form.terms() != rhs.form.terms())
          return fail(cases, "char_coeff(" + std::to_string(k) + ") not conjugation invariant",
                      {{"A", to_json(a)}, {"S", to_json(m)}});
      }
    }
  return pass(CheckMode::Sampled, cases);
}

}  // namespace jetlc

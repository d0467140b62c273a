#include "doctest.h"
#include "jetlc/geometry.hpp"
#include "jetlc/health.hpp"

using namespace jetlc;

namespace {

DiffForm dX(int k) { return DiffForm::basis(base_slot(k)); }
DiffForm dY(int i, int j) { return DiffForm::basis(metric_slot(i, j)); }
DiffForm dYJ(int i, int j, int k) { return DiffForm::basis(metric_jet_slot(i, j, k)); }

TangentVector along(const JetCoordinate& c) { return TangentVector::along(c); }

}  // namespace

TEST_CASE("wedge basics") {
  const DiffForm w = wedge(dX(0), dX(1));
  CHECK(w.degree() == 2);
  CHECK(w.size() == 1);
  CHECK(wedge(dX(0), dX(0)).is_zero());
  CHECK(forms_identical(wedge(dX(1), dX(0)), -w).holds);
}

TEST_CASE("exterior derivative") {
  CHECK(forms_identical(dext(DiffForm::scalar(Expr::y(0, 0))), dY(0, 0)).holds);
  // d(dy11 - y11,k dx^k) = - sum_k dy11,k ^ dx^k
  const auto ctx = build_context(2);
  DiffForm expected(2);
  for (int k = 0; k < 2; ++k) expected = expected - wedge(dYJ(0, 0, k), dX(k));
  CHECK(forms_identical(dext(ctx.theta(0, 0)), expected).holds);
}

TEST_CASE("evaluation is alternating") {
  const JetPoint p = JetPoint::normal(2);
  const DiffForm w = wedge(dX(0), dX(1));
  const std::vector<TangentVector> v12{along(JetCoordinate::base(0)), along(JetCoordinate::base(1))};
  const std::vector<TangentVector> v21{v12[1], v12[0]};
  CHECK(evaluate(w, p, v12) == 1);
  CHECK(evaluate(w, p, v21) == -1);
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const FormValue a = random_form_value(8, 3, 5, rng);
    auto vs = random_tangents(2, 3, rng);
    // random tangents live on the n = 2 slots; keep a on those as well
    std::vector<TangentVector> on_slots;
    for (int s = 0; s < 3; ++s) {
      TangentVector v;
      for (int k = 0; k < 8; ++k) v.components[k] = rng.uniform_rational(Rational(-2), Rational(2), 3);
      on_slots.push_back(v);
    }
    const Rational base = evaluate(a, on_slots);
    std::swap(on_slots[0], on_slots[2]);
    CHECK(evaluate(a, on_slots) == -base);
    std::swap(on_slots[0], on_slots[1]);
    CHECK(evaluate(a, on_slots) == base);
    // linearity in the first slot
    TangentVector doubled = on_slots[0];
    for (auto& [k, c] : doubled.components) c *= 3;
    auto scaled = on_slots;
    scaled[0] = doubled;
    CHECK(evaluate(a, scaled) == 3 * base);
  }
}

TEST_CASE("matrix wedge") {
  const auto ctx = build_context(2);
  CHECK(forms_identical(mat_wedge(MatrixForm::identity(2), ctx.vartheta), ctx.vartheta).holds);
  // vartheta ^ vartheta at the normal point, entry (1,2) on (d/dy11, d/dy12)
  const MatrixFormValue vv = evaluate_at(mat_wedge(ctx.vartheta, ctx.vartheta), JetPoint::normal(2));
  const std::vector<TangentVector> vs{along(JetCoordinate::metric(0, 0)), along(JetCoordinate::metric(0, 1))};
  CHECK(evaluate(vv(0, 1), vs) == 1);
  // brute force triple loop
  Rng rng(8);
  MatrixFormValue a(2, 1), b(2, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a.set(i, j, random_form_value(6, 1, 2, rng));
      b.set(i, j, random_form_value(6, 1, 2, rng));
    }
  const MatrixFormValue ab = mat_wedge(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(ab(i, j).terms() == (wedge(a(i, 0), b(0, j)) + wedge(a(i, 1), b(1, j))).terms());
  CHECK_THROWS_AS(mat_wedge(a, MatrixFormValue(3, 1)), DimensionMismatch);
}

TEST_CASE("g-adjoint, symmetric and antisymmetric parts") {
  const auto ctx = build_context(2);
  const IdentitySettings id{24, 1, 2};
  CHECK(forms_identical(transpose_g(ctx.vartheta, ctx.g, ctx.g_inv), ctx.vartheta, id).holds);
  CHECK(forms_identical(sym_part(ctx.vartheta, ctx.g, ctx.g_inv), ctx.vartheta, id).holds);
  CHECK(forms_identical(antisym_part(ctx.vartheta, ctx.g, ctx.g_inv), MatrixForm(2, 1), id).holds);
  Rng rng(6);
  MatrixForm a(2, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a.set(i, j, random_form(2, 1, 2, rng));
  const MatrixForm s = sym_part(a, ctx.g, ctx.g_inv), as = antisym_part(a, ctx.g, ctx.g_inv);
  CHECK(forms_identical(s + as, a, id).holds);
  CHECK(forms_identical(sym_part(s, ctx.g, ctx.g_inv), s, id).holds);
  CHECK(forms_identical(sym_part(as, ctx.g, ctx.g_inv), MatrixForm(2, 1), id).holds);
  CHECK(forms_identical(transpose_g(transpose_g(a, ctx.g, ctx.g_inv), ctx.g, ctx.g_inv), a, id).holds);
  // identity metric: plain transpose
  ScalarMatrix<Expr> one{{Expr(1), Expr(0)}, {Expr(0), Expr(1)}};
  CHECK(forms_identical(transpose_g(a, one, one), transpose(a), id).holds);
}

TEST_CASE("Pfaffian and characteristic coefficients") {
  const FormValue a = wedge(FormValue::basis(0), FormValue::basis(1));
  const FormValue b = wedge(FormValue::basis(2), FormValue::basis(3));
  MatrixFormValue m2(2, 2);
  m2.set(0, 1, a);
  m2.set(1, 0, -a);
  CHECK(pfaffian(m2).terms() == a.terms());
  MatrixFormValue m4(4, 2);
  m4.set(0, 1, a);
  m4.set(1, 0, -a);
  m4.set(2, 3, b);
  m4.set(3, 2, -b);
  const FormValue ab = wedge(a, b);
  CHECK(pfaffian(m4).terms() == ab.terms());
  const auto p2 = char_coeff(2, m4);
  CHECK(p2.two_pi_power == -4);
  CHECK(p2.form.terms() == wedge(pfaffian(m4), pfaffian(m4)).terms());
  CHECK(char_coeff(1, MatrixFormValue(3, 2)).form.is_zero());
  CHECK_THROWS_AS(char_coeff(2, MatrixFormValue(3, 2)), std::out_of_range);
  CHECK_THROWS_AS(pfaffian(MatrixFormValue(3, 2)), OddDimension);
  MatrixFormValue bad(2, 2);
  bad.set(0, 1, a);
  CHECK_THROWS_AS(pfaffian(bad), NotAntisymmetric);
  const PrefactoredForm<Rational> x{-2, a}, y{-2, b};
  CHECK(wedge(x, y).two_pi_power == -4);
  const PrefactoredForm<Rational> z{0, a};
  CHECK_THROWS_AS(x + z, std::invalid_argument);
}

TEST_CASE("engine self-checks") {
  CheckSettings s;
  s.samples = 10;
  for (const auto& r : {check_d_squared(s), check_wedge_laws(s), check_pfaffian_congruence(s), check_char_coeff_conjugation(s)})
    CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("d(d a) = 0 on the coordinate objects") {
  const auto ctx = build_context(2);
  Differentiator d;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(forms_identical(dext(dext(ctx.omega_univ(i, j), d), d), DiffForm(3), {24, 1, 2}).holds);
      CHECK(forms_identical(dext(dext(ctx.vartheta(i, j), d), d), DiffForm(3), {24, 1, 2}).holds);
    }
  // n = 3 by evaluation
  const auto ctx3 = build_context(3);
  Differentiator d3;
  Rng rng(1);
  const DiffForm dd = dext(dext(ctx3.omega_univ(0, 1), d3), d3);
  for (int t = 0; t < 3; ++t) CHECK(evaluate_at(dd, JetPoint::random(3, rng)).is_zero());
}

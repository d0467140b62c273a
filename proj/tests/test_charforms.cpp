#include "doctest.h"
#include "jetlc/charforms.hpp"

using namespace jetlc;

namespace {

Polynomial X(int n, int k) { return Polynomial::variable(n, k); }
Polynomial C(int n, const Rational& c) { return Polynomial::constant(n, c); }

MetricSection warped() {
  return MetricSection("warped", {{C(2, 1), Polynomial(2)}, {Polynomial(2), C(2, 1) + X(2, 0) * X(2, 0)}});
}

const GeometryContext& ctx2() {
  static const GeometryContext c = build_context(2);
  return c;
}

}  // namespace

TEST_CASE("p_1 is closed for n = 2 and the harness sees a non-closed perturbation") {
  const auto& ctx = ctx2();
  auto r = check_closed_pontryagin(ctx, 1);
  CHECK_MESSAGE(r.passed, r.detail);
  CHECK(r.mode == CheckMode::Symbolic);
  DiffForm pert = scale(Expr::y(0, 1), wedge(wedge(wedge(DiffForm::basis(base_slot(0)), DiffForm::basis(metric_slot(0, 0))),
                                                   DiffForm::basis(metric_jet_slot(0, 0, 1))),
                                             DiffForm::basis(base_slot(1))));
  CHECK_FALSE(check_closed_pontryagin(ctx, 1, {}, &pert).passed);
  CheckSettings sampled;
  sampled.mode = CheckMode::Sampled;
  sampled.samples = 5;
  CHECK(check_closed_pontryagin(ctx, 1, sampled).passed);
  CHECK_FALSE(check_closed_pontryagin(ctx, 1, sampled, &pert).passed);
}

TEST_CASE("Euler data for n = 2") {
  const auto& ctx = ctx2();
  CHECK(check_lowered_antisymmetry(ctx).passed);
  auto closed = check_euler_closed(ctx);
  CHECK_MESSAGE(closed.passed, closed.detail);
  DiffForm pert = scale(Expr::y(0, 1), wedge(DiffForm::basis(base_slot(0)), DiffForm::basis(metric_slot(1, 1))));
  CHECK_FALSE(check_euler_closed(ctx, {}, &pert).passed);
  auto sq = check_euler_square(ctx);
  CHECK_MESSAGE(sq.passed, sq.detail);
  CheckSettings s;
  s.samples = 10;
  auto flip = check_euler_sign_flip(ctx, PolyDiffeo::affine("refl", {{-1, 0}, {0, 1}}), true, s);
  CHECK_MESSAGE(flip.passed, flip.detail);
  RationalMatrix rot{{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}};
  CHECK(check_euler_sign_flip(ctx, PolyDiffeo::affine("rot", rot), false, s).passed);
  CHECK_FALSE(check_euler_sign_flip(ctx, PolyDiffeo::affine("rot", rot), true, s).passed);
  auto refl = PolyDiffeo::affine("refl", {{-1, 0}, {0, 1}});
  CHECK(check_euler_sign_flip(ctx, refl.compose(refl), false, s).passed);
}

TEST_CASE("Gauss curvature from the Euler data of a holonomic section") {
  const auto& ctx = ctx2();
  auto g = warped();
  std::vector<Rational> x0{0, 0};
  auto lowered = left_multiply(g.value(x0), evaluate_at(ctx.curvature_univ, g.jet_at(x0)));
  // pf_flat pulled back = K det g dx1^dx2 with K = -1, det g = 1
  CHECK(euler_pf_on(lowered, g.lifts(x0)) == -1);
  // and it agrees with the classical curvature everywhere sampled
  for (auto x : g.sample_points(10, 9)) {
    auto r = classical_curvature(g, x);
    auto gv = g.value(x);
    Rational pf_classical = 0;
    for (int a = 0; a < 2; ++a) pf_classical += gv[0][a] * r(a, 1).coefficient(3);
    auto low = left_multiply(gv, evaluate_at(ctx.curvature_univ, g.jet_at(x)));
    CHECK(euler_pf_on(low, g.lifts(x)) == pf_classical);
  }
}

TEST_CASE("non-vanishing witness for p_1, n = 2") {
  auto w = find_pontryagin_witness(ctx2());
  REQUIRE(w.has_value());
  CHECK(!is_zero(w->value));
  CHECK(w->value == w->brute_force);
}

TEST_CASE("brute-force and restricted p_1 agree at random points") {
  for (int n : {2, 3}) {
    auto ctx = build_context(n);
    Rng rng(n);
    for (int t = 0; t < 3; ++t) {
      auto z = JetPoint::random(n, rng);
      auto vs = random_tangents(n, 4, rng);
      auto omega = evaluate_at(ctx.curvature_univ, z);
      CHECK(pontryagin_on(omega, 1, vs) == pontryagin_first_bruteforce(omega, vs));
    }
  }
}

TEST_CASE("p_1 invariance under diffeomorphisms, n = 2") {
  CheckSettings s;
  s.samples = 4;
  for (const auto& phi : {PolyDiffeo::affine("refl", {{-1, 0}, {0, 1}}), PolyDiffeo::shear(2, 1, 0, 1)})
    CHECK(check_pontryagin_invariance(ctx2(), phi, 1, s).passed);
}

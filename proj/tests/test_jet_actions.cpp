#include "doctest.h"
#include "jetlc/geometry.hpp"
#include "jetlc/jet_actions.hpp"

using namespace jetlc;

namespace {

Polynomial X(int n, int k) { return Polynomial::variable(n, k); }
Polynomial C(int n, const Rational& c) { return Polynomial::constant(n, c); }

// diag(1, 1 + x1^2)
MetricSection warped() {
  return MetricSection("warped", {{C(2, 1), Polynomial(2)}, {Polynomial(2), C(2, 1) + X(2, 0) * X(2, 0)}});
}

RationalMatrix rotation345() { return {{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}}; }

}  // namespace

TEST_CASE("PolyDiffeo validation rejects a wrong inverse") {
  CHECK_THROWS_AS(PolyDiffeo("bad", {X(2, 0) + X(2, 1) * X(2, 1), X(2, 1)}, {X(2, 0), X(2, 1)}), InvalidInverse);
  CHECK_THROWS_AS(PolyDiffeo::affine("sing", {{1, 2}, {2, 4}}), InvalidInverse);
  CHECK_NOTHROW(PolyDiffeo::shear(3, 2, 0, Rational(1, 3)));
}

TEST_CASE("shear prolongation at the normal point: y12,1 image is -2") {
  auto phi = PolyDiffeo::shear(2, 1, 0, 1);
  auto map = prolong_diffeo(phi);
  auto img = map.apply(JetPoint::normal(2));
  CHECK(img.at(JetCoordinate::metric_jet(0, 1, 0)) == -2);
  CHECK(img.at(JetCoordinate::metric(0, 0)) == 1);
}

TEST_CASE("rotation preserves det y") {
  auto map = prolong_diffeo(PolyDiffeo::affine("rot", rotation345()));
  PointSampler sampler(2, 3);
  for (int t = 0; t < 10; ++t) {
    auto z = sampler.next();
    CHECK(determinant(map.apply(z).metric()) == determinant(z.metric()));
  }
}

TEST_CASE("prolongation is functorial and the identity acts trivially") {
  auto a = PolyDiffeo::affine("a", {{2, 1}, {1, 1}}, {Rational(1, 2), -1});
  auto s = PolyDiffeo::shear(2, 0, 1, Rational(-1, 3));
  auto comp = a.compose(s);
  auto pa = prolong_diffeo(a), ps = prolong_diffeo(s), pc = prolong_diffeo(comp);
  auto pid = prolong_diffeo(PolyDiffeo::identity(2));
  PointSampler sampler(2, 11);
  for (int t = 0; t < 20; ++t) {
    auto z = sampler.next();
    auto lhs = pc.apply(z), rhs = pa.apply(ps.apply(z)), same = pid.apply(z);
    for (int slot : active_slots(2)) {
      CHECK(lhs[slot] == rhs[slot]);
      CHECK(same[slot] == z[slot]);
    }
  }
}

TEST_CASE("gauge pullback leaves the universal connection invariant") {
  auto ctx = build_context(2);
  std::vector<PolyDiffeo> family{PolyDiffeo::identity(2), PolyDiffeo::affine("rot", rotation345()),
                                 PolyDiffeo::affine("refl", {{-1, 0}, {0, 1}}),
                                 PolyDiffeo::affine("gen", {{2, 1}, {1, 3}}, {1, -2}),
                                 PolyDiffeo::shear(2, 1, 0, 1), PolyDiffeo::shear(2, 0, 1, Rational(-2, 3))};
  family.push_back(family[3].compose(family[4]));
  for (const auto& phi : family) {
    CAPTURE(phi.name());
    auto map = prolong_diffeo(phi);
    PointSampler sampler(2, 5);
    for (int t = 0; t < 5; ++t) {
      auto z = sampler.next();
      auto g = gauge_pullback_connection_at(phi, map, ctx.omega_univ, z);
      auto w = evaluate_at(ctx.omega_univ, z);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(g(i, j).terms() == w(i, j).terms());
      // omega_hor and vartheta separately
      auto gh = gauge_pullback_connection_at(phi, map, ctx.omega_hor, z);
      auto wh = evaluate_at(ctx.omega_hor, z);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(gh(i, j).terms() == wh(i, j).terms());
    }
  }
}

TEST_CASE("symbolic gauge pullback agrees with the pointwise one") {
  auto ctx = build_context(2);
  auto phi = PolyDiffeo::shear(2, 1, 0, 1);
  auto map = prolong_diffeo(phi);
  auto sym = gauge_pullback_connection(phi, map, ctx.omega_univ);
  auto r = forms_identical(sym, ctx.omega_univ, {24, 3, 2});
  CHECK_MESSAGE(r.holds, r.detail);
}

TEST_CASE("scaling fixes Gamma and omega, scales theta") {
  auto ctx = build_context(2);
  for (Rational s : {Rational(1, 4), Rational(4), Rational(9)}) {
    auto map = scaling_substitution(2, s);
    CHECK(forms_identical(pullback_form(map, ctx.omega_univ), ctx.omega_univ).holds);
    CHECK(forms_identical(pullback_form(map, ctx.theta.entries), scale(Expr(s), ctx.theta.entries)).holds);
  }
  CHECK_THROWS_AS(scaling_substitution(2, 0), NonpositiveScale);
}

TEST_CASE("vector field lift") {
  VectorFieldPoly v{{X(2, 0), Polynomial(2)}};
  auto lift = lift_vector_field(v);
  auto z = JetPoint::normal(2).with(JetCoordinate::metric(0, 1), Rational(1, 3));
  CHECK(eval(lift[metric_slot(0, 0)], z) == -2);
  CHECK(eval(lift[metric_slot(0, 1)], z) == Rational(-1, 3));
  CHECK(lift[metric_slot(1, 1)].is_zero());
  VectorFieldPoly tr{{C(2, 1), Polynomial(2)}};
  auto lt = lift_vector_field(tr);
  CHECK(lt[metric_slot(0, 0)].is_zero());
  PointSampler sampler(3, 2);
  for (const RationalMatrix& a : {RationalMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}},
                                  RationalMatrix{{0, 1, 0}, {0, 0, 2}, {0, 0, 0}},
                                  RationalMatrix{{1, 2, 0}, {-1, 0, 3}, {0, Rational(1, 2), -1}}}) {
    auto r = check_lift_against_flow(a, sampler.next());
    CHECK_MESSAGE(r.passed, r.detail);
  }
}

TEST_CASE("holonomic pullbacks") {
  auto ctx = build_context(2);
  auto g = warped();
  CHECK(holonomic_pullback(g, ctx.theta.entries).is_zero());
  CHECK(forms_identical(holonomic_pullback(g, ctx.vartheta), MatrixForm(2, 1)).holds);
  std::vector<Rational> x1{1, 0};
  auto c = classical_levi_civita(g, x1);
  CHECK(c(1, 0, 1) == Rational(1, 2));
  CHECK(c(0, 1, 1) == -1);
  for (auto x : g.sample_points(10, 4)) {
    auto pulled = holonomic_pullback_at(g, evaluate_at(ctx.omega_univ, g.jet_at(x)), x);
    auto oracle = classical_connection_forms(g, x);
    auto curv = holonomic_pullback_at(g, evaluate_at(ctx.curvature_univ, g.jet_at(x)), x);
    auto roracle = classical_curvature(g, x);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(pulled(i, j).terms() == oracle(i, j).terms());
        CHECK(curv(i, j).terms() == roracle(i, j).terms());
      }
  }
  // Gauss curvature at the origin: K = g_1a R^a_2 (d1, d2) / det g = -1
  std::vector<Rational> x0{0, 0};
  auto r = classical_curvature(g, x0);
  auto gv = g.value(x0);
  Rational k = 0;
  for (int a = 0; a < 2; ++a) k += gv[0][a] * r(a, 1).coefficient(3);
  CHECK(k / determinant(gv) == -1);
  // the symbolic holonomic pullback of the universal metric is g itself
  auto sym = holonomic_pullback(g, DiffForm::scalar(ctx.g[1][1]));
  CHECK(eval(sym.value(), JetPoint::normal(2).with(JetCoordinate::base(0), 3)) == 10);
}

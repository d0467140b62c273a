#include "doctest.h"
#include "jetlc/geometry.hpp"

using namespace jetlc;

namespace {

Rational on(const DiffForm& f, const JetPoint& p, std::vector<TangentVector> vs) { return evaluate(f, p, vs); }

TangentVector d(const JetCoordinate& c) { return TangentVector::along(c); }

}  // namespace

TEST_CASE("normal point: Christoffels and horizontal connection vanish") {
  auto ctx = build_context(2);
  auto z0 = JetPoint::normal(2);
  for (const auto& gm : ctx.gamma) CHECK(eval(gm, z0) == 0);
  CHECK(evaluate_at(ctx.omega_hor, z0).is_zero());
  CHECK(on(ctx.vartheta(0, 0), z0, {d(JetCoordinate::metric(0, 0))}) == 1);
}

TEST_CASE("single jet y11,1 = 2 gives Gamma^1_11 = 1") {
  auto ctx = build_context(2);
  auto p = JetPoint::normal(2).with(JetCoordinate::metric_jet(0, 0, 0), 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(eval(ctx.christoffel(i, j, k), p) == (i + j + k == 0 ? 1 : 0));
}

TEST_CASE("curvature values at the normal point") {
  auto ctx = build_context(2);
  auto z0 = JetPoint::normal(2);
  // Omega^1_2 on (d/dy11, d/dy12): d(vartheta/2) contributes -1/2 dy11^dy12
  // (from d g^{-1} = -dy at y = identity) and (vartheta/2)^2 contributes +1/4.
  CHECK(on(ctx.curvature_univ(0, 1), z0, {d(JetCoordinate::metric(0, 0)), d(JetCoordinate::metric(0, 1))}) ==
        Rational(-1, 4));
  // (Omega_hor)^1_1 on (d/dy11,2, d/dx2)
  CHECK(on(ctx.curvature_hor(0, 0), z0, {d(JetCoordinate::metric_jet(0, 0, 1)), d(JetCoordinate::base(1))}) ==
        Rational(1, 2));
}

TEST_CASE("defining identities, n = 2 and 3 symbolic") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    auto ctx = build_context(n);
    CHECK(check_metric_compatibility(ctx).passed);
    CHECK(check_horizontal_nabla(ctx).passed);
    CHECK(check_christoffel_jets(ctx).passed);
    CHECK(check_christoffel_symmetry(ctx).passed);
  }
}

TEST_CASE("curvature identity n = 2") {
  auto ctx = build_context(2);
  auto r = verify_curvature_identity(ctx);
  CHECK_MESSAGE(r.passed, r.detail);
  CHECK(r.mode == CheckMode::Symbolic);
}

TEST_CASE("curvature identity with coefficient -1/2 is refuted") {
  auto ctx = build_context(2);
  auto r = refute_curvature_coefficient(ctx, Rational(-1, 2));
  CHECK(r.passed);
  CHECK(r.witness["curvature"] == "-1/4");
  CHECK(r.witness["candidate"] == "-1/2");
  CHECK_FALSE(verify_curvature_identity(ctx, {}, Rational(-1, 2)).passed);
  CHECK_FALSE(refute_curvature_coefficient(ctx, kCurvatureWedgeCoefficient).passed);
}

TEST_CASE("corrupted Christoffel sign is caught") {
  auto ctx = build_context(2, {.corrupt_christoffel_sign = true});
  CHECK_FALSE(check_metric_compatibility(ctx).passed);
}

TEST_CASE("uniqueness family witnesses") {
  auto ctx = build_context(2);
  auto r10 = verify_uniqueness_family(ctx, 1, 0);
  CHECK(r10.check.passed);
  CHECK(r10.nonzero);
  CHECK(r10.witness["value"] == "-2/1");
  CHECK(r10.witness["entry"] == "(1,1)");
  auto r01 = verify_uniqueness_family(ctx, 0, 1);
  CHECK(r01.check.passed);
  CHECK(r01.witness["value"] == "-2/1");
  auto r00 = verify_uniqueness_family(ctx, 0, 0);
  CHECK(r00.check.passed);
  CHECK_FALSE(r00.nonzero);
}

TEST_CASE("lemasym with half vartheta and with an antisymmetric perturbation") {
  auto ctx = build_context(2);
  CHECK(verify_lemasym(ctx, scale(Expr(Rational(1, 2)), ctx.vartheta)).passed);
  Rng rng(7);
  MatrixForm a = random_connection_perturbation(2, rng);
  MatrixForm anti = antisym_part(a, ctx.g, ctx.g_inv);
  CHECK(verify_lemasym(ctx, anti).passed);
  CHECK(verify_lemasym(ctx, a).passed);
  CHECK(verify_lemasym(ctx, MatrixForm(2, 1)).passed);
}

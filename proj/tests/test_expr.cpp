#include "doctest.h"
#include "jetlc/geometry.hpp"
#include "jetlc/identity.hpp"

using namespace jetlc;

namespace {

Expr random_expr(Rng& rng, int depth) {
  const auto& slots = active_slots(2);
  if (depth == 0) {
    if (rng.uniform_int(0, 2) == 0) return Expr(rng.uniform_rational(Rational(-2), Rational(2), 3));
    return Expr::slot(slots[rng.uniform_int(0, static_cast<int>(slots.size()) - 1)]);
  }
  const Expr a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
  switch (rng.uniform_int(0, 3)) {
    case 0: return a + b;
    case 1: return a * b;
    case 2: return power(a, static_cast<int>(rng.uniform_int(2, 3)));
    default: return a / (Expr(2) + b * b);
  }
}

}  // namespace

TEST_CASE("coordinates") {
  CHECK(coordinate_count(2) == 2 + 3 + 6);
  CHECK(coordinate_count(4) == 4 + 10 + 40);
  CHECK(JetCoordinate::metric(1, 0) == JetCoordinate::metric(0, 1));
  CHECK(JetCoordinate::metric_jet(2, 1, 0).name() == "y23,1");
  CHECK(JetCoordinate::parse("y12,3") == JetCoordinate::metric_jet(0, 1, 2));
  CHECK_THROWS_AS(JetCoordinate::parse("z1"), ParseError);
  CHECK_THROWS_AS(require_dimension(5), UnsupportedDimension);
}

TEST_CASE("rationals are canonical") {
  CHECK(to_fraction_string(parse_rational("6/-4")) == "-3/2");
  CHECK(to_fraction_string(parse_rational(" 3 ")) == "3/1");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
}

TEST_CASE("evaluation") {
  const JetPoint p = JetPoint::normal(2);
  CHECK(eval(Expr(Rational(3, 4)), p) == Rational(3, 4));
  CHECK(eval(Expr::y(0, 0) * Expr::y(1, 1) - power(Expr::y(0, 1), 2), p) == 1);
  const JetPoint q = p.with(JetCoordinate::metric_jet(0, 0, 0), 2);
  CHECK(eval(build_context(2).christoffel(0, 0, 0), q) == 1);
  CHECK_THROWS_AS(eval(Expr(1) / Expr::x(0), p), DivisionByZero);
}

TEST_CASE("partial derivatives") {
  const JetPoint p = JetPoint::normal(2);
  CHECK(eval(partial(Expr::x(0) * Expr::y(0, 0), JetCoordinate::metric(0, 0)), p.with(JetCoordinate::base(0), 5)) == 5);
  CHECK(eval(partial(Expr(1) / Expr::y(0, 0), JetCoordinate::metric(0, 0)), p) == -1);
  // y21 is the same variable as y12
  CHECK(eval(partial(power(Expr::y(1, 0), 2), JetCoordinate::metric(0, 1)), p.with(JetCoordinate::metric(0, 1), Rational(1, 3))) ==
        Rational(2, 3));
}

TEST_CASE("mixed partials commute on random expressions") {
  Rng rng(7);
  const auto& slots = active_slots(2);
  Differentiator d;
  for (int t = 0; t < 100; ++t) {
    const Expr e = random_expr(rng, 3);
    const int a = slots[rng.uniform_int(0, 10)], b = slots[rng.uniform_int(0, 10)];
    const JetPoint z = JetPoint::random(2, rng);
    CHECK(eval(d(d(e, a), b), z) == eval(d(d(e, b), a), z));
  }
}

TEST_CASE("derivative matches exact difference quotients of the univariate restriction") {
  // e is a polynomial of degree <= 2 in y11 along the line, so the symmetric
  // difference quotient is exact for every step h.
  const Expr e = Expr::y(0, 0) * Expr::y(0, 0) * Expr::x(1) + Expr(3) * Expr::y(0, 0) * Expr::y(0, 1);
  Rng rng(3);
  const auto c = JetCoordinate::metric(0, 0);
  for (int t = 0; t < 3; ++t) {
    const JetPoint z = JetPoint::random(2, rng);
    const Rational h(1, t + 2);
    const Rational fd = (eval(e, z.with(c, z.at(c) + h)) - eval(e, z.with(c, z.at(c) - h))) / (2 * h);
    CHECK(fd == eval(partial(e, c), z));
  }
}

TEST_CASE("evaluation ignores term order and DAG sharing") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Expr a = random_expr(rng, 2), b = random_expr(rng, 2), c = random_expr(rng, 2);
    const JetPoint z = JetPoint::random(2, rng);
    CHECK(eval(sum({a, b, c}), z) == eval(sum({c, a, b}), z));
    CHECK(eval(product({a, b, c}), z) == eval(product({b, c, a}), z));
    const Expr shared = a * b;
    CHECK(eval(shared + shared, z) == eval(a * b + random_expr(rng, 0) * Expr(0) + b * a, z));
  }
}

TEST_CASE("inverse metric") {
  const auto ctx2 = build_context(2);
  const JetPoint p = JetPoint::normal(2).with(JetCoordinate::metric(1, 1), 2);
  CHECK(eval(ctx2.g_inv[0][0], p) == 1);
  CHECK(eval(ctx2.g_inv[1][1], p) == Rational(1, 2));
  CHECK(eval(ctx2.g_inv[0][1], p) == 0);
  const auto ctx3 = build_context(3);
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    const JetPoint z = JetPoint::random(3, rng);
    Evaluator ev(z);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rational s = 0;
        for (int k = 0; k < 3; ++k) s += ev(ctx3.g[i][k]) * ev(ctx3.g_inv[k][j]);
        CHECK(s == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("identity testing") {
  const Expr a = Expr::y(0, 0) + Expr::x(0);
  CHECK(equal_probabilistic(a, a, 20, 1));
  const auto ctx = build_context(2);
  // y11 * (g^-1)_11 + y12 * (g^-1)_21 == 1
  const Expr recomposed = Expr::y(0, 0) * ctx.g_inv[0][0] + Expr::y(0, 1) * ctx.g_inv[1][0];
  CHECK(test_identity(recomposed, Expr(1)).holds);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto r = test_identity(Expr::y(0, 0), Expr::y(1, 1), {20, seed, 2});
    CHECK_FALSE(r.holds);
    CHECK(r.witness.has_value());
    CHECK_FALSE(equal_probabilistic(Expr::y(0, 0), Expr::y(1, 1), 20, seed));
  }
  // polynomial identity decided by expansion
  const Expr lhs = power(Expr::x(0) + Expr::y(0, 1), 2);
  const Expr rhs = Expr::x(0) * Expr::x(0) + Expr(2) * Expr::x(0) * Expr::y(0, 1) + Expr::y(0, 1) * Expr::y(0, 1);
  const auto r = test_identity(lhs, rhs);
  CHECK(r.holds);
  CHECK(r.by_normalization);
}

TEST_CASE("random points are positive definite") {
  Rng rng(2);
  for (int n = 2; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) CHECK(JetPoint::random(n, rng).positive_definite());
}

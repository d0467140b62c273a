#include <doctest.h>

#include "jetlc/invariant_theory.hpp"

using namespace jetlc;

namespace {

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix t = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i];
  return t;
}

/// Rational rotation by (3/5, 4/5) in the (p, q) plane.
RationalMatrix rotation(int n, int p, int q) {
  RationalMatrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  a[p][p] = Rational(3, 5);
  a[q][q] = Rational(3, 5);
  a[q][p] = Rational(4, 5);
  a[p][q] = Rational(-4, 5);
  return a;
}

SparseVector basis_vector(int k) { return SparseVector{{k, Rational(1)}}; }

}  // namespace

TEST_CASE("tensor space layout") {
  const auto e = TensorSpaceSpec::module_e(4);
  CHECK(e.dimension() == 64 + 160 + 640);
  const auto e2 = TensorSpaceSpec::module_e(2);
  CHECK(e2.dimension() == 8 + 12 + 24);
  for (int k = 0; k < e.dimension(); ++k) {
    const auto [s, values] = e.decode(k);
    REQUIRE(e.encode(s, values) == k);
  }
  CHECK(e2.basis_label(0) == "V(x)V(x)V:1|1|1");
  CHECK(e2.basis_label(8) == "S2V(x)V(x)V:(1,1)|1|1");
  for (int p = 0; p < e.pair_count(); ++p) {
    const auto [i, j] = e.pair_of(p);
    CHECK(e.pair_number(i, j) == p);
    CHECK(e.pair_number(j, i) == p);
  }
}

TEST_CASE("action input validation") {
  const auto e = TensorSpaceSpec::module_e(2);
  CHECK_THROWS_AS(algebra_action(e, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}), NotAntisymmetric);
  CHECK_THROWS_AS(group_element_action(e, {{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}), NotOrthogonal);
  CHECK_THROWS_AS(group_element_action(e, {{Rational(1)}}), DimensionMismatch);
  CHECK_THROWS_AS(parse_group("GL"), std::invalid_argument);
}

TEST_CASE("group action is a homomorphism and intertwines the algebra action") {
  const int n = 3;
  const auto e = TensorSpaceSpec::module_e(n);
  const auto a = rotation(n, 0, 1), b = rotation(n, 1, 2);
  const auto ab = group_element_action(e, matmul(a, b));
  const auto act_a = group_element_action(e, a), act_b = group_element_action(e, b);
  RationalMatrix x(n, std::vector<Rational>(n, Rational(0)));
  x[2][0] = 1;
  x[0][2] = -1;
  const auto xa = algebra_action(e, x);
  const auto conj = algebra_action(e, matmul(matmul(a, x), transpose(a)));
  for (int k = 0; k < e.dimension(); k += 7) {
    const auto v = basis_vector(k);
    CHECK(ab.apply(v) == act_a.apply(act_b.apply(v)));
    // A X A^-1 acts as act(A) X act(A)^-1
    CHECK(act_a.apply(xa.apply(v)) == conj.apply(act_a.apply(v)));
  }
}

TEST_CASE("invariant dimensions of E") {
  for (int n = 2; n <= 4; ++n) {
    const auto e = TensorSpaceSpec::module_e(n);
    const auto r = invariant_subspace(e, Group::O);
    CHECK(r.dimension == 2);
    CHECK(r.residuals_zero);
  }
  const auto so4 = invariant_subspace(TensorSpaceSpec::module_e(4), Group::SO);
  CHECK(so4.dimension == 2);
  CHECK(so4.residuals_zero);
  // SO(3): one in V(x)3 (volume form), two in S2V(x)V(x)V, and three in
  // S2V(x)V(x)3 since V(x)3 = 1 + 3V + 2 S2_0 + (dim 7) and S2V = 1 + S2_0
  const auto so3 = invariant_subspace(TensorSpaceSpec::module_e(3), Group::SO);
  CHECK(so3.dimension == 6);
  CHECK(so3.residuals_zero);
}

TEST_CASE("cubic tensors have no O(n) invariants") {
  for (int n = 2; n <= 4; ++n) {
    const auto r = invariant_subspace(TensorSpaceSpec(n, {Summand::V3}), Group::O);
    CHECK(r.dimension == 0);
  }
}

TEST_CASE("sign pre-pass and redundant constraints do not change the result") {
  InvariantOptions plain;
  plain.sign_prepass = false;
  for (int n = 2; n <= 4; ++n) {
    const auto e = TensorSpaceSpec::module_e(n);
    for (Group g : {Group::O, Group::SO}) {
      const auto fast = invariant_subspace(e, g);
      const auto slow = invariant_subspace(e, g, plain);
      CHECK(fast.dimension == slow.dimension);
      for (const auto& v : fast.basis) CHECK(coordinates_in_span(slow.basis, v).has_value());
    }
    InvariantOptions extra;
    extra.extra_elements = {rotation(n, 0, 1), rotation(n, 0, n - 1)};
    CHECK(invariant_subspace(e, Group::O, extra).dimension == 2);
  }
}

TEST_CASE("quartic invariants are spanned by the three pairings") {
  for (int n = 2; n <= 4; ++n) {
    const auto q = quartic_invariants(n);
    CHECK(q.report.dimension == 3);
    CHECK(q.xi_rank == 3);
    CHECK(q.xi_in_space);
    CHECK(q.basis_in_xi.has_value());
  }
}

TEST_CASE("theta and tr(vartheta) (x) g give the invariant basis") {
  for (int n = 2; n <= 4; ++n) {
    const auto m = match_contraction_basis(n);
    INFO(m.detail);
    CHECK(m.ok);
    CHECK(m.invariant_dimension == 2);
    CHECK(m.images_rank == 2);
  }
  // control: a single coordinate vector is not invariant and lies outside the span
  const auto e = TensorSpaceSpec::module_e(3);
  const auto r = invariant_subspace(e, Group::O);
  CHECK_FALSE(coordinates_in_span(r.basis, basis_vector(e.encode(1, {e.pair_number(0, 0), 0, 0}))).has_value());
  CHECK_FALSE(coordinates_in_span(r.basis, basis_vector(0)).has_value());
}

TEST_CASE("coordinates in span") {
  std::vector<SparseVector> basis{{{0, Rational(1)}, {1, Rational(1)}}, {{1, Rational(2)}}};
  const auto c = coordinates_in_span(basis, {{0, Rational(3)}, {1, Rational(1)}});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 3);
  CHECK((*c)[1] == -1);
  CHECK(rank_of(basis) == 2);
}

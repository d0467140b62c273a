#pragma once

#include <span>
#include <vector>

#include "jetlc/geometry.hpp"
#include "jetlc/jet_actions.hpp"

namespace jetlc {

/// Denotes E = (2 pi)^(-n/2) det_g^(-1/2) pf_flat; the square root is never formed.
struct EulerPair {
  int n = 0;
  DiffForm pf_flat;  // Pf(g Omega), degree n
  Expr det_g;
  int two_pi_power() const { return -n / 2; }
};

/// g-lowered curvature g Omega.
MatrixForm lowered_curvature(const GeometryContext& ctx);

/// char_coeff(k, Omega): the (2 pi)^(-2k)-prefactored 4k-form. Symbolic;
/// intended for n = 2 and low k elsewhere. Throws std::out_of_range.
PrefactoredForm<Expr> pontryagin(const GeometryContext& ctx, int k);

/// Rational part of p_k at a point on a tangent 4k-tuple, by restricting the
/// curvature value to the tuple first.
Rational pontryagin_on(const GeometryContext& ctx, int k, const JetPoint& point, std::span<const TangentVector> vs);
Rational pontryagin_on(const MatrixFormValue& curvature, int k, std::span<const TangentVector> vs);

/// Independent evaluator for the rational part of p_1 on four vectors: uses
/// only the bilinear values Omega^i_j(u, w) and the alternating sum over the
/// six (2,2)-shuffles, never wedge products or restrictions.
Rational pontryagin_first_bruteforce(const MatrixFormValue& curvature, std::span<const TangentVector> vs);

/// Pf(g Omega) on a tangent n-tuple at a point (antisymmetry checked exactly).
Rational euler_pf_on(const GeometryContext& ctx, const JetPoint& point, std::span<const TangentVector> vs);
Rational euler_pf_on(const MatrixFormValue& lowered, std::span<const TangentVector> vs);

/// Symbolic Euler data (n even); antisymmetry of g Omega is identity-tested
/// first. Throws OddDimension, NotAntisymmetric.
EulerPair euler(const GeometryContext& ctx, const CheckSettings& settings = {});

/// d p_k == 0 (plus an optional perturbation added to p_k before d).
CheckOutcome check_closed_pontryagin(const GeometryContext& ctx, int k, const CheckSettings& settings = {},
                                     const DiffForm* perturbation = nullptr);

/// g Omega + (g Omega)^T == 0.
CheckOutcome check_lowered_antisymmetry(const GeometryContext& ctx, const CheckSettings& settings = {});

/// 2 det_g d(pf_flat) == d(det_g) ^ pf_flat (optional perturbation added to pf_flat).
CheckOutcome check_euler_closed(const GeometryContext& ctx, const CheckSettings& settings = {},
                                const DiffForm* perturbation = nullptr);

/// det_g^(-1) pf_flat ^ pf_flat == rational part of p_{n/2}; both carry (2 pi)^(-n).
CheckOutcome check_euler_square(const GeometryContext& ctx, const CheckSettings& settings = {});

/// Under phi: Phi^* pf_flat == det(D phi^{-1}) pf_flat, Phi^* det_g == det(D phi^{-1})^2 det_g
/// and p_k unchanged, at settings.samples points. For orientation-reversing phi
/// this is the sign flip of E; `expect_flip` states which sign is asserted.
CheckOutcome check_euler_sign_flip(const GeometryContext& ctx, const PolyDiffeo& phi, bool expect_flip,
                                   const CheckSettings& settings = {});

/// Plain pullback of p_k (rational part) equals p_k at settings.samples
/// matched (point, 4k-tuple) pairs.
CheckOutcome check_pontryagin_invariance(const GeometryContext& ctx, const PolyDiffeo& phi, int k,
                                         const CheckSettings& settings = {});

/// Gauge-consistent pullback of conn under phi equals conn at settings.samples points.
CheckOutcome check_gauge_invariance(const PolyDiffeo& phi, const MatrixForm& conn, const CheckSettings& settings = {});

/// Scaling y -> s y fixes omega, Omega and (for n = 2) p_1 and multiplies
/// theta by s. Symbolic in the resolved mode (n = 2), sampled above.
CheckOutcome check_scaling_invariance(const GeometryContext& ctx, const Rational& s, const CheckSettings& settings = {});

/// s . (t . z) == (s t) . z at settings.samples points.
CheckOutcome check_scaling_group_law(int n, const Rational& s, const Rational& t, const CheckSettings& settings = {});

/// At settings.samples base points of g: (j^1 g)^* theta = 0, (j^1 g)^* omega and
/// (j^1 g)^* Omega equal the textbook connection and curvature forms, and, for
/// even n, Pf(g Omega) on the lifts equals the textbook Pf(g R); for n = 4 also
/// p_1 on the lifts against the brute-force value of the textbook curvature.
CheckOutcome check_holonomic_oracles(const GeometryContext& ctx, const MetricSection& g,
                                     const CheckSettings& settings = {});

struct PontryaginWitness {
  JetPoint point;
  std::vector<TangentVector> vectors;
  Rational value;        // restricted evaluation
  Rational brute_force;  // independent evaluator
  int two_pi_power = -2;
};

/// First coordinate 4-tuple (in slot order) on which p_1 is nonzero at the
/// normal point of dimension n.
std::optional<PontryaginWitness> find_pontryagin_witness(const GeometryContext& ctx);
nlohmann::json to_json(const PontryaginWitness& w);

}  // namespace jetlc

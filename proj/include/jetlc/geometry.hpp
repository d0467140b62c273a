#pragma once

#include <vector>

#include "jetlc/check.hpp"
#include "jetlc/forms.hpp"

namespace jetlc {

/// n x n array of forms read as a T*M (x) T*M valued form (both indices lowered).
struct BilinearValuedForm {
  MatrixForm entries;
  int size() const { return entries.size(); }
  const DiffForm& operator()(int i, int j) const { return entries(i, j); }
};

struct BuildOptions {
  /// Test hook: flips the sign of every Christoffel symbol so that the
  /// verification suites have something to catch.
  bool corrupt_christoffel_sign = false;
};

/// Every coordinate object on J^1 of the metric bundle for one dimension.
/// Immutable after build_context.
struct GeometryContext {
  int n = 0;
  ScalarMatrix<Expr> g;      // y_ij
  ScalarMatrix<Expr> g_inv;  // adjugate / det, sharing one det node
  Expr det_g;
  BilinearValuedForm theta;  // dy_ij - y_ij,k dx^k
  MatrixForm vartheta;       // g^{-1} theta
  std::vector<Expr> gamma;   // (i*n + j)*n + k
  MatrixForm omega_hor;
  MatrixForm omega_univ;     // omega_hor + vartheta / 2
  MatrixForm curvature_hor;
  MatrixForm curvature_univ;

  const Expr& christoffel(int i, int j, int k) const { return gamma[(i * n + j) * n + k]; }
};

GeometryContext build_context(int n, const BuildOptions& options = {});

/// Exterior derivative and wedge square of a connection: d conn + conn ^ conn.
MatrixForm curvature_of(const MatrixForm& conn, Differentiator& d);

/// (nabla g)_ij = dy_ij - sum_a (conn^a_i y_aj + conn^a_j y_ai).
BilinearValuedForm nabla_g(const GeometryContext& ctx, const MatrixForm& conn);

/// (g A)_ij = sum_a y_ia A^a_j.
MatrixForm lower_index(const GeometryContext& ctx, const MatrixForm& a);

/// (tr vartheta) * y_ij.
BilinearValuedForm trace_vartheta_g(const GeometryContext& ctx);

/// sum_k dGamma^i_jk ^ dx^k + Gamma^i_as Gamma^a_jr dx^s ^ dx^r, assembled
/// from the Christoffel symbols alone.
MatrixForm curvature_hor_expansion(const GeometryContext& ctx);

/// Coefficient c in Omega = antisym_part(Omega_hor) + c vartheta ^ vartheta.
/// Expanding d(omega_hor + vartheta/2) + (omega_hor + vartheta/2)^2 gives
/// -1/2 from the covariant derivative of vartheta and +1/4 from the square.
inline const Rational kCurvatureWedgeCoefficient{-1, 4};

/// antisym_part(Omega_hor) + c vartheta ^ vartheta.
MatrixForm curvature_identity_rhs(const GeometryContext& ctx, const Rational& c = kCurvatureWedgeCoefficient);

/// Random degree-1 matrix form with small polynomial coefficients.
MatrixForm random_connection_perturbation(int n, Rng& rng);

// Identity checks. Auto mode follows the default split: symbolic for the
// dimensions where whole-form comparison is cheap, sampled above.

/// Matrix identity a == b, in the requested mode.
CheckOutcome compare_matrix_forms(const MatrixForm& a, const MatrixForm& b, int n, CheckMode mode,
                                  const CheckSettings& settings);

/// nabla_g(omega_univ) == 0. Sampled mode evaluates every coefficient at
/// settings.samples random points.
CheckOutcome check_metric_compatibility(const GeometryContext& ctx, const CheckSettings& settings = {});

/// nabla_g(omega_hor) == theta.
CheckOutcome check_horizontal_nabla(const GeometryContext& ctx, const CheckSettings& settings = {});

/// y_ij,k == y_aj Gamma^a_ki + y_ai Gamma^a_kj.
CheckOutcome check_christoffel_jets(const GeometryContext& ctx, const CheckSettings& settings = {});

/// Gamma^i_jk == Gamma^i_kj.
CheckOutcome check_christoffel_symmetry(const GeometryContext& ctx, const CheckSettings& settings = {});

/// nabla_g(omega_hor + alpha) == theta - 2 g sym_part(alpha).
CheckOutcome verify_lemasym(const GeometryContext& ctx, const MatrixForm& alpha, const CheckSettings& settings = {});

/// d omega + omega ^ omega == antisym_part(Omega_hor) + c vartheta ^ vartheta,
/// plus Omega_hor against its Christoffel expansion.
CheckOutcome verify_curvature_identity(const GeometryContext& ctx, const CheckSettings& settings = {},
                                       const Rational& c = kCurvatureWedgeCoefficient);

/// Evidence that the identity fails for a coefficient c other than -1/4:
/// entry (1,2) on (d/dy11, d/dy12) at the normal point, where both sides are
/// explicit numbers. Returns passed == true when the two sides differ there.
CheckOutcome refute_curvature_coefficient(const GeometryContext& ctx, const Rational& c);

struct UniquenessResult {
  BilinearValuedForm nabla;  // nabla_g(omega + lambda vartheta + mu tr(vartheta) Id)
  CheckOutcome check;        // equality with -2(lambda theta + mu tr(vartheta) (x) g)
  bool nonzero = false;
  nlohmann::json witness;    // entry, tangent vector and value proving nonzero
};

UniquenessResult verify_uniqueness_family(const GeometryContext& ctx, const Rational& lambda, const Rational& mu,
                                          const CheckSettings& settings = {});

}  // namespace jetlc

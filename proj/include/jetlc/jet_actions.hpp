#pragma once

#include <span>
#include <string>
#include <vector>

#include "jetlc/check.hpp"
#include "jetlc/forms.hpp"
#include "jetlc/polynomial.hpp"

namespace jetlc {

class InvalidInverse : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonpositiveScale : public std::invalid_argument {
 public:
  NonpositiveScale() : std::invalid_argument("scale factor must be positive") {}
};

class SingularMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidMetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial diffeomorphism germ of R^n with an exact polynomial inverse.
class PolyDiffeo {
 public:
  static constexpr int kMaxDegree = 3;
  static constexpr int kValidationPoints = 20;

  /// Validates forward/inverse at kValidationPoints deterministic points:
  /// both compositions are the identity and the first and second derivative
  /// chain-rule identities hold. Throws InvalidInverse.
  PolyDiffeo(std::string name, std::vector<Polynomial> forward, std::vector<Polynomial> inverse,
             int max_degree = kMaxDegree);

  static PolyDiffeo identity(int n);
  /// x -> A x + b with the exact inverse.
  static PolyDiffeo affine(std::string name, const RationalMatrix& a, std::vector<Rational> b = {});
  /// x^target -> x^target + c (x^source)^2, a unipotent shear.
  static PolyDiffeo shear(int n, int target, int source, const Rational& c);
  /// {"name", "forward": [poly, ...], "inverse": [poly, ...]} with polynomial
  /// tables keyed by exponent tuples.
  static PolyDiffeo from_json(int n, const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// this o inner. Degrees may exceed kMaxDegree.
  PolyDiffeo compose(const PolyDiffeo& inner) const;

  int dimension() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<Polynomial>& forward() const { return forward_; }
  const std::vector<Polynomial>& inverse() const { return inverse_; }

  std::vector<Rational> apply(std::span<const Rational> x) const;
  std::vector<Rational> apply_inverse(std::span<const Rational> x) const;
  /// J(x) = D phi(x)
  RationalMatrix jacobian(std::span<const Rational> x) const;
  /// d/dx^k of J at x.
  RationalMatrix jacobian_derivative(std::span<const Rational> x, int k) const;
  /// D phi as polynomials: J^a_i = d phi^a / dx^i.
  const PolynomialMatrix& jacobian_polynomials() const { return jac_; }
  /// D(phi^{-1}) at phi(x), as polynomials in x: P^a_i.
  const PolynomialMatrix& inverse_jacobian_at_image() const { return p_; }
  /// Second derivatives of phi^{-1} at phi(x): H[a][i][k].
  const std::vector<PolynomialMatrix>& inverse_hessian_at_image() const { return h_; }

 private:
  void validate(int max_degree) const;
  int n_;
  std::string name_;
  std::vector<Polynomial> forward_, inverse_;
  PolynomialMatrix jac_;               // d phi^a / dx^i
  PolynomialMatrix p_;                 // (d psi^a / dx^i) o phi
  std::vector<PolynomialMatrix> h_;    // (d^2 psi^a / dx^i dx^k) o phi
};

/// Symmetric matrix of polynomials in x: a concrete Riemannian metric.
class MetricSection {
 public:
  MetricSection(std::string name, PolynomialMatrix entries);
  static MetricSection from_json(int n, const nlohmann::json& j);
  nlohmann::json to_json() const;

  int dimension() const { return static_cast<int>(entries_.size()); }
  const std::string& name() const { return name_; }
  const Polynomial& operator()(int i, int j) const { return entries_[i][j]; }

  RationalMatrix value(std::span<const Rational> x) const;
  bool positive_definite_at(std::span<const Rational> x) const;
  /// Throws InvalidMetric unless positive definite at every point.
  void validate(const std::vector<std::vector<Rational>>& points) const;
  /// Deterministic base points in [-1, 1]^n where the metric is positive
  /// definite; the origin comes first when admissible.
  std::vector<std::vector<Rational>> sample_points(int count, std::uint64_t seed) const;

  /// j^1 g (x): y_ij = g_ij(x), y_ij,k = d_k g_ij(x).
  JetPoint jet_at(std::span<const Rational> x) const;
  /// Push-forward of d/dx^k by j^1 g.
  TangentVector lift(std::span<const Rational> x, int k) const;
  std::vector<TangentVector> lifts(std::span<const Rational> x) const;

 private:
  std::string name_;
  PolynomialMatrix entries_;
};

struct VectorFieldPoly {
  std::vector<Polynomial> components;  // X^i(x)
  int dimension() const { return static_cast<int>(components.size()); }
};

/// A map J^1 -> J^1 given by the image expression of every active coordinate.
/// The Jacobian expressions are derived once at construction.
class ProlongedMap {
 public:
  ProlongedMap(int n, std::vector<Expr> images);

  int dimension() const { return n_; }
  const Expr& image(int slot) const { return images_[slot]; }
  const std::vector<Expr>& images() const { return images_; }

  JetPoint apply(const JetPoint& z) const;
  /// D Phi at z, indexed [image slot][source slot] over all kSlotCount slots.
  RationalMatrix jacobian(const JetPoint& z) const;
  TangentVector push_forward(const RationalMatrix& jacobian, const TangentVector& v) const;
  /// Phi^* of a form evaluated at Phi(z).
  FormValue pull_back(const RationalMatrix& jacobian, const FormValue& at_image) const;

 private:
  int n_;
  std::vector<Expr> images_;                 // by slot; inactive slots map to themselves
  std::vector<std::vector<Expr>> partials_;  // [image slot][source slot]
};

/// First-jet prolongation of phi: x -> phi(x), y -> P^T y P and the jet rule
/// with the three-factor term plus the two Hessian terms of phi^{-1}.
ProlongedMap prolong_diffeo(const PolyDiffeo& phi);

/// y -> s y, jets -> s jets, x fixed.
ProlongedMap scaling_substitution(int n, const Rational& s);

/// Substitutes the image expressions into coefficients and replaces every
/// covector by the differential of its image.
DiffForm pullback_form(const ProlongedMap& map, const DiffForm& a);
MatrixForm pullback_form(const ProlongedMap& map, const MatrixForm& a);
DiffForm pullback_form(const PolyDiffeo& phi, const DiffForm& a);

/// J^{-1} (Phi^* conn) J + J^{-1} dJ with J = D phi (x), symbolically.
MatrixForm gauge_pullback_connection(const PolyDiffeo& phi, const ProlongedMap& map, const MatrixForm& conn);
MatrixForm gauge_pullback_connection(const PolyDiffeo& phi, const MatrixForm& conn);
/// The same, evaluated at the jet point z only.
MatrixFormValue gauge_pullback_connection_at(const PolyDiffeo& phi, const ProlongedMap& map, const MatrixForm& conn,
                                             const JetPoint& z);

/// Components over the x and y slots (jets zero):
/// X^i d/dx^i - sum_{i<=j} (d_i X^k y_kj + d_j X^k y_ki) d/dy_ij.
std::vector<Expr> lift_vector_field(const VectorFieldPoly& x);

/// For X = A x: compares the lift at z with the exact t-derivative at t = 0 of
/// the action of the curve t -> I + tA on y (same first-order jet as the flow).
CheckOutcome check_lift_against_flow(const RationalMatrix& a, const JetPoint& z);

/// (j^1 g)^* of a form: a form in dx only, coefficients polynomial/rational in x.
DiffForm holonomic_pullback(const MetricSection& g, const DiffForm& a);
MatrixForm holonomic_pullback(const MetricSection& g, const MatrixForm& a);
/// Pointwise: restrict the value at j^1 g(x) to the lifted coordinate vectors.
FormValue holonomic_pullback_at(const MetricSection& g, const FormValue& at_jet, std::span<const Rational> x);
MatrixFormValue holonomic_pullback_at(const MetricSection& g, const MatrixFormValue& at_jet,
                                      std::span<const Rational> x);

struct Christoffels {
  int n = 0;
  std::vector<Rational> values;  // (i*n + j)*n + k
  const Rational& operator()(int i, int j, int k) const { return values[(i * n + j) * n + k]; }
};

/// Textbook Christoffel symbols from exact polynomial derivatives of g.
Christoffels classical_levi_civita(const MetricSection& g, std::span<const Rational> x);
/// Levi-Civita connection 1-forms Gamma^i_jk dx^k at x.
MatrixFormValue classical_connection_forms(const MetricSection& g, std::span<const Rational> x);
/// R^i_j = sum_{k<l} R^i_jkl dx^k ^ dx^l from the textbook Riemann formula.
MatrixFormValue classical_curvature(const MetricSection& g, std::span<const Rational> x);

}  // namespace jetlc

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetlc/forms.hpp"
#include "jetlc/jet_point.hpp"
#include "jetlc/rational.hpp"
#include "json.hpp"

namespace jetlc {

class NotOrthogonal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tensor factors: V, or the symmetric square S^2 V with basis e_i . e_j
/// (i <= j) normalized as (e_i (x) e_j + e_j (x) e_i) / 2.
enum class Factor { V, S2 };

enum class Summand { V3, S2V_V2, S2V_V3, V4 };

const std::vector<Factor>& factors(Summand s);
std::string to_string(Summand s);

/// Direct sum of tensor summands over V = R^n. Basis order: summands in the
/// listed order; inside a summand, lexicographic in the factor values, where
/// an S^2 value is the pair (i, j), i <= j, in lexicographic order.
class TensorSpaceSpec {
 public:
  TensorSpaceSpec(int n, std::vector<Summand> summands);
  /// E = V(x)3 + S^2V(x)V(x)V + S^2V(x)V(x)3
  static TensorSpaceSpec module_e(int n);

  int n() const { return n_; }
  const std::vector<Summand>& summands() const { return summands_; }
  int dimension() const { return dimension_; }
  int summand_dimension(int s) const;
  int offset(int s) const { return offsets_[s]; }

  /// Factor values of a basis index: summand number plus one value per factor
  /// (a V value is an index, an S^2 value is a pair number).
  std::pair<int, std::vector<int>> decode(int index) const;
  int encode(int summand, const std::vector<int>& values) const;
  /// e.g. "S2V(x)V(x)V:(1,2)|1|2" (1-based)
  std::string basis_label(int index) const;

  int pair_count() const { return n_ * (n_ + 1) / 2; }
  int pair_number(int i, int j) const;
  std::pair<int, int> pair_of(int p) const;

 private:
  int n_;
  std::vector<Summand> summands_;
  std::vector<int> offsets_;
  int dimension_ = 0;
};

using SparseVector = std::map<int, Rational>;

/// Square sparse matrix stored by columns (column b = image of basis vector b).
struct LinearOperator {
  int dimension = 0;
  std::vector<SparseVector> columns;
  SparseVector apply(const SparseVector& v) const;
};

/// Derivation action of an antisymmetric generator. Throws NotAntisymmetric.
LinearOperator algebra_action(const TensorSpaceSpec& spec, const RationalMatrix& generator);
/// Action of an orthogonal matrix. Throws NotOrthogonal.
LinearOperator group_element_action(const TensorSpaceSpec& spec, const RationalMatrix& a);

enum class Group { O, SO };
std::string to_string(Group g);
Group parse_group(const std::string& s);

struct InvariantOptions {
  /// Restrict to coordinates fixed by the diagonal sign matrices of the group
  /// before elimination (these constraints are implied by the others).
  bool sign_prepass = true;
  /// Further orthogonal elements whose constraints are added.
  std::vector<RationalMatrix> extra_elements;
};

struct InvariantReport {
  Group group = Group::O;
  int n = 0;
  std::vector<Summand> summands;
  int space_dimension = 0;
  int dimension = 0;
  std::vector<SparseVector> basis;  // integer entries, content 1, positive leading entry
  bool residuals_zero = false;
  int constraint_operators = 0;
};

/// All so(n) generator actions, plus (R - I) with R = diag(-1, 1, ..., 1) for O(n).
InvariantReport invariant_subspace(const TensorSpaceSpec& spec, Group group, const InvariantOptions& options = {});
nlohmann::json to_json(const TensorSpaceSpec& spec, const InvariantReport& r);

/// Exact coordinates of v in the span of basis, if it lies there.
std::optional<std::vector<Rational>> coordinates_in_span(const std::vector<SparseVector>& basis, const SparseVector& v);
/// Rank of a family of vectors.
int rank_of(const std::vector<SparseVector>& vectors);

struct QuarticReport {
  InvariantReport report;
  std::vector<SparseVector> xi;  // xi_1, xi_2, xi_3
  bool xi_in_space = false;
  int xi_rank = 0;
  /// xi-coordinates of the computed basis vectors when the xi span it.
  std::optional<std::vector<std::vector<Rational>>> basis_in_xi;
};

/// O(n)-invariants of V(x)4 with xi_1 = sum e_i e_i e_j e_j, xi_2 = sum e_i e_j e_i e_j,
/// xi_3 = sum e_i e_j e_j e_i.
QuarticReport quartic_invariants(int n);
nlohmann::json to_json(const QuarticReport& r);

struct BasisMatch {
  int n = 0;
  bool ok = false;
  int invariant_dimension = 0;
  SparseVector theta_image, trace_image;  // images of theta and tr(vartheta) (x) g at the normal point
  bool images_invariant = false;
  int images_rank = 0;
  std::vector<Rational> theta_coordinates, trace_coordinates;  // in the computed basis
  /// the contractions sum e_i.e_i (x) e_j e_j and sum e_i.e_j (x) e_i e_j
  SparseVector contraction_a, contraction_b;
  std::vector<Rational> contraction_a_coordinates, contraction_b_coordinates;
  std::string detail;
};

/// Maps the covectors at the normal point into E (dx^i -> e_i, dy_ij -> e_i.e_j,
/// dy_ij,k -> e_i.e_j (x) e_k) and checks that the images of theta and
/// tr(vartheta) (x) g form an exact basis of the O(n)-invariants.
BasisMatch match_contraction_basis(int n);
nlohmann::json to_json(const TensorSpaceSpec& spec, const BasisMatch& m);

}  // namespace jetlc

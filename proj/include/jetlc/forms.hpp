#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetlc/coords.hpp"
#include "jetlc/expr.hpp"
#include "jetlc/identity.hpp"
#include "jetlc/jet_point.hpp"
#include "jetlc/rational.hpp"

namespace jetlc {

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddDimension : public std::invalid_argument {
 public:
  OddDimension() : std::invalid_argument("Pfaffian requires an even dimension") {}
};

class NotAntisymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parity of the shuffle that merges the sorted covector tuples a and b,
/// i.e. of the number of pairs (i in a, j in b) with i > j.
inline int shuffle_parity(SlotMask a, SlotMask b) {
  int count = 0;
  while (b) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    count += std::popcount(a >> (j + 1));  // bits of a above j
  }
  return count & 1;
}

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Expr> {
  static bool is_zero(const Expr& c) { return c.is_zero(); }
  static Expr sum(std::vector<Expr>&& parts) { return jetlc::sum(std::move(parts)); }
  static Expr mul(const Expr& a, const Expr& b) { return a * b; }
  static Expr neg(const Expr& a) { return -a; }
  static Expr from(const Rational& q) { return Expr(q); }
};

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return jetlc::is_zero(c); }
  static Rational sum(std::vector<Rational>&& parts) {
    Rational s = 0;
    for (const auto& p : parts) s += p;
    return s;
  }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational neg(const Rational& a) { return -a; }
  static Rational from(const Rational& q) { return q; }
};

/// Sparse exterior form. A key is the set of covectors of a basis monomial
/// (slot order = covector order); coefficients are never structural zeros.
template <class C>
class BasicForm {
 public:
  using Terms = std::map<SlotMask, C>;
  using Traits = CoeffTraits<C>;

  explicit BasicForm(int degree = 0) : degree_(degree) {}

  static BasicForm scalar(const C& c) {
    BasicForm f(0);
    if (!Traits::is_zero(c)) f.terms_.emplace(SlotMask{0}, c);
    return f;
  }
  static BasicForm basis(int slot) {
    BasicForm f(1);
    f.terms_.emplace(SlotMask{1} << slot, Traits::from(Rational(1)));
    return f;
  }
  static BasicForm from_terms(int degree, Terms terms) {
    BasicForm f(degree);
    for (auto& [k, c] : terms) {
      if (std::popcount(k) != degree) throw DegreeMismatch("basis key does not match the form degree");
      if (!Traits::is_zero(c)) f.terms_.emplace(k, std::move(c));
    }
    return f;
  }

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coefficient(SlotMask key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Traits::from(Rational(0)) : it->second;
  }
  /// The single coefficient of a 0-form.
  C value() const { return coefficient(0); }

  /// Applies f to each coefficient, dropping structural zeros.
  template <class F>
  auto map(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    BasicForm<D> out(degree_);
    typename BasicForm<D>::Terms terms;
    for (const auto& [k, c] : terms_) terms.emplace(k, f(c));
    return BasicForm<D>::from_terms(degree_, std::move(terms));
  }

 private:
  int degree_;
  Terms terms_;
};

using DiffForm = BasicForm<Expr>;
using FormValue = BasicForm<Rational>;

/// Collects contributions per basis key and sums them once at the end.
template <class C>
class FormAccumulator {
 public:
  explicit FormAccumulator(int degree) : degree_(degree) {}
  void add(SlotMask key, C c) { parts_[key].push_back(std::move(c)); }
  void add(const BasicForm<C>& f, bool negate = false) {
    if (f.degree() != degree_ && !f.is_zero()) throw DegreeMismatch("adding forms of different degree");
    for (const auto& [k, c] : f.terms()) add(k, negate ? CoeffTraits<C>::neg(c) : c);
  }
  BasicForm<C> finish() {
    typename BasicForm<C>::Terms terms;
    for (auto& [k, parts] : parts_) {
      C c = parts.size() == 1 ? std::move(parts.front()) : CoeffTraits<C>::sum(std::move(parts));
      if (!CoeffTraits<C>::is_zero(c)) terms.emplace(k, std::move(c));
    }
    parts_.clear();
    return BasicForm<C>::from_terms(degree_, std::move(terms));
  }

 private:
  int degree_;
  std::map<SlotMask, std::vector<C>> parts_;
};

template <class C>
BasicForm<C> operator+(const BasicForm<C>& a, const BasicForm<C>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() != b.degree()) throw DegreeMismatch("adding forms of different degree");
  FormAccumulator<C> acc(a.degree());
  acc.add(a);
  acc.add(b);
  return acc.finish();
}

template <class C>
BasicForm<C> operator-(const BasicForm<C>& a) {
  return a.map([](const C& c) { return CoeffTraits<C>::neg(c); });
}

template <class C>
BasicForm<C> operator-(const BasicForm<C>& a, const BasicForm<C>& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.degree() != b.degree()) throw DegreeMismatch("subtracting forms of different degree");
  FormAccumulator<C> acc(a.degree());
  acc.add(a);
  acc.add(b, true);
  return acc.finish();
}

/// Multiplication by a 0-form coefficient.
template <class C>
BasicForm<C> scale(const C& s, const BasicForm<C>& a) {
  if (CoeffTraits<C>::is_zero(s)) return BasicForm<C>(a.degree());
  return a.map([&](const C& c) { return CoeffTraits<C>::mul(s, c); });
}

template <class C>
BasicForm<C> wedge(const BasicForm<C>& a, const BasicForm<C>& b) {
  const int degree = a.degree() + b.degree();
  if (a.is_zero() || b.is_zero()) return BasicForm<C>(degree);
  FormAccumulator<C> acc(degree);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (ka & kb) continue;
      C c = CoeffTraits<C>::mul(ca, cb);
      if (shuffle_parity(ka, kb)) c = CoeffTraits<C>::neg(c);
      acc.add(ka | kb, std::move(c));
    }
  return acc.finish();
}

/// Exterior derivative; the differentiator memo may be shared across calls.
DiffForm dext(const DiffForm& a, Differentiator& d);
DiffForm dext(const DiffForm& a);

/// Tangent vector at a jet point, as sparse components over the coordinate frame.
struct TangentVector {
  std::map<int, Rational> components;  // slot -> value

  static TangentVector along(const JetCoordinate& c, const Rational& value = 1) {
    TangentVector v;
    v.components[c.slot()] = value;
    return v;
  }
  Rational operator[](int slot) const {
    auto it = components.find(slot);
    return it == components.end() ? Rational(0) : it->second;
  }
};

/// Random tangent vector over the active slots of dimension n, small rational entries.
TangentVector random_tangent(int n, Rng& rng);
std::vector<TangentVector> random_tangents(int n, int count, Rng& rng);

FormValue evaluate_at(const DiffForm& a, Evaluator& ev);
FormValue evaluate_at(const DiffForm& a, const JetPoint& p);

/// Alternating multilinear value of a form on exactly degree() vectors.
Rational evaluate(const FormValue& a, std::span<const TangentVector> vectors);
Rational evaluate(const DiffForm& a, const JetPoint& p, std::span<const TangentVector> vectors);

/// Pulls an evaluated form back along the linear map R^m -> T_p J^1 that sends
/// e_i to vectors[i]. The result lives on slots 0..m-1 and the top coefficient
/// of a degree-m form equals evaluate(a, vectors). Restriction is an algebra
/// homomorphism, so wedge products can be formed after restricting.
FormValue restrict_to(const FormValue& a, std::span<const TangentVector> vectors);

/// Coefficient of the top monomial e^1 ^ ... ^ e^m of a restricted form.
inline Rational top_coefficient(const FormValue& restricted, int m) {
  return restricted.coefficient(m >= 64 ? ~SlotMask{0} : (SlotMask{1} << m) - 1);
}

/// Coefficientwise identity test of two forms (see IdentitySettings). All
/// coefficients share the same sample points.
IdentityOutcome forms_identical(const DiffForm& a, const DiffForm& b, const IdentitySettings& settings = {});

/// Square array of forms of one common degree.
template <class C>
class BasicMatrixForm {
 public:
  BasicMatrixForm() = default;
  BasicMatrixForm(int n, int degree) : n_(n), degree_(degree), entries_(n * n, BasicForm<C>(degree)) {}

  static BasicMatrixForm identity(int n) {
    BasicMatrixForm m(n, 0);
    for (int i = 0; i < n; ++i) m(i, i) = BasicForm<C>::scalar(CoeffTraits<C>::from(Rational(1)));
    return m;
  }

  int size() const { return n_; }
  int degree() const { return degree_; }
  BasicForm<C>& operator()(int i, int j) { return entries_[i * n_ + j]; }
  const BasicForm<C>& operator()(int i, int j) const { return entries_[i * n_ + j]; }

  void set(int i, int j, BasicForm<C> f) {
    if (!f.is_zero() && f.degree() != degree_) throw DegreeMismatch("matrix entry of wrong degree");
    if (f.is_zero()) f = BasicForm<C>(degree_);
    entries_[i * n_ + j] = std::move(f);
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
  }

  template <class F>
  auto map(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const BasicForm<C>&>()))>;
    using Coeff = std::decay_t<decltype(std::declval<D>().terms().begin()->second)>;
    BasicMatrixForm<Coeff> out;
    out.n_ = n_;
    out.entries_.reserve(entries_.size());
    int deg = -1;
    for (const auto& e : entries_) {
      out.entries_.push_back(f(e));
      if (!out.entries_.back().is_zero()) deg = out.entries_.back().degree();
    }
    out.degree_ = deg < 0 ? (out.entries_.empty() ? 0 : out.entries_.front().degree()) : deg;
    for (auto& e : out.entries_)
      if (e.is_zero()) e = BasicForm<Coeff>(out.degree_);
    return out;
  }

 private:
  template <class>
  friend class BasicMatrixForm;
  int n_ = 0;
  int degree_ = 0;
  std::vector<BasicForm<C>> entries_;
};

using MatrixForm = BasicMatrixForm<Expr>;
using MatrixFormValue = BasicMatrixForm<Rational>;

template <class C>
using ScalarMatrix = std::vector<std::vector<C>>;

template <class C>
void require_same_size(const BasicMatrixForm<C>& a, const BasicMatrixForm<C>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("matrix forms of different size");
}

template <class C>
BasicMatrixForm<C> operator+(const BasicMatrixForm<C>& a, const BasicMatrixForm<C>& b) {
  require_same_size(a, b);
  BasicMatrixForm<C> r(a.size(), a.degree());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r.set(i, j, a(i, j) + b(i, j));
  return r;
}

template <class C>
BasicMatrixForm<C> operator-(const BasicMatrixForm<C>& a, const BasicMatrixForm<C>& b) {
  require_same_size(a, b);
  BasicMatrixForm<C> r(a.size(), a.degree());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r.set(i, j, a(i, j) - b(i, j));
  return r;
}

template <class C>
BasicMatrixForm<C> scale(const C& s, const BasicMatrixForm<C>& a) {
  BasicMatrixForm<C> r(a.size(), a.degree());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r.set(i, j, scale(s, a(i, j)));
  return r;
}

/// (A ^ B)^i_j = sum_a A^i_a ^ B^a_j
template <class C>
BasicMatrixForm<C> mat_wedge(const BasicMatrixForm<C>& a, const BasicMatrixForm<C>& b) {
  require_same_size(a, b);
  const int n = a.size();
  BasicMatrixForm<C> r(n, a.degree() + b.degree());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FormAccumulator<C> acc(a.degree() + b.degree());
      for (int k = 0; k < n; ++k) acc.add(wedge(a(i, k), b(k, j)));
      r.set(i, j, acc.finish());
    }
  return r;
}

/// S * A for a matrix of 0-form coefficients S.
template <class C>
BasicMatrixForm<C> left_multiply(const ScalarMatrix<C>& s, const BasicMatrixForm<C>& a) {
  const int n = a.size();
  BasicMatrixForm<C> r(n, a.degree());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FormAccumulator<C> acc(a.degree());
      for (int k = 0; k < n; ++k) acc.add(scale(s[i][k], a(k, j)));
      r.set(i, j, acc.finish());
    }
  return r;
}

/// A * S for a matrix of 0-form coefficients S.
template <class C>
BasicMatrixForm<C> right_multiply(const BasicMatrixForm<C>& a, const ScalarMatrix<C>& s) {
  const int n = a.size();
  BasicMatrixForm<C> r(n, a.degree());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FormAccumulator<C> acc(a.degree());
      for (int k = 0; k < n; ++k) acc.add(scale(s[k][j], a(i, k)));
      r.set(i, j, acc.finish());
    }
  return r;
}

template <class C>
BasicMatrixForm<C> transpose(const BasicMatrixForm<C>& a) {
  BasicMatrixForm<C> r(a.size(), a.degree());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r.set(i, j, a(j, i));
  return r;
}

/// g-adjoint g^{-1} A^T g.
template <class C>
BasicMatrixForm<C> transpose_g(const BasicMatrixForm<C>& a, const ScalarMatrix<C>& g, const ScalarMatrix<C>& g_inv) {
  return right_multiply(left_multiply(g_inv, transpose(a)), g);
}

template <class C>
BasicMatrixForm<C> sym_part(const BasicMatrixForm<C>& a, const ScalarMatrix<C>& g, const ScalarMatrix<C>& g_inv) {
  return scale(CoeffTraits<C>::from(Rational(1, 2)), a + transpose_g(a, g, g_inv));
}

template <class C>
BasicMatrixForm<C> antisym_part(const BasicMatrixForm<C>& a, const ScalarMatrix<C>& g, const ScalarMatrix<C>& g_inv) {
  return scale(CoeffTraits<C>::from(Rational(1, 2)), a - transpose_g(a, g, g_inv));
}

template <class C>
BasicForm<C> trace(const BasicMatrixForm<C>& a) {
  FormAccumulator<C> acc(a.degree());
  for (int i = 0; i < a.size(); ++i) acc.add(a(i, i));
  return acc.finish();
}

MatrixForm dext(const MatrixForm& a, Differentiator& d);
MatrixForm dext(const MatrixForm& a);
MatrixFormValue evaluate_at(const MatrixForm& a, Evaluator& ev);
MatrixFormValue evaluate_at(const MatrixForm& a, const JetPoint& p);
MatrixFormValue restrict_to(const MatrixFormValue& a, std::span<const TangentVector> vectors);

/// Coefficientwise identity of all entries.
IdentityOutcome forms_identical(const MatrixForm& a, const MatrixForm& b, const IdentitySettings& settings = {});

/// Denotes (2 pi)^two_pi_power * form. Powers of 2 pi never become numbers.
template <class C>
struct PrefactoredForm {
  int two_pi_power = 0;
  BasicForm<C> form;
};

template <class C>
PrefactoredForm<C> wedge(const PrefactoredForm<C>& a, const PrefactoredForm<C>& b) {
  return {a.two_pi_power + b.two_pi_power, wedge(a.form, b.form)};
}

template <class C>
PrefactoredForm<C> operator+(const PrefactoredForm<C>& a, const PrefactoredForm<C>& b) {
  if (a.two_pi_power != b.two_pi_power) throw std::invalid_argument("adding forms with different (2 pi) prefactors");
  return {a.two_pi_power, a.form + b.form};
}

namespace detail {

/// Wedge product of entries A(rows[0], cols[0]) ^ ... in order. Entries are
/// assumed to commute (even degree).
template <class C>
BasicForm<C> wedge_chain(const BasicMatrixForm<C>& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  BasicForm<C> acc = a(rows[0], cols[0]);
  for (std::size_t t = 1; t < rows.size() && !acc.is_zero(); ++t) acc = wedge(acc, a(rows[t], cols[t]));
  if (acc.is_zero()) return BasicForm<C>(a.degree() * static_cast<int>(rows.size()));
  return acc;
}

inline int permutation_parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv & 1;
}

template <class C>
void pfaffian_rec(const BasicMatrixForm<C>& a, std::vector<int> idx, const BasicForm<C>& prefix, bool negative,
                  FormAccumulator<C>& acc) {
  if (idx.empty()) {
    acc.add(prefix, negative);
    return;
  }
  const int first = idx[0];
  for (std::size_t t = 1; t < idx.size(); ++t) {
    const auto& entry = a(first, idx[t]);
    if (entry.is_zero()) continue;
    std::vector<int> rest;
    for (std::size_t s = 1; s < idx.size(); ++s)
      if (s != t) rest.push_back(idx[s]);
    const bool sign = negative ^ ((t - 1) % 2 == 1);
    pfaffian_rec(a, std::move(rest), wedge(prefix, entry), sign, acc);
  }
}

}  // namespace detail

/// Leibniz determinant of the submatrix on `subset`, products taken with wedge.
template <class C>
BasicForm<C> wedge_determinant(const BasicMatrixForm<C>& a, const std::vector<int>& subset) {
  const int degree = a.degree() * static_cast<int>(subset.size());
  if (a.degree() % 2 != 0) throw DegreeMismatch("wedge determinant needs even-degree entries");
  FormAccumulator<C> acc(degree);
  std::vector<int> perm(subset.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> cols(subset.size());
    for (std::size_t t = 0; t < subset.size(); ++t) cols[t] = subset[perm[t]];
    acc.add(detail::wedge_chain(a, subset, cols), detail::permutation_parity(perm) == 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc.finish();
}

template <class C>
BasicForm<C> wedge_determinant(const BasicMatrixForm<C>& a) {
  std::vector<int> all(a.size());
  std::iota(all.begin(), all.end(), 0);
  return wedge_determinant(a, all);
}

/// Pfaffian by expansion over perfect matchings, reading only the strict
/// upper triangle. Does not check antisymmetry.
template <class C>
BasicForm<C> pfaffian_unchecked(const BasicMatrixForm<C>& a) {
  if (a.size() % 2 != 0) throw OddDimension();
  if (a.degree() % 2 != 0) throw DegreeMismatch("Pfaffian needs even-degree entries");
  FormAccumulator<C> acc(a.degree() * a.size() / 2);
  std::vector<int> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  detail::pfaffian_rec(a, idx, BasicForm<C>::scalar(CoeffTraits<C>::from(Rational(1))), false, acc);
  return acc.finish();
}

/// Pfaffian of an antisymmetric matrix of even-degree forms. Antisymmetry is
/// checked exactly for evaluated forms and by identity testing for symbolic ones.
FormValue pfaffian(const MatrixFormValue& a);
DiffForm pfaffian(const MatrixForm& a, const IdentitySettings& settings = {});

/// Coefficient of lambda^(n-2k) in det(lambda I - A / 2pi): the sum of all
/// principal 2k-minors (wedge determinants), carried with prefactor (2pi)^(-2k).
template <class C>
PrefactoredForm<C> char_coeff(int k, const BasicMatrixForm<C>& a) {
  const int n = a.size();
  if (k < 0 || 2 * k > n) throw std::out_of_range("char_coeff: 2k exceeds the matrix size");
  if (a.degree() != 2) throw DegreeMismatch("char_coeff expects a matrix of 2-forms");
  if (k == 0) return {0, BasicForm<C>::scalar(CoeffTraits<C>::from(Rational(1)))};
  FormAccumulator<C> acc(4 * k);
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + 2 * k, true);
  do {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (pick[i]) subset.push_back(i);
    acc.add(wedge_determinant(a, subset));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {-2 * k, acc.finish()};
}

/// d of Pf(A) from A and dA by the Leibniz rule over perfect matchings
/// (entries of even degree), for evaluated forms.
FormValue pfaffian_differential(const MatrixFormValue& a, const MatrixFormValue& da);

/// d of char_coeff(k, A) from A and dA by the Leibniz rule (entries of even
/// degree), for evaluated forms restricted to a common tangent tuple.
FormValue char_coeff_differential(int k, const MatrixFormValue& a, const MatrixFormValue& da);

}  // namespace jetlc

#include "jetlc/invariant_theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "jetlc/geometry.hpp"
#include "jetlc/serialize.hpp"

namespace jetlc {

const std::vector<Factor>& factors(Summand s) {
  static const std::vector<Factor> v3{Factor::V, Factor::V, Factor::V};
  static const std::vector<Factor> s2v2{Factor::S2, Factor::V, Factor::V};
  static const std::vector<Factor> s2v3{Factor::S2, Factor::V, Factor::V, Factor::V};
  static const std::vector<Factor> v4{Factor::V, Factor::V, Factor::V, Factor::V};
  switch (s) {
    case Summand::V3: return v3;
    case Summand::S2V_V2: return s2v2;
    case Summand::S2V_V3: return s2v3;
    case Summand::V4: return v4;
  }
  throw std::logic_error("unknown summand");
}

std::string to_string(Summand s) {
  switch (s) {
    case Summand::V3: return "V(x)V(x)V";
    case Summand::S2V_V2: return "S2V(x)V(x)V";
    case Summand::S2V_V3: return "S2V(x)V(x)V(x)V";
    case Summand::V4: return "V(x)V(x)V(x)V";
  }
  throw std::logic_error("unknown summand");
}

TensorSpaceSpec::TensorSpaceSpec(int n, std::vector<Summand> summands) : n_(n), summands_(std::move(summands)) {
  require_dimension(n);
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    offsets_.push_back(dimension_);
    dimension_ += summand_dimension(static_cast<int>(s));
  }
}

TensorSpaceSpec TensorSpaceSpec::module_e(int n) {
  return TensorSpaceSpec(n, {Summand::V3, Summand::S2V_V2, Summand::S2V_V3});
}

int TensorSpaceSpec::summand_dimension(int s) const {
  int d = 1;
  for (Factor f : factors(summands_.at(s))) d *= f == Factor::V ? n_ : pair_count();
  return d;
}

int TensorSpaceSpec::pair_number(int i, int j) const {
  if (i > j) std::swap(i, j);
  // pairs (a, b), a <= b, in lexicographic order
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> TensorSpaceSpec::pair_of(int p) const {
  for (int i = 0; i < n_; ++i) {
    const int row = n_ - i;
    if (p < row) return {i, i + p};
    p -= row;
  }
  throw std::out_of_range("pair number out of range");
}

std::pair<int, std::vector<int>> TensorSpaceSpec::decode(int index) const {
  if (index < 0 || index >= dimension_) throw std::out_of_range("basis index out of range");
  int s = static_cast<int>(summands_.size()) - 1;
  while (offsets_[s] > index) --s;
  int rest = index - offsets_[s];
  const auto& fs = factors(summands_[s]);
  std::vector<int> values(fs.size());
  for (int t = static_cast<int>(fs.size()) - 1; t >= 0; --t) {
    const int base = fs[t] == Factor::V ? n_ : pair_count();
    values[t] = rest % base;
    rest /= base;
  }
  return {s, values};
}

int TensorSpaceSpec::encode(int summand, const std::vector<int>& values) const {
  const auto& fs = factors(summands_.at(summand));
  int index = 0;
  for (std::size_t t = 0; t < fs.size(); ++t) {
    const int base = fs[t] == Factor::V ? n_ : pair_count();
    index = index * base + values[t];
  }
  return offsets_[summand] + index;
}

std::string TensorSpaceSpec::basis_label(int index) const {
  const auto [s, values] = decode(index);
  const auto& fs = factors(summands_[s]);
  std::string out = to_string(summands_[s]) + ":";
  for (std::size_t t = 0; t < fs.size(); ++t) {
    if (t) out += "|";
    if (fs[t] == Factor::V) {
      out += std::to_string(values[t] + 1);
    } else {
      const auto [i, j] = pair_of(values[t]);
      out += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    }
  }
  return out;
}

SparseVector LinearOperator::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [b, c] : v) {
    for (const auto& [a, m] : columns.at(b)) out[a] += m * c;
  }
  std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  return out;
}

namespace {

using FactorImage = std::vector<std::pair<int, Rational>>;

void require_square(const TensorSpaceSpec& spec, const RationalMatrix& m) {
  if (static_cast<int>(m.size()) != spec.n()) throw DimensionMismatch("matrix size does not match the dimension");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != spec.n()) throw DimensionMismatch("matrix is not square");
  }
}

/// Image of one factor value under x -> m x (group) or the derivation of m (algebra).
FactorImage factor_image(const TensorSpaceSpec& spec, Factor f, int value, const RationalMatrix& m, bool derivation) {
  const int n = spec.n();
  std::map<int, Rational> acc;
  if (f == Factor::V) {
    for (int a = 0; a < n; ++a) acc[a] += m[a][value];
  } else {
    const auto [i, j] = spec.pair_of(value);
    if (derivation) {
      for (int a = 0; a < n; ++a) {
        acc[spec.pair_number(a, j)] += m[a][i];
        acc[spec.pair_number(i, a)] += m[a][j];
      }
    } else {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) acc[spec.pair_number(a, b)] += m[a][i] * m[b][j];
      }
    }
  }
  FactorImage out;
  for (auto& [k, c] : acc) {
    if (!is_zero(c)) out.emplace_back(k, c);
  }
  return out;
}

LinearOperator build_action(const TensorSpaceSpec& spec, const RationalMatrix& m, bool derivation) {
  LinearOperator op;
  op.dimension = spec.dimension();
  op.columns.resize(spec.dimension());
  for (int b = 0; b < spec.dimension(); ++b) {
    const auto [s, values] = spec.decode(b);
    const auto& fs = factors(spec.summands()[s]);
    SparseVector& col = op.columns[b];
    if (derivation) {
      for (std::size_t t = 0; t < fs.size(); ++t) {
        for (const auto& [v, c] : factor_image(spec, fs[t], values[t], m, true)) {
          auto w = values;
          w[t] = v;
          col[spec.encode(s, w)] += c;
        }
      }
    } else {
      // tensor product of the factor images
      std::vector<std::pair<std::vector<int>, Rational>> partial{{{}, Rational(1)}};
      for (std::size_t t = 0; t < fs.size(); ++t) {
        const auto img = factor_image(spec, fs[t], values[t], m, false);
        std::vector<std::pair<std::vector<int>, Rational>> next;
        for (const auto& [prefix, c] : partial) {
          for (const auto& [v, d] : img) {
            auto w = prefix;
            w.push_back(v);
            next.emplace_back(std::move(w), Rational(c * d));
          }
        }
        partial = std::move(next);
      }
      for (const auto& [w, c] : partial) col[spec.encode(s, w)] += c;
    }
    std::erase_if(col, [](const auto& kv) { return is_zero(kv.second); });
  }
  return op;
}

RationalMatrix identity_matrix(int n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Integer row with strictly increasing columns.
using IntRow = std::vector<std::pair<int, mpz_class>>;

void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

/// a_lead * row - row_lead * pivot, which cancels the leading column.
IntRow eliminate(const IntRow& row, const IntRow& pivot) {
  const mpz_class f = pivot.front().second;
  const mpz_class h = row.front().second;
  IntRow out;
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < pivot.size()) {
    if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, f * row[i].second);
      ++i;
    } else if (i >= row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -h * pivot[j].second);
      ++j;
    } else {
      mpz_class v = f * row[i].second - h * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

IntRow to_int_row(const std::map<int, Rational>& sparse) {
  mpz_class l = 1;
  for (const auto& [c, v] : sparse) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow row;
  for (const auto& [c, v] : sparse) {
    mpz_class x = v.get_num() * (l / v.get_den());
    if (x != 0) row.emplace_back(c, std::move(x));
  }
  make_primitive(row);
  return row;
}

/// Row echelon form over the integers, keyed by leading column.
class Echelon {
 public:
  void insert(IntRow row) {
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        pivots_.emplace(row.front().first, std::move(row));
        return;
      }
      row = eliminate(row, it->second);
    }
  }
  const std::map<int, IntRow>& pivots() const { return pivots_; }

 private:
  std::map<int, IntRow> pivots_;
};

/// Basis of the kernel over the given column set.
std::vector<SparseVector> kernel(const Echelon& e, const std::vector<int>& columns) {
  std::vector<SparseVector> basis;
  const auto& pivots = e.pivots();
  for (int free : columns) {
    if (pivots.count(free)) continue;
    std::map<int, Rational> v{{free, Rational(1)}};
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const IntRow& row = it->second;
      Rational sum = 0;
      for (std::size_t k = 1; k < row.size(); ++k) {
        auto f = v.find(row[k].first);
        if (f != v.end()) sum += Rational(row[k].second) * f->second;
      }
      if (!is_zero(sum)) v[it->first] = -sum / Rational(row.front().second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

SparseVector normalized(const SparseVector& v) {
  SparseVector out;
  if (v.empty()) return out;
  const IntRow row = to_int_row(v);
  const int sign = sgn(row.front().second) < 0 ? -1 : 1;
  for (const auto& [c, x] : row) out[c] = Rational(x * sign);
  return out;
}

/// Sign of the diagonal sign matrix `signs` on basis vector b.
int diagonal_sign(const TensorSpaceSpec& spec, int b, const std::vector<int>& signs) {
  const auto [s, values] = spec.decode(b);
  const auto& fs = factors(spec.summands()[s]);
  int sign = 1;
  for (std::size_t t = 0; t < fs.size(); ++t) {
    if (fs[t] == Factor::V) {
      sign *= signs[values[t]];
    } else {
      const auto [i, j] = spec.pair_of(values[t]);
      sign *= signs[i] * signs[j];
    }
  }
  return sign;
}

SparseVector difference(const LinearOperator& op, const SparseVector& v, bool minus_identity) {
  SparseVector out = op.apply(v);
  if (minus_identity) {
    for (const auto& [k, c] : v) out[k] -= c;
    std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  }
  return out;
}

}  // namespace

LinearOperator algebra_action(const TensorSpaceSpec& spec, const RationalMatrix& generator) {
  require_square(spec, generator);
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      if (generator[i][j] != -generator[j][i]) throw NotAntisymmetric("so(n) generator must be antisymmetric");
    }
  }
  return build_action(spec, generator, true);
}

LinearOperator group_element_action(const TensorSpaceSpec& spec, const RationalMatrix& a) {
  require_square(spec, a);
  const int n = spec.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational dot = 0;
      for (int k = 0; k < n; ++k) dot += a[k][i] * a[k][j];
      if (dot != (i == j ? 1 : 0)) throw NotOrthogonal("group element must satisfy A^T A = I");
    }
  }
  return build_action(spec, a, false);
}

std::string to_string(Group g) { return g == Group::O ? "O" : "SO"; }

Group parse_group(const std::string& s) {
  if (s == "O") return Group::O;
  if (s == "SO") return Group::SO;
  throw std::invalid_argument("group must be O or SO, got '" + s + "'");
}

InvariantReport invariant_subspace(const TensorSpaceSpec& spec, Group group, const InvariantOptions& options) {
  const int n = spec.n();
  InvariantReport r;
  r.group = group;
  r.n = n;
  r.summands = spec.summands();
  r.space_dimension = spec.dimension();

  // (operator, subtract identity)
  std::vector<std::pair<LinearOperator, bool>> constraints;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      RationalMatrix x(n, std::vector<Rational>(n, Rational(0)));
      x[b][a] = 1;
      x[a][b] = -1;
      constraints.emplace_back(algebra_action(spec, x), false);
    }
  }
  if (group == Group::O) {
    RationalMatrix refl = identity_matrix(n);
    refl[0][0] = -1;
    constraints.emplace_back(group_element_action(spec, refl), true);
  }
  for (const auto& m : options.extra_elements) constraints.emplace_back(group_element_action(spec, m), true);
  r.constraint_operators = static_cast<int>(constraints.size());

  std::vector<int> columns;
  for (int b = 0; b < spec.dimension(); ++b) {
    bool keep = true;
    if (options.sign_prepass) {
      for (int mask = 1; mask < (1 << n) && keep; ++mask) {
        if (group == Group::SO && std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
        std::vector<int> signs(n);
        for (int i = 0; i < n; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
        keep = diagonal_sign(spec, b, signs) == 1;
      }
    }
    if (keep) columns.push_back(b);
  }
  std::vector<bool> allowed(spec.dimension(), false);
  for (int b : columns) allowed[b] = true;

  Echelon echelon;
  for (const auto& [op, minus_identity] : constraints) {
    // rows of (op - [minus_identity] I) restricted to the allowed columns
    std::map<int, std::map<int, Rational>> rows;
    for (int b : columns) {
      for (const auto& [a, c] : op.columns[b]) rows[a][b] += c;
      if (minus_identity) rows[b][b] -= 1;
    }
    for (auto& [a, row] : rows) {
      std::erase_if(row, [](const auto& kv) { return is_zero(kv.second); });
      if (!row.empty()) echelon.insert(to_int_row(row));
    }
  }

  for (const auto& v : kernel(echelon, columns)) r.basis.push_back(normalized(v));
  r.dimension = static_cast<int>(r.basis.size());

  r.residuals_zero = true;
  for (const auto& v : r.basis) {
    for (const auto& [op, minus_identity] : constraints) {
      if (!difference(op, v, minus_identity).empty()) r.residuals_zero = false;
    }
  }
  return r;
}

namespace {

nlohmann::json vector_json(const TensorSpaceSpec& spec, const SparseVector& v) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, c] : v) out[spec.basis_label(k)] = to_fraction_string(c);
  return out;
}

nlohmann::json fractions_json(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v) out.push_back(to_fraction_string(c));
  return out;
}

}  // namespace

nlohmann::json to_json(const TensorSpaceSpec& spec, const InvariantReport& r) {
  nlohmann::json j;
  j["group"] = to_string(r.group);
  j["dimension_n"] = r.n;
  nlohmann::json summands = nlohmann::json::array();
  for (Summand s : r.summands) summands.push_back(to_string(s));
  j["summands"] = summands;
  j["space_dimension"] = r.space_dimension;
  j["invariant_dimension"] = r.dimension;
  j["constraint_operators"] = r.constraint_operators;
  j["residuals_zero"] = r.residuals_zero;
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& v : r.basis) basis.push_back(vector_json(spec, v));
  j["basis"] = basis;
  return j;
}

int rank_of(const std::vector<SparseVector>& vectors) {
  Echelon e;
  for (const auto& v : vectors) {
    if (!v.empty()) e.insert(to_int_row(v));
  }
  return static_cast<int>(e.pivots().size());
}

std::optional<std::vector<Rational>> coordinates_in_span(const std::vector<SparseVector>& basis, const SparseVector& v) {
  // Unknowns c_t; equations sum_t c_t basis_t[k] = v[k] for every index k.
  // Column t < m is c_t, column m holds -v.
  const int m = static_cast<int>(basis.size());
  std::map<int, std::map<int, Rational>> rows;
  for (int t = 0; t < m; ++t) {
    for (const auto& [k, c] : basis[t]) rows[k][t] += c;
  }
  for (const auto& [k, c] : v) rows[k][m] -= c;
  Echelon e;
  for (auto& [k, row] : rows) {
    std::erase_if(row, [](const auto& kv) { return is_zero(kv.second); });
    if (!row.empty()) e.insert(to_int_row(row));
  }
  if (e.pivots().count(m)) return std::nullopt;
  if (static_cast<int>(e.pivots().size()) != m) throw std::invalid_argument("basis vectors are dependent");
  std::vector<int> cols(m + 1);
  std::iota(cols.begin(), cols.end(), 0);
  // the kernel is one-dimensional with free column m
  const auto ker = kernel(e, cols);
  const SparseVector& k = ker.front();
  std::vector<Rational> coords(m, Rational(0));
  for (int t = 0; t < m; ++t) {
    auto it = k.find(t);
    if (it != k.end()) coords[t] = it->second;
  }
  return coords;
}

QuarticReport quartic_invariants(int n) {
  const TensorSpaceSpec spec(n, {Summand::V4});
  QuarticReport q;
  q.report = invariant_subspace(spec, Group::O);
  q.xi.assign(3, SparseVector{});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      q.xi[0][spec.encode(0, {i, i, j, j})] += 1;
      q.xi[1][spec.encode(0, {i, j, i, j})] += 1;
      q.xi[2][spec.encode(0, {i, j, j, i})] += 1;
    }
  }
  q.xi_rank = rank_of(q.xi);
  q.xi_in_space = true;
  for (const auto& x : q.xi) q.xi_in_space = q.xi_in_space && coordinates_in_span(q.report.basis, x).has_value();
  if (q.xi_in_space && q.xi_rank == 3 && q.report.dimension == 3) {
    std::vector<std::vector<Rational>> coords;
    for (const auto& b : q.report.basis) coords.push_back(*coordinates_in_span(q.xi, b));
    q.basis_in_xi = coords;
  }
  return q;
}

nlohmann::json to_json(const QuarticReport& q) {
  const TensorSpaceSpec spec(q.report.n, {Summand::V4});
  nlohmann::json j = to_json(spec, q.report);
  nlohmann::json xi = nlohmann::json::array();
  for (const auto& x : q.xi) xi.push_back(vector_json(spec, x));
  j["xi"] = xi;
  j["xi_rank"] = q.xi_rank;
  j["xi_in_space"] = q.xi_in_space;
  if (q.basis_in_xi) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& row : *q.basis_in_xi) c.push_back(fractions_json(row));
    j["basis_in_xi"] = c;
  } else {
    j["basis_in_xi"] = nullptr;
  }
  return j;
}

namespace {

/// Image in E of a bilinear-valued 1-form evaluated at a point.
SparseVector image_in_e(const TensorSpaceSpec& spec, const std::vector<std::vector<FormValue>>& entries) {
  const int n = spec.n();
  SparseVector out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const FormValue& f = entries[a][b];
      if (!f.is_zero() && f.degree() != 1) throw DegreeMismatch("expected a 1-form");
      for (const auto& [key, c] : f.terms()) {
        const auto coord = JetCoordinate::from_slot(std::countr_zero(key));
        int index = 0;
        switch (coord.kind()) {
          case CoordKind::Base: index = spec.encode(0, {coord.i(), a, b}); break;
          case CoordKind::Metric: index = spec.encode(1, {spec.pair_number(coord.i(), coord.j()), a, b}); break;
          case CoordKind::MetricJet:
            index = spec.encode(2, {spec.pair_number(coord.i(), coord.j()), coord.k(), a, b});
            break;
        }
        out[index] += c;
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  return out;
}

std::vector<std::vector<FormValue>> values_at(const BilinearValuedForm& f, const JetPoint& z) {
  const int n = f.size();
  std::vector<std::vector<FormValue>> out(n, std::vector<FormValue>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out[a][b] = evaluate_at(f(a, b), z);
  }
  return out;
}

}  // namespace

BasisMatch match_contraction_basis(int n) {
  const TensorSpaceSpec spec = TensorSpaceSpec::module_e(n);
  const GeometryContext ctx = build_context(n);
  const JetPoint z0 = JetPoint::normal(n);
  const InvariantReport inv = invariant_subspace(spec, Group::O);

  BasisMatch m;
  m.n = n;
  m.invariant_dimension = inv.dimension;
  m.theta_image = image_in_e(spec, values_at(ctx.theta, z0));
  m.trace_image = image_in_e(spec, values_at(trace_vartheta_g(ctx), z0));

  // invariance checked directly against every constraint, independently of the basis
  m.images_invariant = true;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      RationalMatrix x(n, std::vector<Rational>(n, Rational(0)));
      x[b][a] = 1;
      x[a][b] = -1;
      const auto op = algebra_action(spec, x);
      m.images_invariant = m.images_invariant && op.apply(m.theta_image).empty() && op.apply(m.trace_image).empty();
    }
  }
  RationalMatrix refl = identity_matrix(n);
  refl[0][0] = -1;
  const auto r = group_element_action(spec, refl);
  m.images_invariant = m.images_invariant && r.apply(m.theta_image) == m.theta_image && r.apply(m.trace_image) == m.trace_image;
  m.images_rank = rank_of({m.theta_image, m.trace_image});

  // sum e_i.e_i (x) e_j (x) e_j and sum_{i,j} e_i.e_j (x) e_i (x) e_j, with e_i.e_j = (e_i e_j + e_j e_i) / 2
  // inside V (x) V, collected on the basis of S^2V (x) V (x) V
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.contraction_a[spec.encode(1, {spec.pair_number(i, i), j, j})] += 1;
      // e_i.e_j (x) (e_i e_j + e_j e_i) / 2, summed over ordered (i, j)
      m.contraction_b[spec.encode(1, {spec.pair_number(i, j), i, j})] += Rational(1, 2);
      m.contraction_b[spec.encode(1, {spec.pair_number(i, j), j, i})] += Rational(1, 2);
    }
  }

  std::string detail;
  const auto tc = coordinates_in_span(inv.basis, m.theta_image);
  const auto gc = coordinates_in_span(inv.basis, m.trace_image);
  const auto ac = coordinates_in_span(inv.basis, m.contraction_a);
  const auto bc = coordinates_in_span(inv.basis, m.contraction_b);
  if (tc) m.theta_coordinates = *tc;
  if (gc) m.trace_coordinates = *gc;
  if (ac) m.contraction_a_coordinates = *ac;
  if (bc) m.contraction_b_coordinates = *bc;
  const bool spans = tc && gc && m.images_rank == inv.dimension;
  const bool contractions = ac && bc && rank_of({m.contraction_a, m.contraction_b}) == inv.dimension &&
                            m.contraction_a == m.trace_image && m.contraction_b == m.theta_image;
  m.ok = inv.residuals_zero && m.images_invariant && spans && contractions;
  if (!inv.residuals_zero) detail += "nonzero residual; ";
  if (!m.images_invariant) detail += "image not invariant; ";
  if (!spans) detail += "images do not span the invariants; ";
  if (!contractions) detail += "contraction vectors disagree with the images; ";
  m.detail = m.ok ? "images of theta and tr(vartheta)(x)g form a basis of the invariants" : detail;
  return m;
}

nlohmann::json to_json(const TensorSpaceSpec& spec, const BasisMatch& m) {
  nlohmann::json j;
  j["dimension_n"] = m.n;
  j["ok"] = m.ok;
  j["invariant_dimension"] = m.invariant_dimension;
  j["images_invariant"] = m.images_invariant;
  j["images_rank"] = m.images_rank;
  j["theta_image"] = vector_json(spec, m.theta_image);
  j["trace_image"] = vector_json(spec, m.trace_image);
  j["theta_coordinates"] = fractions_json(m.theta_coordinates);
  j["trace_coordinates"] = fractions_json(m.trace_coordinates);
  j["contraction_a_coordinates"] = fractions_json(m.contraction_a_coordinates);
  j["contraction_b_coordinates"] = fractions_json(m.contraction_b_coordinates);
  j["detail"] = m.detail;
  return j;
}

}  // namespace jetlc

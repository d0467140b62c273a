#include "jetlc/jet_actions.hpp"

#include "jetlc/serialize.hpp"

namespace jetlc {

namespace {

RationalMatrix identity_matrix(int n) {
  RationalMatrix m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix evaluate(const PolynomialMatrix& m, std::span<const Rational> x) {
  RationalMatrix out(m.size(), std::vector<Rational>(m.empty() ? 0 : m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j](x);
  return out;
}

std::vector<Rational> evaluate(const std::vector<Polynomial>& ps, std::span<const Rational> x) {
  std::vector<Rational> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p(x));
  return out;
}

std::vector<Rational> base_of(const JetPoint& z) {
  std::vector<Rational> x(z.dimension());
  for (int k = 0; k < z.dimension(); ++k) x[k] = z[base_slot(k)];
  return x;
}

int degree_of(const std::vector<Polynomial>& ps) {
  int d = 0;
  for (const auto& p : ps) d = std::max(d, p.degree());
  return d;
}

std::vector<Polynomial> polys_from_json(int n, const nlohmann::json& j, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(std::string("diffeomorphism '") + what + "' must be an array of " + std::to_string(n) +
                     " polynomials");
  std::vector<Polynomial> out;
  for (const auto& p : j) out.push_back(Polynomial::from_json(n, p));
  return out;
}

RationalMatrix matrix_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("expected an n x n matrix of fractions");
  RationalMatrix m;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("expected an n x n matrix of fractions");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>()));
    m.push_back(std::move(r));
  }
  return m;
}

DiffForm base_one_form(const std::vector<Expr>& coeffs) {
  FormAccumulator<Expr> acc(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc.add(SlotMask{1} << base_slot(static_cast<int>(k)), coeffs[k]);
  return acc.finish();
}

}  // namespace

// ---------------------------------------------------------------- PolyDiffeo

PolyDiffeo::PolyDiffeo(std::string name, std::vector<Polynomial> forward, std::vector<Polynomial> inverse,
                       int max_degree)
    : n_(static_cast<int>(forward.size())), name_(std::move(name)), forward_(std::move(forward)),
      inverse_(std::move(inverse)) {
  require_dimension(n_);
  if (static_cast<int>(inverse_.size()) != n_) throw InvalidInverse(name_ + ": forward and inverse arity differ");
  for (auto* ps : {&forward_, &inverse_})
    for (auto& p : *ps) {
      if (p.variables() > n_) throw InvalidInverse(name_ + ": polynomial in too many variables");
      p = p + Polynomial(n_);  // normalize the variable count
    }
  jac_.assign(n_, std::vector<Polynomial>(n_));
  p_.assign(n_, std::vector<Polynomial>(n_));
  h_.assign(n_, PolynomialMatrix(n_, std::vector<Polynomial>(n_)));
  for (int a = 0; a < n_; ++a)
    for (int i = 0; i < n_; ++i) {
      jac_[a][i] = forward_[a].derivative(i);
      Polynomial di = inverse_[a].derivative(i);
      p_[a][i] = di.compose(forward_);
      for (int k = 0; k < n_; ++k) h_[a][i][k] = di.derivative(k).compose(forward_);
    }
  validate(max_degree);
}

void PolyDiffeo::validate(int max_degree) const {
  if (max_degree > 0 && (degree_of(forward_) > max_degree || degree_of(inverse_) > max_degree))
    throw InvalidInverse(name_ + ": degree exceeds " + std::to_string(max_degree));
  Rng rng(0x9e3779b97f4a7c15ULL);
  const RationalMatrix id = identity_matrix(n_);
  for (int t = 0; t < kValidationPoints; ++t) {
    std::vector<Rational> x(n_);
    for (auto& v : x) v = rng.uniform_rational(Rational(-2), Rational(2), 4);
    const std::string where = name_ + ": at sample point " + std::to_string(t) + ", ";
    if (apply_inverse(apply(x)) != x) throw InvalidInverse(where + "inverse o forward is not the identity");
    if (apply(apply_inverse(x)) != x) throw InvalidInverse(where + "forward o inverse is not the identity");
    const RationalMatrix j = jacobian(x), p = evaluate(p_, x);
    for (int a = 0; a < n_; ++a)
      for (int i = 0; i < n_; ++i) {
        Rational s = 0;
        for (int b = 0; b < n_; ++b) s += p[a][b] * j[b][i];
        if (s != id[a][i]) throw InvalidInverse(where + "Jacobians are not inverse to each other");
      }
    // d_i d_k (psi o phi) = 0:
    //   sum_bc H^a_bc J^b_i J^c_k + sum_b P^a_b d_i d_k phi^b = 0
    for (int a = 0; a < n_; ++a)
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
          Rational s = 0;
          for (int b = 0; b < n_; ++b) {
            s += p[a][b] * jac_[b][i].derivative(k)(x);
            for (int c = 0; c < n_; ++c) s += h_[a][b][c](x) * j[b][i] * j[c][k];
          }
          if (!is_zero(s)) throw InvalidInverse(where + "second-derivative chain rule fails");
        }
  }
}

PolyDiffeo PolyDiffeo::identity(int n) { return affine("id", identity_matrix(n)); }

PolyDiffeo PolyDiffeo::affine(std::string name, const RationalMatrix& a, std::vector<Rational> b) {
  const int n = static_cast<int>(a.size());
  require_dimension(n);
  if (b.empty()) b.assign(n, Rational(0));
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("affine: translation arity");
  if (is_zero(determinant(a))) throw InvalidInverse(name + ": singular linear part");
  const RationalMatrix ai = jetlc::inverse(a);
  std::vector<Polynomial> fwd, inv;
  for (int i = 0; i < n; ++i) {
    Polynomial f = Polynomial::constant(n, b[i]), g(n);
    Rational shift = 0;
    for (int j = 0; j < n; ++j) {
      f = f + a[i][j] * Polynomial::variable(n, j);
      g = g + ai[i][j] * Polynomial::variable(n, j);
      shift += ai[i][j] * b[j];
    }
    fwd.push_back(f);
    inv.push_back(g - Polynomial::constant(n, shift));
  }
  return PolyDiffeo(std::move(name), std::move(fwd), std::move(inv));
}

PolyDiffeo PolyDiffeo::shear(int n, int target, int source, const Rational& c) {
  if (target == source || target < 0 || source < 0 || target >= n || source >= n)
    throw std::invalid_argument("shear: target and source must be distinct coordinates");
  std::vector<Polynomial> fwd, inv;
  for (int i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::variable(n, i);
    if (i == target) {
      Polynomial sq = Polynomial::variable(n, source) * Polynomial::variable(n, source);
      fwd.push_back(xi + c * sq);
      inv.push_back(xi - c * sq);
    } else {
      fwd.push_back(xi);
      inv.push_back(xi);
    }
  }
  return PolyDiffeo("shear(x" + std::to_string(target + 1) + " += " + to_fraction_string(c) + " x" +
                        std::to_string(source + 1) + "^2)",
                    std::move(fwd), std::move(inv));
}

PolyDiffeo PolyDiffeo::from_json(int n, const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("diffeomorphism must be a JSON object");
  const std::string name = j.value("name", std::string("phi"));
  if (j.contains("linear")) {
    std::vector<Rational> b;
    if (j.contains("translation"))
      for (const auto& v : j.at("translation")) b.push_back(parse_rational(v.get<std::string>()));
    return affine(name, matrix_from_json(j.at("linear"), n), b);
  }
  if (j.contains("shear")) {
    const auto& s = j.at("shear");
    PolyDiffeo phi = shear(n, s.at("target").get<int>() - 1, s.at("source").get<int>() - 1,
                           parse_rational(s.at("coefficient").get<std::string>()));
    if (!j.contains("name")) return phi;
    return PolyDiffeo(name, phi.forward(), phi.inverse());
  }
  if (!j.contains("forward") || !j.contains("inverse"))
    throw ParseError("diffeomorphism needs 'forward' and 'inverse' (or 'linear', or 'shear')");
  return PolyDiffeo(name, polys_from_json(n, j.at("forward"), "forward"), polys_from_json(n, j.at("inverse"), "inverse"));
}

nlohmann::json PolyDiffeo::to_json() const {
  nlohmann::json f = nlohmann::json::array(), g = nlohmann::json::array();
  for (const auto& p : forward_) f.push_back(p.to_json());
  for (const auto& p : inverse_) g.push_back(p.to_json());
  return {{"name", name_}, {"forward", f}, {"inverse", g}};
}

PolyDiffeo PolyDiffeo::compose(const PolyDiffeo& inner) const {
  if (inner.n_ != n_) throw DimensionMismatch("composing diffeomorphisms of different dimension");
  std::vector<Polynomial> fwd, inv;
  for (const auto& p : forward_) fwd.push_back(p.compose(inner.forward_));
  for (const auto& p : inner.inverse_) inv.push_back(p.compose(inverse_));
  return PolyDiffeo(name_ + " o " + inner.name_, std::move(fwd), std::move(inv), 0);
}

std::vector<Rational> PolyDiffeo::apply(std::span<const Rational> x) const { return evaluate(forward_, x); }

std::vector<Rational> PolyDiffeo::apply_inverse(std::span<const Rational> x) const { return evaluate(inverse_, x); }

RationalMatrix PolyDiffeo::jacobian(std::span<const Rational> x) const { return evaluate(jac_, x); }

RationalMatrix PolyDiffeo::jacobian_derivative(std::span<const Rational> x, int k) const {
  RationalMatrix out(n_, std::vector<Rational>(n_));
  for (int a = 0; a < n_; ++a)
    for (int i = 0; i < n_; ++i) out[a][i] = jac_[a][i].derivative(k)(x);
  return out;
}

// ------------------------------------------------------------- MetricSection

MetricSection::MetricSection(std::string name, PolynomialMatrix entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  const int n = static_cast<int>(entries_.size());
  require_dimension(n);
  for (auto& row : entries_) {
    if (static_cast<int>(row.size()) != n) throw InvalidMetric(name_ + ": metric matrix is not square");
    for (auto& p : row) {
      if (p.variables() > n) throw InvalidMetric(name_ + ": entry in too many variables");
      p = p + Polynomial(n);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(entries_[i][j] == entries_[j][i])) throw InvalidMetric(name_ + ": metric matrix is not symmetric");
}

MetricSection MetricSection::from_json(int n, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("metric must be an object with 'entries'");
  const auto& e = j.at("entries");
  if (!e.is_array() || static_cast<int>(e.size()) != n) throw ParseError("metric 'entries' must be n x n");
  PolynomialMatrix m;
  for (const auto& row : e) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("metric 'entries' must be n x n");
    std::vector<Polynomial> r;
    for (const auto& p : row) r.push_back(Polynomial::from_json(n, p));
    m.push_back(std::move(r));
  }
  return MetricSection(j.value("name", std::string("g")), std::move(m));
}

nlohmann::json MetricSection::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : entries_) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& p : row) r.push_back(p.to_json());
    rows.push_back(r);
  }
  return {{"name", name_}, {"entries", rows}};
}

RationalMatrix MetricSection::value(std::span<const Rational> x) const { return evaluate(entries_, x); }

bool MetricSection::positive_definite_at(std::span<const Rational> x) const {
  return leading_minors_positive(value(x));
}

void MetricSection::validate(const std::vector<std::vector<Rational>>& points) const {
  for (const auto& x : points)
    if (!positive_definite_at(x)) throw InvalidMetric(name_ + ": not positive definite at a declared sample point");
}

std::vector<std::vector<Rational>> MetricSection::sample_points(int count, std::uint64_t seed) const {
  const int n = dimension();
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> origin(n, Rational(0));
  if (count > 0 && positive_definite_at(origin)) out.push_back(origin);
  Rng rng(seed);
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * std::max(count, 1)) throw InvalidMetric(name_ + ": cannot find positive definite points");
    std::vector<Rational> x(n);
    for (auto& v : x) v = rng.uniform_rational(Rational(-1), Rational(1), 4);
    if (positive_definite_at(x)) out.push_back(std::move(x));
  }
  return out;
}

JetPoint MetricSection::jet_at(std::span<const Rational> x) const {
  const int n = dimension();
  JetPoint z = JetPoint::normal(n);
  for (int k = 0; k < n; ++k) z.set(JetCoordinate::base(k), x[k]);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      z.set(JetCoordinate::metric(i, j), entries_[i][j](x));
      for (int k = 0; k < n; ++k) z.set(JetCoordinate::metric_jet(i, j, k), entries_[i][j].derivative(k)(x));
    }
  if (!z.positive_definite()) throw SingularMetric(name_ + ": metric is not positive definite at the requested point");
  return z;
}

TangentVector MetricSection::lift(std::span<const Rational> x, int k) const {
  const int n = dimension();
  TangentVector v = TangentVector::along(JetCoordinate::base(k));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Polynomial dk = entries_[i][j].derivative(k);
      Rational c = dk(x);
      if (!is_zero(c)) v.components[metric_slot(i, j)] = c;
      for (int l = 0; l < n; ++l) {
        Rational cl = dk.derivative(l)(x);
        if (!is_zero(cl)) v.components[metric_jet_slot(i, j, l)] = cl;
      }
    }
  return v;
}

std::vector<TangentVector> MetricSection::lifts(std::span<const Rational> x) const {
  std::vector<TangentVector> out;
  for (int k = 0; k < dimension(); ++k) out.push_back(lift(x, k));
  return out;
}

// -------------------------------------------------------------- ProlongedMap

ProlongedMap::ProlongedMap(int n, std::vector<Expr> images) : n_(n), images_(std::move(images)) {
  require_dimension(n);
  if (static_cast<int>(images_.size()) != kSlotCount) throw std::invalid_argument("ProlongedMap: one image per slot");
  partials_.assign(kSlotCount, std::vector<Expr>(kSlotCount));
  Differentiator d;
  for (int r : active_slots(n)) {
    SlotMask deps = images_[r].deps();
    while (deps) {
      const int c = std::countr_zero(deps);
      deps &= deps - 1;
      partials_[r][c] = d(images_[r], c);
    }
  }
}

JetPoint ProlongedMap::apply(const JetPoint& z) const {
  Evaluator ev(z);
  JetPoint out = JetPoint::normal(n_);
  for (int s : active_slots(n_)) out.set(JetCoordinate::from_slot(s), ev(images_[s]));
  return out;
}

RationalMatrix ProlongedMap::jacobian(const JetPoint& z) const {
  Evaluator ev(z);
  RationalMatrix m(kSlotCount, std::vector<Rational>(kSlotCount));
  for (int r : active_slots(n_))
    for (int c : active_slots(n_))
      if (!partials_[r][c].is_zero()) m[r][c] = ev(partials_[r][c]);
  return m;
}

TangentVector ProlongedMap::push_forward(const RationalMatrix& jacobian, const TangentVector& v) const {
  TangentVector out;
  for (int r : active_slots(n_)) {
    Rational s = 0;
    for (const auto& [c, vc] : v.components) s += jacobian[r][c] * vc;
    if (!is_zero(s)) out.components[r] = s;
  }
  return out;
}

FormValue ProlongedMap::pull_back(const RationalMatrix& jacobian, const FormValue& at_image) const {
  std::map<int, FormValue> covector;
  auto image = [&](int r) -> const FormValue& {
    auto it = covector.find(r);
    if (it != covector.end()) return it->second;
    FormValue::Terms terms;
    for (int c : active_slots(n_))
      if (!is_zero(jacobian[r][c])) terms.emplace(SlotMask{1} << c, jacobian[r][c]);
    return covector.emplace(r, FormValue::from_terms(1, std::move(terms))).first->second;
  };
  FormAccumulator<Rational> acc(at_image.degree());
  for (const auto& [key, coeff] : at_image.terms()) {
    FormValue piece = FormValue::scalar(coeff);
    for (SlotMask k = key; k && !piece.is_zero(); k &= k - 1) piece = wedge(piece, image(std::countr_zero(k)));
    if (!piece.is_zero()) acc.add(piece);
  }
  return acc.finish();
}

ProlongedMap prolong_diffeo(const PolyDiffeo& phi) {
  const int n = phi.dimension();
  std::vector<Expr> images(kSlotCount);
  for (int s = 0; s < kSlotCount; ++s) images[s] = Expr::slot(s);
  std::vector<std::vector<Expr>> p(n, std::vector<Expr>(n));
  std::vector<std::vector<std::vector<Expr>>> h(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      p[a][i] = phi.inverse_jacobian_at_image()[a][i].to_expr();
      for (int k = 0; k < n; ++k) h[a][i][k] = phi.inverse_hessian_at_image()[a][i][k].to_expr();
    }
  for (int a = 0; a < n; ++a) images[base_slot(a)] = phi.forward()[a].to_expr();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<Expr> terms;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) terms.push_back(Expr::y(a, b) * p[a][i] * p[b][j]);
      images[metric_slot(i, j)] = sum(std::move(terms));
      for (int k = 0; k < n; ++k) {
        std::vector<Expr> jt;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) jt.push_back(Expr::y_jet(a, b, c) * p[c][k] * p[a][i] * p[b][j]);
            jt.push_back(Expr::y(a, b) * (p[b][j] * h[a][i][k] + p[a][i] * h[b][j][k]));
          }
        images[metric_jet_slot(i, j, k)] = sum(std::move(jt));
      }
    }
  return ProlongedMap(n, std::move(images));
}

ProlongedMap scaling_substitution(int n, const Rational& s) {
  if (sgn(s) <= 0) throw NonpositiveScale();
  std::vector<Expr> images(kSlotCount);
  for (int slot = 0; slot < kSlotCount; ++slot) {
    const auto c = JetCoordinate::from_slot(slot);
    images[slot] = c.kind() == CoordKind::Base ? Expr::slot(slot) : Expr(s) * Expr::slot(slot);
  }
  return ProlongedMap(n, std::move(images));
}

DiffForm pullback_form(const ProlongedMap& map, const DiffForm& a) {
  std::vector<std::optional<Expr>> repl(kSlotCount);
  for (int s : active_slots(map.dimension())) repl[s] = map.image(s);
  Substituter sub(std::move(repl));
  Differentiator d;
  std::map<int, DiffForm> covector;
  auto image = [&](int r) -> const DiffForm& {
    auto it = covector.find(r);
    if (it != covector.end()) return it->second;
    return covector.emplace(r, dext(DiffForm::scalar(map.image(r)), d)).first->second;
  };
  FormAccumulator<Expr> acc(a.degree());
  for (const auto& [key, coeff] : a.terms()) {
    DiffForm piece = DiffForm::scalar(sub(coeff));
    for (SlotMask k = key; k && !piece.is_zero(); k &= k - 1) piece = wedge(piece, image(std::countr_zero(k)));
    if (!piece.is_zero()) acc.add(piece);
  }
  return acc.finish();
}

MatrixForm pullback_form(const ProlongedMap& map, const MatrixForm& a) {
  return a.map([&](const DiffForm& f) { return pullback_form(map, f); });
}

DiffForm pullback_form(const PolyDiffeo& phi, const DiffForm& a) { return pullback_form(prolong_diffeo(phi), a); }

MatrixForm gauge_pullback_connection(const PolyDiffeo& phi, const ProlongedMap& map, const MatrixForm& conn) {
  const int n = phi.dimension();
  ScalarMatrix<Expr> j(n, std::vector<Expr>(n)), jinv(n, std::vector<Expr>(n));
  MatrixForm dj(n, 1);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      j[a][i] = phi.jacobian_polynomials()[a][i].to_expr();
      jinv[a][i] = phi.inverse_jacobian_at_image()[a][i].to_expr();
      std::vector<Expr> coeffs;
      for (int k = 0; k < n; ++k) coeffs.push_back(phi.jacobian_polynomials()[a][i].derivative(k).to_expr());
      dj.set(a, i, base_one_form(coeffs));
    }
  return left_multiply(jinv, right_multiply(pullback_form(map, conn), j)) + left_multiply(jinv, dj);
}

MatrixForm gauge_pullback_connection(const PolyDiffeo& phi, const MatrixForm& conn) {
  return gauge_pullback_connection(phi, prolong_diffeo(phi), conn);
}

MatrixFormValue gauge_pullback_connection_at(const PolyDiffeo& phi, const ProlongedMap& map, const MatrixForm& conn,
                                             const JetPoint& z) {
  const int n = phi.dimension();
  const std::vector<Rational> x = base_of(z);
  const RationalMatrix dphi = map.jacobian(z);
  const MatrixFormValue at_image = evaluate_at(conn, map.apply(z));
  const MatrixFormValue pulled = at_image.map([&](const FormValue& f) { return map.pull_back(dphi, f); });
  const RationalMatrix j = phi.jacobian(x), p = evaluate(phi.inverse_jacobian_at_image(), x);
  std::vector<RationalMatrix> dj;
  for (int k = 0; k < n; ++k) dj.push_back(phi.jacobian_derivative(x, k));

  MatrixFormValue out(n, 1);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      FormAccumulator<Rational> acc(1);
      for (int a = 0; a < n; ++a) {
        if (is_zero(p[i][a])) continue;
        for (int b = 0; b < n; ++b)
          if (!is_zero(j[b][l])) acc.add(scale(Rational(p[i][a] * j[b][l]), pulled(a, b)));
        for (int k = 0; k < n; ++k)
          if (!is_zero(dj[k][a][l])) acc.add(SlotMask{1} << base_slot(k), p[i][a] * dj[k][a][l]);
      }
      out.set(i, l, acc.finish());
    }
  return out;
}

// ------------------------------------------------------- vector field lift

std::vector<Expr> lift_vector_field(const VectorFieldPoly& x) {
  const int n = x.dimension();
  require_dimension(n);
  std::vector<Expr> out(kSlotCount);
  std::vector<std::vector<Expr>> dx(n, std::vector<Expr>(n));  // dx[k][i] = d_i X^k
  for (int k = 0; k < n; ++k) {
    const Polynomial xk = x.components[k] + Polynomial(n);
    out[base_slot(k)] = xk.to_expr();
    for (int i = 0; i < n; ++i) dx[k][i] = xk.derivative(i).to_expr();
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<Expr> terms;
      for (int k = 0; k < n; ++k) {
        terms.push_back(dx[k][i] * Expr::y(k, j));
        terms.push_back(dx[k][j] * Expr::y(k, i));
      }
      out[metric_slot(i, j)] = -sum(std::move(terms));
    }
  return out;
}

CheckOutcome check_lift_against_flow(const RationalMatrix& a, const JetPoint& z) {
  const int n = z.dimension();
  VectorFieldPoly field;
  for (int k = 0; k < n; ++k) {
    Polynomial c(n);
    for (int j = 0; j < n; ++j) c = c + a[k][j] * Polynomial::variable(n, j);
    field.components.push_back(c);
  }
  const std::vector<Expr> lifted = lift_vector_field(field);
  Evaluator ev(z);

  // Along u -> phi_u = I + uA, det(phi_u)^2 * (y o phi_u) is a polynomial in u
  // of degree <= 2n; interpolate it exactly and read off the derivative at 0.
  const int nodes = 2 * n + 1;
  RationalMatrix vandermonde;
  std::vector<std::vector<Rational>> samples;  // per node: value of each active slot (scaled)
  Rational trace = 0;
  for (int i = 0; i < n; ++i) trace += a[i][i];
  for (int m = 0, attempt = 0; m < nodes; ++attempt) {
    Rational u(attempt, 8);
    u.canonicalize();
    RationalMatrix mat = identity_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mat[i][j] += u * a[i][j];
    const Rational det = determinant(mat);
    if (is_zero(det)) continue;
    const JetPoint image = prolong_diffeo(PolyDiffeo::affine("flow", mat)).apply(z);
    std::vector<Rational> row(nodes), vals;
    Rational pw = 1;
    for (int c = 0; c < nodes; ++c, pw *= u) row[c] = pw;
    for (int s : active_slots(n)) {
      const auto kind = JetCoordinate::from_slot(s).kind();
      vals.push_back(kind == CoordKind::Metric ? det * det * image[s] : image[s]);
    }
    vandermonde.push_back(row);
    samples.push_back(vals);
    ++m;
  }
  const RationalMatrix vinv = jetlc::inverse(vandermonde);

  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = 1;
  const auto& slots = active_slots(n);
  for (std::size_t t = 0; t < slots.size(); ++t) {
    const auto coord = JetCoordinate::from_slot(slots[t]);
    if (coord.kind() == CoordKind::MetricJet) continue;  // the lift has no jet components
    Rational c0 = 0, c1 = 0;  // constant and linear interpolation coefficients
    for (int m = 0; m < nodes; ++m) {
      c0 += vinv[0][m] * samples[m][t];
      c1 += vinv[1][m] * samples[m][t];
    }
    // d/du [N / det^2] at 0 with det(0) = 1, d det^2/du (0) = 2 tr A
    const Rational derivative = coord.kind() == CoordKind::Metric ? c1 - 2 * trace * c0 : c1;
    const Rational expected = lifted[slots[t]].is_zero() ? Rational(0) : ev(lifted[slots[t]]);
    if (derivative != expected) {
      out.passed = false;
      out.detail = "component " + coord.name() + ": flow derivative " + to_fraction_string(derivative) +
                   ", lift " + to_fraction_string(expected);
      out.witness = {{"point", to_json(z)}, {"generator", to_json(a)}, {"coordinate", coord.name()}};
      return out;
    }
  }
  return out;
}

// ------------------------------------------------------ holonomic sections

DiffForm holonomic_pullback(const MetricSection& g, const DiffForm& a) {
  const int n = g.dimension();
  std::vector<std::optional<Expr>> repl(kSlotCount);
  std::map<int, DiffForm> covector;
  for (int k = 0; k < n; ++k) covector.emplace(base_slot(k), DiffForm::basis(base_slot(k)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      repl[metric_slot(i, j)] = g(i, j).to_expr();
      std::vector<Expr> dg;
      for (int k = 0; k < n; ++k) {
        const Polynomial dk = g(i, j).derivative(k);
        dg.push_back(dk.to_expr());
        repl[metric_jet_slot(i, j, k)] = dk.to_expr();
        std::vector<Expr> ddg;
        for (int l = 0; l < n; ++l) ddg.push_back(dk.derivative(l).to_expr());
        covector.emplace(metric_jet_slot(i, j, k), base_one_form(ddg));
      }
      covector.emplace(metric_slot(i, j), base_one_form(dg));
    }
  Substituter sub(std::move(repl));
  FormAccumulator<Expr> acc(a.degree());
  for (const auto& [key, coeff] : a.terms()) {
    DiffForm piece = DiffForm::scalar(sub(coeff));
    for (SlotMask k = key; k && !piece.is_zero(); k &= k - 1) piece = wedge(piece, covector.at(std::countr_zero(k)));
    if (!piece.is_zero()) acc.add(piece);
  }
  // Coefficients are functions of x alone; drop the polynomial ones that cancel.
  DiffForm raw = acc.finish();
  DiffForm::Terms kept;
  for (const auto& [key, c] : raw.terms()) {
    auto poly = expand_polynomial(c);
    if (!poly || !poly->empty()) kept.emplace(key, c);
  }
  return DiffForm::from_terms(raw.degree(), std::move(kept));
}

MatrixForm holonomic_pullback(const MetricSection& g, const MatrixForm& a) {
  return a.map([&](const DiffForm& f) { return holonomic_pullback(g, f); });
}

FormValue holonomic_pullback_at(const MetricSection& g, const FormValue& at_jet, std::span<const Rational> x) {
  const auto vs = g.lifts(x);
  return restrict_to(at_jet, vs);
}

MatrixFormValue holonomic_pullback_at(const MetricSection& g, const MatrixFormValue& at_jet,
                                      std::span<const Rational> x) {
  const auto vs = g.lifts(x);
  return restrict_to(at_jet, vs);
}

// --------------------------------------------------------- classical oracle

namespace {

struct ClassicalData {
  int n;
  RationalMatrix g, ginv;
  std::vector<RationalMatrix> dg;                // dg[m][a][b] = d_m g_ab
  std::vector<std::vector<RationalMatrix>> ddg;  // ddg[m][k][a][b]
};

ClassicalData classical_data(const MetricSection& g, std::span<const Rational> x) {
  const int n = g.dimension();
  ClassicalData d{n, g.value(x), {}, {}, {}};
  if (!leading_minors_positive(d.g)) throw SingularMetric(g.name() + ": metric is singular or not positive definite");
  d.ginv = inverse(d.g);
  d.dg.assign(n, RationalMatrix(n, std::vector<Rational>(n)));
  d.ddg.assign(n, std::vector<RationalMatrix>(n, RationalMatrix(n, std::vector<Rational>(n))));
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Polynomial dm = g(a, b).derivative(m);
        d.dg[m][a][b] = dm(x);
        for (int k = 0; k < n; ++k) d.ddg[m][k][a][b] = dm.derivative(k)(x);
      }
  return d;
}

// Gamma^i_jk and its derivatives d_m Gamma^i_jk from the textbook formula.
void christoffel_and_derivative(const ClassicalData& d, std::vector<Rational>& gamma, std::vector<Rational>& dgamma) {
  const int n = d.n;
  auto s = [&](int a, int j, int k) -> Rational { return d.dg[k][a][j] + d.dg[j][a][k] - d.dg[a][j][k]; };
  auto ds = [&](int m, int a, int j, int k) -> Rational { return d.ddg[m][k][a][j] + d.ddg[m][j][a][k] - d.ddg[m][a][j][k]; };
  // d_m g^{-1} = -g^{-1} (d_m g) g^{-1}
  std::vector<RationalMatrix> dginv(n, RationalMatrix(n, std::vector<Rational>(n)));
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        Rational t = 0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) t -= d.ginv[i][a] * d.dg[m][a][b] * d.ginv[b][l];
        dginv[m][i][l] = t;
      }
  gamma.assign(n * n * n, Rational(0));
  dgamma.assign(n * n * n * n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational g = 0;
        for (int a = 0; a < n; ++a) g += d.ginv[i][a] * s(a, j, k);
        gamma[(i * n + j) * n + k] = g / 2;
        for (int m = 0; m < n; ++m) {
          Rational t = 0;
          for (int a = 0; a < n; ++a) t += dginv[m][i][a] * s(a, j, k) + d.ginv[i][a] * ds(m, a, j, k);
          dgamma[((m * n + i) * n + j) * n + k] = t / 2;
        }
      }
}

}  // namespace

Christoffels classical_levi_civita(const MetricSection& g, std::span<const Rational> x) {
  const ClassicalData d = classical_data(g, x);
  Christoffels out{d.n, {}};
  std::vector<Rational> dgamma;
  christoffel_and_derivative(d, out.values, dgamma);
  return out;
}

MatrixFormValue classical_connection_forms(const MetricSection& g, std::span<const Rational> x) {
  const Christoffels c = classical_levi_civita(g, x);
  MatrixFormValue out(c.n, 1);
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      FormValue::Terms terms;
      for (int k = 0; k < c.n; ++k) terms.emplace(SlotMask{1} << base_slot(k), c(i, j, k));
      out.set(i, j, FormValue::from_terms(1, std::move(terms)));
    }
  return out;
}

MatrixFormValue classical_curvature(const MetricSection& g, std::span<const Rational> x) {
  const ClassicalData d = classical_data(g, x);
  const int n = d.n;
  std::vector<Rational> gamma, dgamma;
  christoffel_and_derivative(d, gamma, dgamma);
  auto G = [&](int i, int j, int k) { return gamma[(i * n + j) * n + k]; };
  auto dG = [&](int m, int i, int j, int k) { return dgamma[((m * n + i) * n + j) * n + k]; };
  MatrixFormValue out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FormValue::Terms terms;
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          // R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj
          Rational r = dG(k, i, l, j) - dG(l, i, k, j);
          for (int m = 0; m < n; ++m) r += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
          terms.emplace((SlotMask{1} << base_slot(k)) | (SlotMask{1} << base_slot(l)), r);
        }
      out.set(i, j, FormValue::from_terms(2, std::move(terms)));
    }
  return out;
}

}  // namespace jetlc

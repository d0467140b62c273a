#include "jetlc/verify.hpp"

#include <fstream>
#include <sstream>

#include "jetlc/charforms.hpp"
#include "jetlc/geometry.hpp"
#include "jetlc/health.hpp"
#include "jetlc/invariant_theory.hpp"
#include "jetlc/serialize.hpp"

namespace jetlc {

// ------------------------------------------------------------------ config

namespace {

Rational rational_field(const nlohmann::json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ConfigError(what + " must be a fraction string");
}

int positive_int(const nlohmann::json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long>() < 1) throw ConfigError(std::string("'") + key + "' must be a positive integer");
  return static_cast<int>(v.get<long>());
}

bool bool_field(const nlohmann::json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string("'") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

int dimension_field(const nlohmann::json& j, const std::string& what) {
  if (!j.contains("dimension") || !j.at("dimension").is_number_integer())
    throw ConfigError(what + " needs an integer 'dimension'");
  const int n = static_cast<int>(j.at("dimension").get<long>());
  if (n < 2 || n > 4) throw ConfigError(what + ": dimension must be 2, 3 or 4");
  return n;
}

const PolyDiffeo& find_diffeo(const std::vector<PolyDiffeo>& list, const std::string& name, int n) {
  for (const auto& d : list)
    if (d.name() == name && d.dimension() == n) return d;
  throw ConfigError("composition refers to unknown diffeomorphism '" + name + "'");
}

SuiteConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{"dimensions", "seed",           "trials",      "mode",
                                              "samples",    "metrics",        "diffeomorphisms", "scales",
                                              "uniqueness", "invariants",     "health",      "out",
                                              "test_hooks", "description"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config field '" + key + "'");

  SuiteConfig c;
  if (j.contains("dimensions")) {
    const auto& d = j.at("dimensions");
    if (!d.is_array() || d.empty()) throw ConfigError("'dimensions' must be a non-empty array");
    c.dimensions.clear();
    for (const auto& v : d) {
      if (!v.is_number_integer()) throw ConfigError("'dimensions' entries must be integers");
      const int n = static_cast<int>(v.get<long>());
      if (n < 2 || n > 4) throw ConfigError("dimensions must be 2, 3 or 4");
      if (std::find(c.dimensions.begin(), c.dimensions.end(), n) == c.dimensions.end()) c.dimensions.push_back(n);
    }
    std::sort(c.dimensions.begin(), c.dimensions.end());
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  c.trials = positive_int(j, "trials", c.trials);
  if (j.contains("mode")) {
    const auto& m = j.at("mode");
    if (m == "auto")
      c.mode = CheckMode::Auto;
    else if (m == "sampled")
      c.mode = CheckMode::Sampled;
    else
      throw ConfigError("'mode' must be \"auto\" or \"sampled\"");
  }
  if (j.contains("samples")) {
    const auto& s = j.at("samples");
    if (!s.is_object()) throw ConfigError("'samples' must be an object");
    for (const auto& [key, value] : s.items()) {
      static const std::vector<std::string> names{"identity",      "metric_compatibility", "invariance", "oracle_points",
                                                  "euler_flip",    "high_degree",          "health"};
      if (std::find(names.begin(), names.end(), key) == names.end()) throw ConfigError("unknown samples field '" + key + "'");
    }
    c.samples.identity = positive_int(s, "identity", c.samples.identity);
    c.samples.metric_compatibility = positive_int(s, "metric_compatibility", c.samples.metric_compatibility);
    c.samples.invariance = positive_int(s, "invariance", c.samples.invariance);
    c.samples.oracle_points = positive_int(s, "oracle_points", c.samples.oracle_points);
    c.samples.euler_flip = positive_int(s, "euler_flip", c.samples.euler_flip);
    c.samples.high_degree = positive_int(s, "high_degree", c.samples.high_degree);
    c.samples.health = positive_int(s, "health", c.samples.health);
  }
  if (j.contains("metrics")) {
    if (!j.at("metrics").is_array()) throw ConfigError("'metrics' must be an array");
    for (const auto& m : j.at("metrics")) {
      const int n = dimension_field(m, "metric");
      MetricSection g = MetricSection::from_json(n, m);
      g.sample_points(1, 0);  // throws InvalidMetric when no positive definite point exists
      c.metrics.push_back(std::move(g));
    }
  }
  if (j.contains("diffeomorphisms")) {
    if (!j.at("diffeomorphisms").is_array()) throw ConfigError("'diffeomorphisms' must be an array");
    for (const auto& d : j.at("diffeomorphisms")) {
      const int n = dimension_field(d, "diffeomorphism");
      if (d.is_object() && d.contains("compose")) {
        const auto& parts = d.at("compose");
        if (!parts.is_array() || parts.size() < 2) throw ConfigError("'compose' needs at least two names");
        // compose: [f, g, h] means f o g o h
        PolyDiffeo acc = find_diffeo(c.diffeomorphisms, parts.back().get<std::string>(), n);
        for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
          acc = find_diffeo(c.diffeomorphisms, it->get<std::string>(), n).compose(acc);
        if (d.contains("name")) {
          acc = PolyDiffeo(d.at("name").get<std::string>(), acc.forward(), acc.inverse(), 0);
        }
        c.diffeomorphisms.push_back(std::move(acc));
      } else {
        c.diffeomorphisms.push_back(PolyDiffeo::from_json(n, d));
      }
    }
  }
  if (j.contains("scales")) {
    if (!j.at("scales").is_array()) throw ConfigError("'scales' must be an array");
    c.scales.clear();
    for (const auto& s : j.at("scales")) {
      Rational v = rational_field(s, "scale");
      if (sgn(v) <= 0) throw ConfigError("scales must be positive");
      c.scales.push_back(v);
    }
  }
  if (j.contains("uniqueness")) {
    if (!j.at("uniqueness").is_array()) throw ConfigError("'uniqueness' must be an array of [lambda, mu]");
    c.uniqueness.clear();
    for (const auto& p : j.at("uniqueness")) {
      if (!p.is_array() || p.size() != 2) throw ConfigError("'uniqueness' entries must be [lambda, mu]");
      c.uniqueness.emplace_back(rational_field(p[0], "lambda"), rational_field(p[1], "mu"));
    }
  }
  c.invariants = bool_field(j, "invariants", c.invariants);
  c.health = bool_field(j, "health", c.health);
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw ConfigError("'out' must be a path string");
    c.out = j.at("out").get<std::string>();
  }
  if (j.contains("test_hooks")) {
    const auto& h = j.at("test_hooks");
    if (!h.is_object()) throw ConfigError("'test_hooks' must be an object");
    c.corrupt_christoffel_sign = bool_field(h, "corrupt_christoffel_sign", false);
  }
  return c;
}

}  // namespace

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  try {
    return parse_config(j);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    // ParseError, json type errors, InvalidInverse, InvalidMetric, ...
    throw ConfigError(e.what());
  }
}

SuiteConfig SuiteConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

nlohmann::json SuiteConfig::to_json() const {
  nlohmann::json j;
  j["dimensions"] = dimensions;
  j["seed"] = seed;
  j["trials"] = trials;
  j["mode"] = mode == CheckMode::Sampled ? "sampled" : "auto";
  j["samples"] = {{"identity", samples.identity},
                  {"metric_compatibility", samples.metric_compatibility},
                  {"invariance", samples.invariance},
                  {"oracle_points", samples.oracle_points},
                  {"euler_flip", samples.euler_flip},
                  {"high_degree", samples.high_degree},
                  {"health", samples.health}};
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : metrics) {
    auto mj = m.to_json();
    mj["dimension"] = m.dimension();
    ms.push_back(mj);
  }
  j["metrics"] = ms;
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : diffeomorphisms) {
    auto dj = d.to_json();
    dj["dimension"] = d.dimension();
    ds.push_back(dj);
  }
  j["diffeomorphisms"] = ds;
  nlohmann::json sc = nlohmann::json::array();
  for (const auto& s : scales) sc.push_back(to_fraction_string(s));
  j["scales"] = sc;
  nlohmann::json un = nlohmann::json::array();
  for (const auto& [l, m] : uniqueness) un.push_back({to_fraction_string(l), to_fraction_string(m)});
  j["uniqueness"] = un;
  j["invariants"] = invariants;
  j["health"] = health;
  j["test_hooks"] = {{"corrupt_christoffel_sign", corrupt_christoffel_sign}};
  return j;
}

// ------------------------------------------------------------------ suites

namespace {

class Runner {
 public:
  Runner(const SuiteConfig& config, const std::function<void(const CheckRecord&)>& progress)
      : config_(config), progress_(progress) {}

  CheckSettings settings(int samples) const {
    CheckSettings s;
    s.mode = config_.mode;
    s.seed = config_.seed;
    s.trials = config_.trials;
    s.samples = samples;
    return s;
  }

  void record(const std::string& suite, const std::string& name, int n, const CheckOutcome& o) {
    CheckRecord r;
    r.suite = suite;
    r.name = name;
    r.dimension = n;
    r.mode = o.mode;
    r.seed = config_.seed;
    r.cases = o.cases;
    r.passed = o.passed;
    r.detail = o.detail;
    r.witness = o.witness;
    push(std::move(r));
  }

  /// Runs f and records its outcome; exceptions become failed records.
  template <class F>
  void run(const std::string& suite, const std::string& name, int n, F&& f) {
    CheckOutcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.passed = false;
      o.mode = CheckMode::Sampled;
      o.detail = std::string("exception: ") + e.what();
    }
    record(suite, name, n, o);
  }

  VerifyReport finish() {
    report_.config = config_.to_json();
    return std::move(report_);
  }

 private:
  void push(CheckRecord r) {
    if (progress_) progress_(r);
    report_.checks.push_back(std::move(r));
  }

  const SuiteConfig& config_;
  const std::function<void(const CheckRecord&)>& progress_;
  VerifyReport report_;
};

CheckOutcome outcome(bool passed, CheckMode mode, int cases, std::string detail, nlohmann::json witness = nullptr) {
  CheckOutcome o;
  o.passed = passed;
  o.mode = mode;
  o.cases = cases;
  o.detail = std::move(detail);
  o.witness = std::move(witness);
  return o;
}

std::string frac(const Rational& q) { return to_fraction_string(q); }

PolynomialMatrix warped_entries() {
  const Polynomial one = Polynomial::constant(2, 1);
  const Polynomial x1 = Polynomial::variable(2, 0);
  return {{one, Polynomial(2)}, {Polynomial(2), one + x1 * x1}};
}

RationalMatrix reflection(int n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  m[0][0] = -1;
  return m;
}

void geometry_suite(Runner& run, const GeometryContext& ctx, const SuiteConfig& c) {
  const int n = ctx.n;
  const std::string suite = "geometry";
  run.run(suite, "nabla_g(omega) = 0", n,
          [&] { return check_metric_compatibility(ctx, run.settings(c.samples.metric_compatibility)); });
  run.run(suite, "nabla_g(omega_hor) = theta", n,
          [&] { return check_horizontal_nabla(ctx, run.settings(c.samples.identity)); });
  run.run(suite, "christoffel jets: y_ij,k = y_aj Gamma^a_ki + y_ai Gamma^a_kj", n,
          [&] { return check_christoffel_jets(ctx, run.settings(c.samples.identity)); });
  run.run(suite, "christoffel symmetry", n,
          [&] { return check_christoffel_symmetry(ctx, run.settings(c.samples.identity)); });
  run.run(suite, "nabla_g(omega_hor + alpha) = theta - 2 g sym(alpha), alpha = vartheta/2", n, [&] {
    return verify_lemasym(ctx, scale(Expr(Rational(1, 2)), ctx.vartheta), run.settings(c.samples.identity));
  });
  run.run(suite, "nabla_g(omega_hor + alpha) = theta - 2 g sym(alpha), random alpha", n, [&] {
    Rng rng(c.seed);
    return verify_lemasym(ctx, random_connection_perturbation(n, rng), run.settings(c.samples.identity));
  });
  for (const auto& [lambda, mu] : c.uniqueness) {
    run.run(suite, "uniqueness (lambda, mu) = (" + frac(lambda) + ", " + frac(mu) + ")", n, [&] {
      const auto r = verify_uniqueness_family(ctx, lambda, mu, run.settings(c.samples.identity));
      CheckOutcome o = r.check;
      o.witness = r.witness;
      const bool trivial = is_zero(lambda) && is_zero(mu);
      if (r.nonzero == trivial) {
        o.passed = false;
        o.detail += trivial ? " (expected zero)" : " (no nonzero witness)";
      }
      return o;
    });
  }
}

void curvature_suite(Runner& run, const GeometryContext& ctx, const SuiteConfig& c) {
  const int n = ctx.n;
  const std::string suite = "curvature";
  run.run(suite, "Omega = antisym(Omega_hor) - 1/4 vartheta^vartheta, Omega_hor cross-check", n,
          [&] { return verify_curvature_identity(ctx, run.settings(c.samples.identity)); });
  run.run(suite, "coefficient -1/2 in the curvature identity is refuted", n,
          [&] { return refute_curvature_coefficient(ctx, Rational(-1, 2)); });
}

void invariance_suite(Runner& run, const GeometryContext& ctx, const SuiteConfig& c) {
  const int n = ctx.n;
  const std::string suite = "invariance";
  for (const auto& phi : c.diffeomorphisms) {
    if (phi.dimension() != n) continue;
    run.run(suite, "gauge pullback of omega [" + phi.name() + "]", n,
            [&] { return check_gauge_invariance(phi, ctx.omega_univ, run.settings(c.samples.invariance)); });
    run.run(suite, "gauge pullback of omega_hor [" + phi.name() + "]", n,
            [&] { return check_gauge_invariance(phi, ctx.omega_hor, run.settings(c.samples.invariance)); });
    for (int k = 1; 2 * k <= n; ++k)
      run.run(suite, "pullback of p_" + std::to_string(k) + " [" + phi.name() + "]", n,
              [&] { return check_pontryagin_invariance(ctx, phi, k, run.settings(c.samples.invariance)); });
    if (n % 2 == 0) {
      const std::vector<Rational> origin(n, Rational(0));
      const bool reverses = sgn(determinant(phi.jacobian(origin))) < 0;
      run.run(suite, std::string("Euler data ") + (reverses ? "flips" : "is preserved") + " [" + phi.name() + "]", n,
              [&] { return check_euler_sign_flip(ctx, phi, reverses, run.settings(c.samples.invariance)); });
    }
  }
  for (const auto& s : c.scales)
    run.run(suite, "scaling by " + frac(s) + " fixes omega, Omega, p_1 and scales theta", n,
            [&] { return check_scaling_invariance(ctx, s, run.settings(c.samples.invariance)); });
  for (std::size_t a = 0; a + 1 < c.scales.size(); ++a)
    run.run(suite, "scaling group law " + frac(c.scales[a]) + " * " + frac(c.scales[a + 1]), n, [&] {
      return check_scaling_group_law(n, c.scales[a], c.scales[a + 1], run.settings(c.samples.invariance));
    });
}

void charforms_suite(Runner& run, const GeometryContext& ctx, const SuiteConfig& c) {
  const int n = ctx.n;
  const std::string suite = "charforms";
  const int closed_samples = n >= 4 ? c.samples.high_degree : c.samples.identity;
  run.run(suite, "d p_1 = 0", n, [&] { return check_closed_pontryagin(ctx, 1, run.settings(closed_samples)); });
  run.run(suite, "g Omega is antisymmetric", n,
          [&] { return check_lowered_antisymmetry(ctx, run.settings(c.samples.identity)); });
  if (n % 2 == 0) {
    run.run(suite, "2 det g d Pf(g Omega) = d det g ^ Pf(g Omega)", n,
            [&] { return check_euler_closed(ctx, run.settings(closed_samples)); });
    run.run(suite, "E ^ E = p_" + std::to_string(n / 2), n,
            [&] { return check_euler_square(ctx, run.settings(n >= 4 ? 10 : c.samples.identity)); });
    run.run(suite, "Euler sign flip under diag(-1, 1, ...)", n, [&] {
      return check_euler_sign_flip(ctx, PolyDiffeo::affine("reflection", reflection(n)), true,
                                   run.settings(c.samples.euler_flip));
    });
  }
  if (n == 2) {
    run.run(suite, "p_1 does not vanish (stored witness)", n, [&] {
      const auto w = find_pontryagin_witness(ctx);
      if (!w) return outcome(false, CheckMode::Sampled, 1, "no nonzero coordinate 4-tuple at the normal point");
      const bool ok = !is_zero(w->value) && w->value == w->brute_force;
      return outcome(ok, CheckMode::Sampled, 1,
                     "p_1 = (2 pi)^-2 * " + frac(w->value) + ", brute force " + frac(w->brute_force), to_json(*w));
    });
  }
}

void oracle_suite(Runner& run, const GeometryContext& ctx, const SuiteConfig& c) {
  const int n = ctx.n;
  const std::string suite = "oracles";
  for (const auto& g : c.metrics) {
    if (g.dimension() != n) continue;
    run.run(suite, "holonomic pullbacks match the classical oracle [" + g.name() + "]", n,
            [&] { return check_holonomic_oracles(ctx, g, run.settings(c.samples.oracle_points)); });
  }
  if (n != 2) return;
  const MetricSection warped("diag(1, 1 + x1^2)", warped_entries());
  run.run(suite, "Gamma^2_12 = 1/2 and Gamma^1_22 = -1 at x = (1, 0) [diag(1, 1 + x1^2)]", n, [&] {
    const std::vector<Rational> x{1, 0};
    const JetPoint z = warped.jet_at(x);
    const Christoffels classical = classical_levi_civita(warped, x);
    const Rational u212 = eval(ctx.christoffel(1, 0, 1), z), u122 = eval(ctx.christoffel(0, 1, 1), z);
    const bool ok = u212 == Rational(1, 2) && u122 == -1 && classical(1, 0, 1) == u212 && classical(0, 1, 1) == u122;
    return outcome(ok, CheckMode::Sampled, 1,
                   "universal " + frac(u212) + ", " + frac(u122) + "; classical " + frac(classical(1, 0, 1)) + ", " +
                       frac(classical(0, 1, 1)));
  });
  run.run(suite, "Gauss curvature K = -1 at x = 0 [diag(1, 1 + x1^2)]", n, [&] {
    const std::vector<Rational> x{0, 0};
    const RationalMatrix gv = warped.value(x);
    const Rational det = determinant(gv);
    const auto lowered = left_multiply(gv, evaluate_at(ctx.curvature_univ, warped.jet_at(x)));
    const Rational k_universal = euler_pf_on(lowered, warped.lifts(x)) / det;
    const auto riemann = classical_curvature(warped, x);
    Rational r1212 = 0;
    for (int a = 0; a < 2; ++a) r1212 += gv[0][a] * riemann(a, 1).coefficient(SlotMask{3});
    const Rational k_classical = r1212 / det;
    const bool ok = k_universal == -1 && k_classical == -1;
    return outcome(ok, CheckMode::Sampled, 1, "universal " + frac(k_universal) + ", classical " + frac(k_classical));
  });
}

void invariant_suite(Runner& run, int n) {
  const std::string suite = "invariants";
  const TensorSpaceSpec e = TensorSpaceSpec::module_e(n);
  auto dim_check = [&](const TensorSpaceSpec& spec, Group g, std::optional<int> expected) {
    const auto r = invariant_subspace(spec, g);
    const bool ok = r.residuals_zero && (!expected || r.dimension == *expected);
    std::string detail = "dimension " + std::to_string(r.dimension) + " of " + std::to_string(r.space_dimension);
    if (!expected) detail += " (reported as computed)";
    return outcome(ok, CheckMode::Symbolic, r.constraint_operators, detail, to_json(spec, r));
  };
  run.run(suite, "O(n) invariants of E: dimension 2", n, [&] { return dim_check(e, Group::O, 2); });
  if (n == 4)
    run.run(suite, "SO(4) invariants of E: dimension 2", n, [&] { return dim_check(e, Group::SO, 2); });
  else
    run.run(suite, "SO(" + std::to_string(n) + ") invariants of E", n, [&] { return dim_check(e, Group::SO, std::nullopt); });
  run.run(suite, "O(n) invariants of V(x)V(x)V: dimension 0", n,
          [&] { return dim_check(TensorSpaceSpec(n, {Summand::V3}), Group::O, 0); });
  run.run(suite, n >= 3 ? "quartic invariants: dimension 3, spanned by xi_1, xi_2, xi_3" : "quartic invariants contain xi_1, xi_2, xi_3", n,
          [&] {
            const auto q = quartic_invariants(n);
            bool ok = q.report.residuals_zero && q.xi_in_space;
            if (n >= 3) ok = ok && q.report.dimension == 3 && q.basis_in_xi.has_value();
            return outcome(ok, CheckMode::Symbolic, q.report.constraint_operators,
                           "dimension " + std::to_string(q.report.dimension) + ", xi rank " + std::to_string(q.xi_rank),
                           to_json(q));
          });
  run.run(suite, "theta and tr(vartheta) (x) g at the normal point form a basis of the O(n) invariants", n, [&] {
    const auto m = match_contraction_basis(n);
    return outcome(m.ok, CheckMode::Symbolic, 2, m.detail, to_json(e, m));
  });
}

void health_suite(Runner& run, const SuiteConfig& c) {
  const std::string suite = "health";
  const auto s = run.settings(c.samples.health);
  run.run(suite, "d(d a) = 0", 0, [&] { return check_d_squared(s); });
  run.run(suite, "wedge graded commutativity and associativity", 0, [&] { return check_wedge_laws(s); });
  run.run(suite, "Pf(B^T A B) = det B Pf(A), Pf^2 = det", 0, [&] { return check_pfaffian_congruence(s); });
  run.run(suite, "char_coeff conjugation invariance", 0, [&] { return check_char_coeff_conjugation(s); });
}

}  // namespace

VerifyReport run_verify(const SuiteConfig& config, const std::function<void(const CheckRecord&)>& progress) {
  Runner run(config, progress);
  BuildOptions options;
  options.corrupt_christoffel_sign = config.corrupt_christoffel_sign;
  for (int n : config.dimensions) {
    const GeometryContext ctx = build_context(n, options);
    geometry_suite(run, ctx, config);
    curvature_suite(run, ctx, config);
    invariance_suite(run, ctx, config);
    charforms_suite(run, ctx, config);
    oracle_suite(run, ctx, config);
    if (config.invariants) invariant_suite(run, n);
  }
  if (config.health) health_suite(run, config);
  return run.finish();
}

bool VerifyReport::passed() const { return failures() == 0; }

int VerifyReport::failures() const {
  int f = 0;
  for (const auto& r : checks)
    if (!r.passed) ++f;
  return f;
}

nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["dimension"] = r.dimension;
  j["mode"] = to_string(r.mode);
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["status"] = r.passed ? "pass" : "fail";
  j["detail"] = r.detail;
  j["witness"] = r.witness;
  return j;
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["status"] = r.passed() ? "pass" : "fail";
  j["total"] = r.checks.size();
  j["failures"] = r.failures();
  j["config"] = r.config;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

namespace {

std::string md_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out;
}

}  // namespace

std::string to_markdown(const VerifyReport& r) {
  std::ostringstream md;
  md << "# Verification report\n\n";
  md << "Status: **" << (r.passed() ? "PASS" : "FAIL") << "** (" << r.checks.size() - r.failures() << "/"
     << r.checks.size() << " checks passed)\n\n";
  md << "Seed " << r.config.value("seed", std::uint64_t{0}) << ", trials " << r.config.value("trials", 0)
     << ", dimensions " << r.config["dimensions"].dump() << ".\n\n";
  md << "| suite | n | check | mode | cases | status |\n";
  md << "|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    md << "| " << c.suite << " | " << (c.dimension ? std::to_string(c.dimension) : "-") << " | " << md_escape(c.name)
       << " | " << to_string(c.mode) << " | " << c.cases << " | " << (c.passed ? "pass" : "**FAIL**") << " |\n";
  }
  if (!r.passed()) {
    md << "\n## Failures\n";
    for (const auto& c : r.checks) {
      if (c.passed) continue;
      md << "\n### " << c.suite << " n=" << c.dimension << ": " << md_escape(c.name) << "\n\n";
      md << md_escape(c.detail) << "\n\n";
      if (!c.witness.is_null()) md << "```json\n" << c.witness.dump(2) << "\n```\n";
    }
  }
  return md.str();
}

}  // namespace jetlc

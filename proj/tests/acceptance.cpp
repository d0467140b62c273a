// Acceptance runner: one line per criterion, exit 0 only if all pass.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>

#include "jetlc/geometry.hpp"
#include "jetlc/invariant_theory.hpp"
#include "jetlc/verify.hpp"

using namespace jetlc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

class Records {
 public:
  explicit Records(const std::vector<CheckRecord>& all) : all_(all) {}

  std::vector<const CheckRecord*> select(const std::string& suite, const std::string& part, int n = -1) const {
    std::vector<const CheckRecord*> out;
    for (const auto& r : all_)
      if (r.suite == suite && contains(r.name, part) && (n < 0 || r.dimension == n)) out.push_back(&r);
    return out;
  }

  // At least one record, every record passed, each with the given mode and case floor.
  void require(Verdict& v, const std::string& suite, const std::string& part, int n, std::optional<CheckMode> mode,
               int min_cases = 1) const {
    const auto rs = select(suite, part, n);
    const std::string label = suite + " '" + part + "' n=" + std::to_string(n);
    v.require(!rs.empty(), label + ": no such check");
    for (const auto* r : rs) {
      v.require(r->passed, label + ": failed: " + r->detail);
      if (mode) v.require(r->mode == *mode, label + ": ran " + to_string(r->mode) + ", need " + to_string(*mode));
      v.require(r->cases >= min_cases,
                label + ": " + std::to_string(r->cases) + " cases, need " + std::to_string(min_cases));
    }
  }

 private:
  const std::vector<CheckRecord>& all_;
};

std::string bracket_name(const std::string& name) {
  const auto open = name.rfind('[');
  return open == std::string::npos ? std::string() : name.substr(open + 1, name.size() - open - 2);
}

int report(int number, const std::string& title, const Verdict& v) {
  std::cout << "crit" << number << " " << (v.ok ? "PASS" : "FAIL") << "  " << title;
  if (!v.ok) std::cout << "  [" << v.why << "]";
  std::cout << "\n" << std::flush;
  return v.ok ? 0 : 1;
}

}  // namespace

int main() {
  constexpr auto S = CheckMode::Symbolic;
  constexpr auto P = CheckMode::Sampled;

  // crit1 timing runs on its own, before anything is cached.
  Verdict c1;
  const auto t1 = Clock::now();
  for (int n : {2, 3, 4}) {
    const GeometryContext ctx = build_context(n);
    CheckSettings settings;
    settings.seed = 1;
    settings.samples = 100;
    const CheckOutcome out = check_metric_compatibility(ctx, settings);
    c1.require(out.passed, "n=" + std::to_string(n) + ": " + out.detail);
    c1.require(out.mode == (n <= 3 ? S : P), "n=" + std::to_string(n) + ": unexpected mode");
    if (n == 4) c1.require(out.cases >= 100, "n=4: fewer than 100 points");
  }
  const double crit1_seconds = seconds_since(t1);
  c1.require(crit1_seconds < 60, "took " + std::to_string(crit1_seconds) + " s");

  const auto t9 = Clock::now();
  Verdict c9_timed;
  {
    const int n = 4;
    const auto spec = TensorSpaceSpec::module_e(n);
    const auto o = invariant_subspace(spec, Group::O);
    const auto so = invariant_subspace(spec, Group::SO);
    const auto v3 = invariant_subspace(TensorSpaceSpec(n, {Summand::V3}), Group::O);
    const auto q = quartic_invariants(n);
    const auto m = match_contraction_basis(n);
    c9_timed.require(o.dimension == 2 && o.residuals_zero, "O(4) dimension " + std::to_string(o.dimension));
    c9_timed.require(so.dimension == 2 && so.residuals_zero, "SO(4) dimension " + std::to_string(so.dimension));
    c9_timed.require(v3.dimension == 0, "V3 dimension " + std::to_string(v3.dimension));
    c9_timed.require(q.report.dimension == 3 && q.xi_in_space, "quartic");
    c9_timed.require(m.ok, "basis match: " + m.detail);
  }
  const double crit9_seconds = seconds_since(t9);
  c9_timed.require(crit9_seconds < 300, "n=4 took " + std::to_string(crit9_seconds) + " s");

  SuiteConfig config = SuiteConfig::load(JETLC_DEFAULT_CONFIG);
  const auto t10 = Clock::now();
  const VerifyReport vr = run_verify(config);
  const double verify_seconds = seconds_since(t10);
  const Records rec(vr.checks);

  int failures = 0;
  failures += report(1, "nabla g = 0 for the universal connection (" + std::to_string(crit1_seconds) + " s)", c1);

  Verdict c2;
  for (int n : {2, 3}) {
    rec.require(c2, "geometry", "nabla_g(omega_hor) = theta", n, S);
    rec.require(c2, "geometry", "christoffel jets", n, S);
    rec.require(c2, "geometry", "christoffel symmetry", n, S);
  }
  rec.require(c2, "geometry", "nabla_g(omega_hor) = theta", 4, P, 50);
  failures += report(2, "nabla g = theta for the horizontal connection; Christoffel jets", c2);

  Verdict c3;
  rec.require(c3, "curvature", "Omega = antisym(Omega_hor) - 1/4", 2, S);
  rec.require(c3, "curvature", "Omega = antisym(Omega_hor) - 1/4", 3, P, 50);
  rec.require(c3, "curvature", "Omega = antisym(Omega_hor) - 1/4", 4, P, 50);
  for (int n : {2, 3, 4}) rec.require(c3, "curvature", "-1/2 in the curvature identity is refuted", n, {});
  failures += report(3,
                     "curvature identity holds with coefficient -1/4 on vartheta^vartheta; the coefficient -1/2 is "
                     "refuted by an exact witness",
                     c3);

  Verdict c4;
  {
    std::set<std::string> metrics;
    for (int n : {2, 3})
      for (const auto* r : rec.select("oracles", "holonomic pullbacks", n)) {
        c4.require(r->passed && r->cases >= 10, r->name + ": " + r->detail);
        metrics.insert(std::to_string(n) + bracket_name(r->name));
      }
    c4.require(metrics.size() >= 5, std::to_string(metrics.size()) + " metrics in n=2,3, need 5");
    rec.require(c4, "oracles", "holonomic pullbacks match the classical oracle [warped diag(1, 1 + x1^2)]", 2, {}, 10);
    rec.require(c4, "oracles", "Gamma^2_12 = 1/2 and Gamma^1_22 = -1", 2, {});
  }
  failures += report(4, "holonomic pullback of omega is the Levi-Civita connection", c4);

  Verdict c5;
  {
    std::set<std::string> diffeos;
    int flips = 0, preserved = 0, composed = 0;
    for (const auto* r : rec.select("invariance", "gauge pullback of omega [")) {
      c5.require(r->passed && r->cases >= 20, r->name + ": " + r->detail);
      const std::string name = bracket_name(r->name);
      if (diffeos.insert(std::to_string(r->dimension) + name).second && contains(name, " o ")) ++composed;
    }
    for (const auto* r : rec.select("invariance", "pullback of p_")) c5.require(r->passed && r->cases >= 20, r->name);
    for (const auto* r : rec.select("invariance", "Euler data")) {
      c5.require(r->passed, r->name + ": " + r->detail);
      (contains(r->name, "flips") ? flips : preserved)++;
    }
    c5.require(diffeos.size() >= 10, std::to_string(diffeos.size()) + " diffeomorphisms, need 10");
    c5.require(flips > 0 && preserved > 0, "need orientation preserving and reversing maps");
    c5.require(composed > 0, "need a composition");
    for (const char* s : {"scaling by 1/4 ", "scaling by 4/1 ", "scaling by 9/1 "})
      rec.require(c5, "invariance", s, 2, S);
    for (const auto* r : rec.select("invariance", "scaling")) c5.require(r->passed, r->name + ": " + r->detail);
  }
  failures += report(5, "Diff-invariance of omega and p_k; scaling invariance", c5);

  Verdict c6;
  rec.require(c6, "charforms", "d p_1 = 0", 2, S);
  rec.require(c6, "charforms", "d p_1 = 0", 3, P);
  rec.require(c6, "charforms", "2 det g d Pf(g Omega) = d det g ^ Pf(g Omega)", 2, S);
  rec.require(c6, "charforms", "E ^ E = p_1", 2, S);
  rec.require(c6, "charforms", "E ^ E = p_2", 4, P);
  rec.require(c6, "charforms", "Euler sign flip", 2, {}, 10);
  for (int n : {2, 4}) rec.require(c6, "oracles", "holonomic pullbacks", n, {}, 10);
  rec.require(c6, "oracles", "Gauss curvature K = -1", 2, {});
  failures += report(6, "characteristic forms: closedness, Euler square and sign, classical oracles", c6);

  Verdict c7;
  {
    rec.require(c7, "charforms", "p_1 does not vanish", 2, {});
    std::ifstream in(JETLC_GOLDEN_P1);
    c7.require(static_cast<bool>(in), "cannot read the golden witness");
    if (in) {
      nlohmann::json golden;
      in >> golden;
      const auto rs = rec.select("charforms", "p_1 does not vanish", 2);
      if (!rs.empty()) {
        const auto& w = rs.front()->witness;
        c7.require(w.at("value") == golden.at("p_1").at("value"), "value differs from the golden witness");
        c7.require(w.at("brute_force") == golden.at("p_1").at("value"), "brute force differs from the golden witness");
        c7.require(w.at("vectors") == golden.at("vectors"), "vectors differ from the golden witness");
        c7.require(w.at("value") != "0/1", "witness value is zero");
      }
    }
  }
  failures += report(7, "p_1 does not vanish: stored witness, brute-force cross-check", c7);

  Verdict c8;
  for (int n : {2, 3})
    for (const char* pair : {"(1/1, 0/1)", "(0/1, 1/1)", "(1/1, 1/1)", "(-2/1, 3/1)"})
      rec.require(c8, "geometry", std::string("uniqueness (lambda, mu) = ") + pair, n, S);
  for (const auto* r : rec.select("geometry", "uniqueness"))
    c8.require(!r->witness.is_null(), r->name + ": no nonzero witness");
  failures += report(8, "uniqueness: perturbed connections fail nabla g = 0 with explicit witnesses", c8);

  Verdict c9 = c9_timed;
  for (int n : {2, 3, 4}) {
    rec.require(c9, "invariants", "O(n) invariants of E: dimension 2", n, S);
    rec.require(c9, "invariants", "O(n) invariants of V(x)V(x)V: dimension 0", n, S);
    rec.require(c9, "invariants", "theta and tr(vartheta) (x) g", n, S);
  }
  rec.require(c9, "invariants", "SO(4) invariants of E: dimension 2", 4, S);
  for (int n : {3, 4}) rec.require(c9, "invariants", "quartic invariants: dimension 3", n, S);
  failures += report(9, "invariant theory (n=4 in " + std::to_string(crit9_seconds) + " s)", c9);

  Verdict c10;
  for (const char* part : {"d(d a) = 0", "wedge graded", "Pf(B^T A B)", "char_coeff conjugation"})
    rec.require(c10, "health", part, 0, {});
  c10.require(vr.passed(), std::to_string(vr.failures()) + " verify checks failed");
  c10.require(verify_seconds < 600, "full verify took " + std::to_string(verify_seconds) + " s");
  failures += report(10, "engine health; full default verify in " + std::to_string(verify_seconds) + " s", c10);

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << "\n";
  return failures == 0 ? 0 : 1;
}

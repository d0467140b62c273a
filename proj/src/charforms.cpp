#include "jetlc/charforms.hpp"

#include <array>

#include "jetlc/serialize.hpp"

namespace jetlc {

namespace {

Rational bilinear(const FormValue& f, const TangentVector& u, const TangentVector& w) {
  Rational total = 0;
  for (const auto& [key, c] : f.terms()) {
    const int k = std::countr_zero(key);
    const int l = std::countr_zero(key & (key - 1));
    total += c * (u[k] * w[l] - u[l] * w[k]);
  }
  return total;
}

std::string sample_label(int s) { return "sample " + std::to_string(s); }

CheckOutcome failure(CheckMode mode, int cases, std::string detail, nlohmann::json witness) {
  CheckOutcome out;
  out.passed = false;
  out.mode = mode;
  out.cases = cases;
  out.detail = std::move(detail);
  out.witness = std::move(witness);
  return out;
}

}  // namespace

MatrixForm lowered_curvature(const GeometryContext& ctx) { return lower_index(ctx, ctx.curvature_univ); }

PrefactoredForm<Expr> pontryagin(const GeometryContext& ctx, int k) {
  if (k < 1 || 2 * k > ctx.n) throw std::out_of_range("pontryagin: need 1 <= k <= n/2");
  return char_coeff(k, ctx.curvature_univ);
}

Rational pontryagin_on(const MatrixFormValue& curvature, int k, std::span<const TangentVector> vs) {
  if (static_cast<int>(vs.size()) != 4 * k) throw DegreeMismatch("p_k needs 4k tangent vectors");
  return top_coefficient(char_coeff(k, restrict_to(curvature, vs)).form, 4 * k);
}

Rational pontryagin_on(const GeometryContext& ctx, int k, const JetPoint& point, std::span<const TangentVector> vs) {
  if (k < 1 || 2 * k > ctx.n) throw std::out_of_range("pontryagin: need 1 <= k <= n/2");
  return pontryagin_on(evaluate_at(ctx.curvature_univ, point), k, vs);
}

Rational pontryagin_first_bruteforce(const MatrixFormValue& curvature, std::span<const TangentVector> vs) {
  if (vs.size() != 4) throw DegreeMismatch("p_1 needs 4 tangent vectors");
  // (2,2)-shuffles of (0,1,2,3) with their signs
  static constexpr std::array<std::array<int, 5>, 6> kShuffles{{
      {0, 1, 2, 3, +1}, {0, 2, 1, 3, -1}, {0, 3, 1, 2, +1}, {1, 2, 0, 3, +1}, {1, 3, 0, 2, -1}, {2, 3, 0, 1, +1}}};
  auto wedge_on = [&](const FormValue& a, const FormValue& b) -> Rational {
    Rational total = 0;
    for (const auto& s : kShuffles)
      total += s[4] * bilinear(a, vs[s[0]], vs[s[1]]) * bilinear(b, vs[s[2]], vs[s[3]]);
    return total;
  };
  const int n = curvature.size();
  Rational total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      total += wedge_on(curvature(i, i), curvature(j, j)) - wedge_on(curvature(i, j), curvature(j, i));
  return total;
}

Rational euler_pf_on(const MatrixFormValue& lowered, std::span<const TangentVector> vs) {
  if (static_cast<int>(vs.size()) != lowered.size()) throw DegreeMismatch("Pf(g Omega) needs n tangent vectors");
  return top_coefficient(pfaffian(restrict_to(lowered, vs)), lowered.size());
}

Rational euler_pf_on(const GeometryContext& ctx, const JetPoint& point, std::span<const TangentVector> vs) {
  if (ctx.n % 2) throw OddDimension();
  Evaluator ev(point);
  return euler_pf_on(left_multiply(point.metric(), evaluate_at(ctx.curvature_univ, ev)), vs);
}

EulerPair euler(const GeometryContext& ctx, const CheckSettings& settings) {
  if (ctx.n % 2) throw OddDimension();
  MatrixForm lowered = lowered_curvature(ctx);
  auto r = forms_identical(lowered, scale(Expr(-1), transpose(lowered)), {settings.trials, settings.seed, ctx.n});
  if (!r.holds) throw NotAntisymmetric("g Omega is not antisymmetric: " + r.detail);
  return {ctx.n, pfaffian_unchecked(lowered), ctx.det_g};
}

CheckOutcome check_lowered_antisymmetry(const GeometryContext& ctx, const CheckSettings& settings) {
  MatrixForm lowered = lowered_curvature(ctx);
  return compare_matrix_forms(lowered, scale(Expr(-1), transpose(lowered)), ctx.n, resolve_mode(settings.mode, ctx.n, 3),
                              settings);
}

CheckOutcome check_closed_pontryagin(const GeometryContext& ctx, int k, const CheckSettings& settings,
                                     const DiffForm* perturbation) {
  if (k < 1 || 2 * k > ctx.n) throw std::out_of_range("pontryagin: need 1 <= k <= n/2");
  const CheckMode mode = resolve_mode(settings.mode, ctx.n, 2);
  Differentiator d;
  if (mode == CheckMode::Symbolic) {
    DiffForm p = pontryagin(ctx, k).form;
    if (perturbation) p = p + *perturbation;
    DiffForm dp = dext(p, d);
    auto r = forms_identical(dp, DiffForm(4 * k + 1), {settings.trials, settings.seed, ctx.n});
    CheckOutcome out;
    out.passed = r.holds;
    out.mode = mode;
    out.cases = 1;
    out.detail = r.detail;
    if (r.witness) out.witness = {{"point", to_json(*r.witness)}};
    return out;
  }
  const MatrixForm d_omega = dext(ctx.curvature_univ, d);
  const DiffForm d_pert = perturbation ? dext(*perturbation, d) : DiffForm(4 * k + 1);
  Rng rng(settings.seed);
  for (int s = 0; s < settings.samples; ++s) {
    const JetPoint z = JetPoint::random(ctx.n, rng);
    const auto vs = random_tangents(ctx.n, 4 * k + 1, rng);
    Evaluator ev(z);
    const auto omega = restrict_to(evaluate_at(ctx.curvature_univ, ev), vs);
    const auto domega = restrict_to(evaluate_at(d_omega, ev), vs);
    Rational value = top_coefficient(char_coeff_differential(k, omega, domega), 4 * k + 1);
    if (perturbation) value += top_coefficient(restrict_to(evaluate_at(d_pert, ev), vs), 4 * k + 1);
    if (!is_zero(value))
      return failure(CheckMode::Sampled, s + 1, "d p_" + std::to_string(k) + " nonzero at " + sample_label(s),
                     {{"point", to_json(z)}, {"vectors", to_json(vs)}, {"value", to_fraction_string(value)}});
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

CheckOutcome check_euler_closed(const GeometryContext& ctx, const CheckSettings& settings,
                                const DiffForm* perturbation) {
  if (ctx.n % 2) throw OddDimension();
  const CheckMode mode = resolve_mode(settings.mode, ctx.n, 2);
  Differentiator d;
  const DiffForm d_det = dext(DiffForm::scalar(ctx.det_g), d);
  if (mode == CheckMode::Symbolic) {
    DiffForm pf = euler(ctx, settings).pf_flat;
    if (perturbation) pf = pf + *perturbation;
    DiffForm lhs = scale(Expr(2) * ctx.det_g, dext(pf, d));
    DiffForm rhs = wedge(d_det, pf);
    auto r = forms_identical(lhs, rhs, {settings.trials, settings.seed, ctx.n});
    CheckOutcome out;
    out.passed = r.holds;
    out.mode = mode;
    out.cases = 1;
    out.detail = r.detail;
    if (r.witness) out.witness = {{"point", to_json(*r.witness)}};
    return out;
  }
  const MatrixForm lowered = lowered_curvature(ctx);
  const MatrixForm d_lowered = dext(lowered, d);
  const DiffForm d_pert = perturbation ? dext(*perturbation, d) : DiffForm(ctx.n + 1);
  Rng rng(settings.seed);
  for (int s = 0; s < settings.samples; ++s) {
    const JetPoint z = JetPoint::random(ctx.n, rng);
    const auto vs = random_tangents(ctx.n, ctx.n + 1, rng);
    Evaluator ev(z);
    const auto a = restrict_to(evaluate_at(lowered, ev), vs);
    const auto da = restrict_to(evaluate_at(d_lowered, ev), vs);
    FormValue pf = pfaffian(a);
    FormValue dpf = pfaffian_differential(a, da);
    if (perturbation) {
      pf = pf + restrict_to(evaluate_at(*perturbation, ev), vs);
      dpf = dpf + restrict_to(evaluate_at(d_pert, ev), vs);
    }
    const Rational det = ev(ctx.det_g);
    const Rational lhs = 2 * det * top_coefficient(dpf, ctx.n + 1);
    const Rational rhs = top_coefficient(wedge(restrict_to(evaluate_at(d_det, ev), vs), pf), ctx.n + 1);
    if (lhs != rhs)
      return failure(CheckMode::Sampled, s + 1, "Euler closedness fails at " + sample_label(s),
                     {{"point", to_json(z)}, {"vectors", to_json(vs)}, {"lhs", to_fraction_string(lhs)},
                      {"rhs", to_fraction_string(rhs)}});
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

CheckOutcome check_euler_square(const GeometryContext& ctx, const CheckSettings& settings) {
  if (ctx.n % 2) throw OddDimension();
  const int half = ctx.n / 2;
  // E ^ E carries (2 pi)^(-n/2) twice; p_{n/2} carries (2 pi)^(-2 (n/2)).
  const CheckMode mode = resolve_mode(settings.mode, ctx.n, 2);
  if (mode == CheckMode::Symbolic) {
    const EulerPair e = euler(ctx, settings);
    DiffForm lhs = scale(quotient(Expr(1), e.det_g), wedge(e.pf_flat, e.pf_flat));
    DiffForm rhs = pontryagin(ctx, half).form;
    auto r = forms_identical(lhs, rhs, {settings.trials, settings.seed, ctx.n});
    CheckOutcome out;
    out.passed = r.holds;
    out.mode = mode;
    out.cases = 1;
    out.detail = r.detail;
    if (r.witness) out.witness = {{"point", to_json(*r.witness)}};
    return out;
  }
  const MatrixForm lowered = lowered_curvature(ctx);
  Rng rng(settings.seed);
  for (int s = 0; s < settings.samples; ++s) {
    const JetPoint z = JetPoint::random(ctx.n, rng);
    const auto vs = random_tangents(ctx.n, 2 * ctx.n, rng);
    Evaluator ev(z);
    const FormValue pf = pfaffian(restrict_to(evaluate_at(lowered, ev), vs));
    const Rational lhs = top_coefficient(wedge(pf, pf), 2 * ctx.n) / ev(ctx.det_g);
    const Rational rhs = pontryagin_on(evaluate_at(ctx.curvature_univ, ev), half, vs);
    if (lhs != rhs)
      return failure(CheckMode::Sampled, s + 1, "E^E differs from p_{n/2} at " + sample_label(s),
                     {{"point", to_json(z)}, {"vectors", to_json(vs)}, {"lhs", to_fraction_string(lhs)},
                      {"rhs", to_fraction_string(rhs)}});
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

namespace {

std::vector<TangentVector> push_all(const ProlongedMap& map, const RationalMatrix& jac,
                                    const std::vector<TangentVector>& vs) {
  std::vector<TangentVector> out;
  for (const auto& v : vs) out.push_back(map.push_forward(jac, v));
  return out;
}

}  // namespace

CheckOutcome check_euler_sign_flip(const GeometryContext& ctx, const PolyDiffeo& phi, bool expect_flip,
                                   const CheckSettings& settings) {
  if (ctx.n % 2) throw OddDimension();
  const ProlongedMap map = prolong_diffeo(phi);
  const MatrixForm lowered = lowered_curvature(ctx);
  Rng rng(settings.seed);
  for (int s = 0; s < settings.samples; ++s) {
    const JetPoint z = JetPoint::random(ctx.n, rng);
    const JetPoint image = map.apply(z);
    const RationalMatrix jac = map.jacobian(z);
    std::vector<Rational> x(ctx.n);
    for (int k = 0; k < ctx.n; ++k) x[k] = z[base_slot(k)];
    RationalMatrix p(ctx.n, std::vector<Rational>(ctx.n));
    for (int a = 0; a < ctx.n; ++a)
      for (int i = 0; i < ctx.n; ++i) p[a][i] = phi.inverse_jacobian_at_image()[a][i](x);
    const Rational det_p = determinant(p);
    const bool flips = sgn(det_p) < 0;
    const Rational abs_det_p = flips ? Rational(-det_p) : det_p;

    const auto vs = random_tangents(ctx.n, ctx.n, rng);
    const auto pushed = push_all(map, jac, vs);
    Evaluator ev(z), ev_image(image);
    const Rational pf = euler_pf_on(evaluate_at(lowered, ev), vs);
    const Rational pf_pulled = euler_pf_on(evaluate_at(lowered, ev_image), pushed);
    const Rational det = ev(ctx.det_g), det_pulled = ev_image(ctx.det_g);
    // gauge-consistent pullback of the Pfaffian: divide by |det P|, the factor
    // by which det_g^{1/2} changes
    const Rational gauge_pf = pf_pulled / abs_det_p;
    const Rational expected = expect_flip ? Rational(-pf) : pf;
    nlohmann::json witness = {{"point", to_json(z)},          {"vectors", to_json(vs)},
                              {"det_P", to_fraction_string(det_p)}, {"pf", to_fraction_string(pf)},
                              {"pf_pulled", to_fraction_string(pf_pulled)}};
    if (flips != expect_flip)
      return failure(CheckMode::Sampled, s + 1, "orientation behaviour differs from the expectation", witness);
    if (det_pulled != det_p * det_p * det)
      return failure(CheckMode::Sampled, s + 1, "det_g does not pull back by det(P)^2", witness);
    if (gauge_pf != expected)
      return failure(CheckMode::Sampled, s + 1,
                     std::string("Pfaffian pullback ") + (expect_flip ? "is not flipped" : "changes sign") + " at " +
                         sample_label(s),
                     witness);
    for (int k = 1; 2 * k <= ctx.n; ++k) {
      const auto ws = random_tangents(ctx.n, 4 * k, rng);
      const Rational before = pontryagin_on(evaluate_at(ctx.curvature_univ, ev), k, ws);
      const Rational after = pontryagin_on(evaluate_at(ctx.curvature_univ, ev_image), k, push_all(map, jac, ws));
      if (before != after)
        return failure(CheckMode::Sampled, s + 1, "p_" + std::to_string(k) + " changed under the map", witness);
    }
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

CheckOutcome check_pontryagin_invariance(const GeometryContext& ctx, const PolyDiffeo& phi, int k,
                                         const CheckSettings& settings) {
  if (k < 1 || 2 * k > ctx.n) throw std::out_of_range("pontryagin: need 1 <= k <= n/2");
  const ProlongedMap map = prolong_diffeo(phi);
  Rng rng(settings.seed);
  for (int s = 0; s < settings.samples; ++s) {
    const JetPoint z = JetPoint::random(ctx.n, rng);
    const auto vs = random_tangents(ctx.n, 4 * k, rng);
    const RationalMatrix jac = map.jacobian(z);
    const Rational before = pontryagin_on(ctx, k, z, vs);
    const Rational after = pontryagin_on(ctx, k, map.apply(z), push_all(map, jac, vs));
    if (before != after)
      return failure(CheckMode::Sampled, s + 1, "p_" + std::to_string(k) + " not invariant at " + sample_label(s),
                     {{"point", to_json(z)}, {"vectors", to_json(vs)}, {"before", to_fraction_string(before)},
                      {"after", to_fraction_string(after)}});
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

CheckOutcome check_gauge_invariance(const PolyDiffeo& phi, const MatrixForm& conn, const CheckSettings& settings) {
  const int n = phi.dimension();
  const ProlongedMap map = prolong_diffeo(phi);
  Rng rng(settings.seed);
  for (int s = 0; s < settings.samples; ++s) {
    const JetPoint z = JetPoint::random(n, rng);
    const MatrixFormValue pulled = gauge_pullback_connection_at(phi, map, conn, z);
    const MatrixFormValue original = evaluate_at(conn, z);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pulled(i, j).terms() != original(i, j).terms())
          return failure(CheckMode::Sampled, s + 1, "gauge pullback differs at " + sample_label(s),
                         {{"point", to_json(z)},
                          {"entry", {i + 1, j + 1}},
                          {"pulled", to_json(pulled(i, j))},
                          {"original", to_json(original(i, j))}});
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

CheckOutcome check_scaling_invariance(const GeometryContext& ctx, const Rational& s, const CheckSettings& settings) {
  const int n = ctx.n;
  const ProlongedMap map = scaling_substitution(n, s);
  const CheckMode mode = resolve_mode(settings.mode, n, 2);
  const MatrixForm scaled_theta = scale(Expr(s), ctx.theta.entries);
  if (mode == CheckMode::Symbolic) {
    const IdentitySettings id{settings.trials, settings.seed, n};
    struct Item {
      const char* name;
      MatrixForm lhs, rhs;
    };
    const std::vector<Item> items{{"omega", pullback_form(map, ctx.omega_univ), ctx.omega_univ},
                                  {"curvature", pullback_form(map, ctx.curvature_univ), ctx.curvature_univ},
                                  {"theta", pullback_form(map, ctx.theta.entries), scaled_theta}};
    int cases = 0;
    for (const auto& item : items) {
      const auto r = forms_identical(item.lhs, item.rhs, id);
      ++cases;
      if (!r.holds)
        return failure(mode, cases, std::string(item.name) + " not invariant under scaling: " + r.detail,
                       r.witness ? nlohmann::json{{"point", to_json(*r.witness)}} : nlohmann::json());
    }
    if (n == 2) {
      const DiffForm p1 = pontryagin(ctx, 1).form;
      const auto r = forms_identical(pullback_form(map, p1), p1, id);
      ++cases;
      if (!r.holds)
        return failure(mode, cases, "p_1 not invariant under scaling: " + r.detail,
                       r.witness ? nlohmann::json{{"point", to_json(*r.witness)}} : nlohmann::json());
    }
    CheckOutcome out;
    out.mode = mode;
    out.cases = cases;
    return out;
  }
  Rng rng(settings.seed);
  for (int t = 0; t < settings.samples; ++t) {
    const JetPoint z = JetPoint::random(n, rng);
    const JetPoint image = map.apply(z);
    const RationalMatrix jac = map.jacobian(z);
    const std::pair<const char*, const MatrixForm*> items[] = {{"omega", &ctx.omega_univ},
                                                               {"curvature", &ctx.curvature_univ}};
    for (const auto& [name, form] : items) {
      const MatrixFormValue at_image = evaluate_at(*form, image);
      const MatrixFormValue here = evaluate_at(*form, z);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (map.pull_back(jac, at_image(i, j)).terms() != here(i, j).terms())
            return failure(mode, t + 1, std::string(name) + " not invariant under scaling at " + sample_label(t),
                           {{"point", to_json(z)}, {"entry", {i + 1, j + 1}}});
    }
  }
  CheckOutcome out;
  out.mode = mode;
  out.cases = settings.samples;
  return out;
}

CheckOutcome check_scaling_group_law(int n, const Rational& s, const Rational& t, const CheckSettings& settings) {
  const ProlongedMap ms = scaling_substitution(n, s), mt = scaling_substitution(n, t),
                     mst = scaling_substitution(n, s * t);
  Rng rng(settings.seed);
  for (int k = 0; k < settings.samples; ++k) {
    const JetPoint z = JetPoint::random(n, rng);
    const JetPoint lhs = ms.apply(mt.apply(z)), rhs = mst.apply(z);
    for (int slot : active_slots(n))
      if (lhs[slot] != rhs[slot])
        return failure(CheckMode::Sampled, k + 1, "scaling is not a group action at " + sample_label(k),
                       {{"point", to_json(z)}, {"coordinate", JetCoordinate::from_slot(slot).name()}});
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = settings.samples;
  return out;
}

namespace {

std::vector<TangentVector> coordinate_vectors(int n) {
  std::vector<TangentVector> out;
  for (int k = 0; k < n; ++k) out.push_back(TangentVector::along(JetCoordinate::base(k)));
  return out;
}

nlohmann::json base_point_json(std::span<const Rational> x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : x) out.push_back(to_fraction_string(v));
  return out;
}

}  // namespace

CheckOutcome check_holonomic_oracles(const GeometryContext& ctx, const MetricSection& g, const CheckSettings& settings) {
  const int n = ctx.n;
  if (g.dimension() != n) throw DimensionMismatch("metric dimension differs from the context");
  const auto points = g.sample_points(settings.samples, settings.seed);
  const auto base = coordinate_vectors(n);
  int cases = 0;
  for (const auto& x : points) {
    ++cases;
    const JetPoint z = g.jet_at(x);
    const auto lifts = g.lifts(x);
    auto fail = [&](const std::string& what, nlohmann::json extra) {
      extra["x"] = base_point_json(x);
      return failure(CheckMode::Sampled, cases, what + " disagrees with the classical oracle for " + g.name(),
                     std::move(extra));
    };
    const MatrixFormValue theta = holonomic_pullback_at(g, evaluate_at(ctx.theta.entries, z), x);
    if (!theta.is_zero()) return fail("theta pullback", {{"theta", to_json(theta)}});
    const MatrixFormValue omega = holonomic_pullback_at(g, evaluate_at(ctx.omega_univ, z), x);
    const MatrixFormValue conn = classical_connection_forms(g, x);
    const MatrixFormValue curvature_at_jet = evaluate_at(ctx.curvature_univ, z);
    const MatrixFormValue curvature = holonomic_pullback_at(g, curvature_at_jet, x);
    const MatrixFormValue riemann = classical_curvature(g, x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (omega(i, j).terms() != conn(i, j).terms())
          return fail("omega pullback", {{"entry", {i + 1, j + 1}}, {"pulled", to_json(omega(i, j))},
                                         {"classical", to_json(conn(i, j))}});
        if (curvature(i, j).terms() != riemann(i, j).terms())
          return fail("curvature pullback", {{"entry", {i + 1, j + 1}}, {"pulled", to_json(curvature(i, j))},
                                             {"classical", to_json(riemann(i, j))}});
      }
    if (n % 2 == 0) {
      const RationalMatrix gv = g.value(x);
      const Rational universal = euler_pf_on(left_multiply(gv, curvature_at_jet), lifts);
      const Rational classical = evaluate(pfaffian(left_multiply(gv, riemann)), base);
      if (universal != classical)
        return fail("Pf(g Omega)", {{"universal", to_fraction_string(universal)},
                                    {"classical", to_fraction_string(classical)}});
    }
    if (n == 4) {
      const Rational universal = pontryagin_on(curvature_at_jet, 1, lifts);
      const Rational classical = pontryagin_first_bruteforce(riemann, base);
      if (universal != classical)
        return fail("p_1", {{"universal", to_fraction_string(universal)}, {"classical", to_fraction_string(classical)}});
    }
  }
  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  out.cases = cases;
  return out;
}

std::optional<PontryaginWitness> find_pontryagin_witness(const GeometryContext& ctx) {
  const JetPoint z0 = JetPoint::normal(ctx.n);
  const MatrixFormValue omega = evaluate_at(ctx.curvature_univ, z0);
  const auto& slots = active_slots(ctx.n);
  const int m = static_cast<int>(slots.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c)
        for (int d = c + 1; d < m; ++d) {
          std::vector<TangentVector> vs;
          for (int t : {a, b, c, d}) vs.push_back(TangentVector::along(JetCoordinate::from_slot(slots[t])));
          const Rational value = pontryagin_on(omega, 1, vs);
          if (is_zero(value)) continue;
          return PontryaginWitness{z0, vs, value, pontryagin_first_bruteforce(omega, vs), -2};
        }
  return std::nullopt;
}

nlohmann::json to_json(const PontryaginWitness& w) {
  return {{"point", to_json(w.point)},
          {"vectors", to_json(w.vectors)},
          {"value", to_fraction_string(w.value)},
          {"brute_force", to_fraction_string(w.brute_force)},
          {"two_pi_power", w.two_pi_power}};
}

}  // namespace jetlc

#include "jetlc/geometry.hpp"

#include <numeric>

#include "jetlc/serialize.hpp"

namespace jetlc {

namespace {

Expr leibniz_det(const ScalarMatrix<Expr>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Expr> terms;
  do {
    std::vector<Expr> factors;
    for (std::size_t t = 0; t < rows.size(); ++t) factors.push_back(m[rows[t]][cols[perm[t]]]);
    Expr p = product(std::move(factors));
    terms.push_back(detail::permutation_parity(perm) ? -p : p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum(std::move(terms));
}

DiffForm one_form(const std::vector<std::pair<int, Expr>>& parts) {
  FormAccumulator<Expr> acc(1);
  for (const auto& [slot, c] : parts) acc.add(SlotMask{1} << slot, c);
  return acc.finish();
}

IdentitySettings identity_settings(const CheckSettings& s, int n) { return {s.trials, s.seed, n}; }

CheckOutcome from_identity(const IdentityOutcome& r, int cases) {
  CheckOutcome out;
  out.passed = r.holds;
  out.mode = CheckMode::Symbolic;
  out.cases = cases;
  out.detail = r.detail;
  if (r.witness) out.witness = {{"point", to_json(*r.witness)}};
  return out;
}

std::string entry_label(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

}  // namespace

MatrixForm curvature_of(const MatrixForm& conn, Differentiator& d) { return dext(conn, d) + mat_wedge(conn, conn); }

GeometryContext build_context(int n, const BuildOptions& options) {
  require_dimension(n);
  GeometryContext ctx;
  ctx.n = n;
  ctx.g.assign(n, std::vector<Expr>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ctx.g[i][j] = Expr::y(i, j);

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  ctx.det_g = leibniz_det(ctx.g, all, all);
  ctx.g_inv.assign(n, std::vector<Expr>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // (g^{-1})_ij = cofactor_ji / det
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r)
        if (r != j) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cols.push_back(c);
      Expr cof = n == 1 ? Expr(1) : leibniz_det(ctx.g, rows, cols);
      if ((i + j) % 2) cof = -cof;
      ctx.g_inv[i][j] = quotient(cof, ctx.det_g);
    }

  ctx.theta.entries = MatrixForm(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, Expr>> parts{{metric_slot(i, j), Expr(1)}};
      for (int k = 0; k < n; ++k) parts.emplace_back(base_slot(k), -Expr::y_jet(i, j, k));
      ctx.theta.entries.set(i, j, one_form(parts));
    }
  ctx.vartheta = left_multiply(ctx.g_inv, ctx.theta.entries);

  const Expr half(Rational(1, 2));
  const Expr sign = options.corrupt_christoffel_sign ? Expr(-1) : Expr(1);
  ctx.gamma.resize(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k < j) {
          ctx.gamma[(i * n + j) * n + k] = ctx.christoffel(i, k, j);
          continue;
        }
        std::vector<Expr> terms;
        for (int a = 0; a < n; ++a)
          terms.push_back(ctx.g_inv[i][a] * (Expr::y_jet(a, j, k) + Expr::y_jet(a, k, j) - Expr::y_jet(j, k, a)));
        ctx.gamma[(i * n + j) * n + k] = sign * half * sum(std::move(terms));
      }

  ctx.omega_hor = MatrixForm(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, Expr>> parts;
      for (int k = 0; k < n; ++k) parts.emplace_back(base_slot(k), ctx.christoffel(i, j, k));
      ctx.omega_hor.set(i, j, one_form(parts));
    }
  ctx.omega_univ = ctx.omega_hor + scale(half, ctx.vartheta);

  Differentiator d;
  ctx.curvature_hor = curvature_of(ctx.omega_hor, d);
  ctx.curvature_univ = curvature_of(ctx.omega_univ, d);
  return ctx;
}

BilinearValuedForm nabla_g(const GeometryContext& ctx, const MatrixForm& conn) {
  if (conn.degree() != 1 && !conn.is_zero()) throw DegreeMismatch("nabla_g expects a connection of 1-forms");
  if (conn.size() != ctx.n) throw DimensionMismatch("connection size differs from the context dimension");
  const int n = ctx.n;
  BilinearValuedForm out{MatrixForm(n, 1)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FormAccumulator<Expr> acc(1);
      acc.add(SlotMask{1} << metric_slot(i, j), Expr(1));
      for (int a = 0; a < n; ++a) {
        acc.add(scale(ctx.g[a][j], conn(a, i)), true);
        acc.add(scale(ctx.g[a][i], conn(a, j)), true);
      }
      out.entries.set(i, j, acc.finish());
    }
  return out;
}

MatrixForm lower_index(const GeometryContext& ctx, const MatrixForm& a) { return left_multiply(ctx.g, a); }

BilinearValuedForm trace_vartheta_g(const GeometryContext& ctx) {
  DiffForm tr = trace(ctx.vartheta);
  BilinearValuedForm out{MatrixForm(ctx.n, 1)};
  for (int i = 0; i < ctx.n; ++i)
    for (int j = 0; j < ctx.n; ++j) out.entries.set(i, j, scale(ctx.g[i][j], tr));
  return out;
}

MatrixForm curvature_hor_expansion(const GeometryContext& ctx) {
  const int n = ctx.n;
  Differentiator d;
  MatrixForm out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FormAccumulator<Expr> acc(2);
      for (int k = 0; k < n; ++k)
        acc.add(wedge(dext(DiffForm::scalar(ctx.christoffel(i, j, k)), d), DiffForm::basis(base_slot(k))));
      for (int a = 0; a < n; ++a)
        for (int s = 0; s < n; ++s)
          for (int r = 0; r < n; ++r) {
            if (s == r) continue;
            Expr c = ctx.christoffel(i, a, s) * ctx.christoffel(a, j, r);
            // dx^s ^ dx^r with s > r is -dx^r ^ dx^s
            const SlotMask key = (SlotMask{1} << base_slot(s)) | (SlotMask{1} << base_slot(r));
            acc.add(key, s < r ? c : -c);
          }
      out.set(i, j, acc.finish());
    }
  return out;
}

MatrixForm curvature_identity_rhs(const GeometryContext& ctx, const Rational& c) {
  return antisym_part(ctx.curvature_hor, ctx.g, ctx.g_inv) + scale(Expr(c), mat_wedge(ctx.vartheta, ctx.vartheta));
}

MatrixForm random_connection_perturbation(int n, Rng& rng) {
  const auto& slots = active_slots(n);
  MatrixForm out(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, Expr>> parts;
      for (int t = 0; t < 3; ++t) {
        const int slot = slots[rng.uniform_int(0, static_cast<std::int64_t>(slots.size()) - 1)];
        const int var = slots[rng.uniform_int(0, static_cast<std::int64_t>(slots.size()) - 1)];
        Expr c = Expr(rng.uniform_rational(Rational(-3), Rational(3), 3));
        if (rng.uniform_int(0, 1)) c = c * Expr::slot(var);
        parts.emplace_back(slot, c);
      }
      out.set(i, j, one_form(parts));
    }
  return out;
}

CheckOutcome compare_matrix_forms(const MatrixForm& a, const MatrixForm& b, int n, CheckMode mode,
                                  const CheckSettings& settings) {
  if (mode == CheckMode::Auto) mode = CheckMode::Symbolic;
  if (mode == CheckMode::Symbolic) return from_identity(forms_identical(a, b, identity_settings(settings, n)), 1);

  CheckOutcome out;
  out.mode = CheckMode::Sampled;
  Rng rng(settings.seed);
  const int degree = std::max(a.degree(), b.degree());
  for (int s = 0; s < settings.samples; ++s) {
    JetPoint point = JetPoint::random(n, rng);
    std::vector<TangentVector> vectors = random_tangents(n, degree, rng);
    Evaluator ev(point);
    ++out.cases;
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < a.size(); ++j) {
        FormValue va = evaluate_at(a(i, j), ev), vb = evaluate_at(b(i, j), ev);
        if (va.terms() == vb.terms()) continue;
        out.passed = false;
        out.detail = "entry " + entry_label(i, j) + " differs at sample " + std::to_string(s);
        out.witness = {{"point", to_json(point)},
                       {"vectors", to_json(vectors)},
                       {"entry", entry_label(i, j)},
                       {"lhs", to_json(va)},
                       {"rhs", to_json(vb)},
                       {"lhs_on_vectors", to_fraction_string(evaluate(va, vectors))},
                       {"rhs_on_vectors", to_fraction_string(evaluate(vb, vectors))}};
        return out;
      }
  }
  return out;
}

CheckOutcome check_metric_compatibility(const GeometryContext& ctx, const CheckSettings& settings) {
  const CheckMode mode = resolve_mode(settings.mode, ctx.n, 3);
  return compare_matrix_forms(nabla_g(ctx, ctx.omega_univ).entries, MatrixForm(ctx.n, 1), ctx.n, mode, settings);
}

CheckOutcome check_horizontal_nabla(const GeometryContext& ctx, const CheckSettings& settings) {
  const CheckMode mode = resolve_mode(settings.mode, ctx.n, 3);
  return compare_matrix_forms(nabla_g(ctx, ctx.omega_hor).entries, ctx.theta.entries, ctx.n, mode, settings);
}

CheckOutcome check_christoffel_jets(const GeometryContext& ctx, const CheckSettings& settings) {
  const int n = ctx.n;
  // One 0-form matrix per k, compared entrywise.
  MatrixForm lhs(n * n, 0), rhs(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Expr> terms;
        for (int a = 0; a < n; ++a) {
          terms.push_back(ctx.g[a][j] * ctx.christoffel(a, k, i));
          terms.push_back(ctx.g[a][i] * ctx.christoffel(a, k, j));
        }
        lhs.set(i * n + j, k, DiffForm::scalar(Expr::y_jet(i, j, k)));
        rhs.set(i * n + j, k, DiffForm::scalar(sum(std::move(terms))));
      }
  return compare_matrix_forms(lhs, rhs, n, resolve_mode(settings.mode, n, 3), settings);
}

CheckOutcome check_christoffel_symmetry(const GeometryContext& ctx, const CheckSettings& settings) {
  const int n = ctx.n;
  MatrixForm lhs(n * n, 0), rhs(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        lhs.set(i * n + j, k, DiffForm::scalar(ctx.christoffel(i, j, k)));
        rhs.set(i * n + j, k, DiffForm::scalar(ctx.christoffel(i, k, j)));
      }
  return compare_matrix_forms(lhs, rhs, n, resolve_mode(settings.mode, n, 3), settings);
}

CheckOutcome verify_lemasym(const GeometryContext& ctx, const MatrixForm& alpha, const CheckSettings& settings) {
  MatrixForm lhs = nabla_g(ctx, ctx.omega_hor + alpha).entries;
  MatrixForm rhs = ctx.theta.entries - scale(Expr(2), lower_index(ctx, sym_part(alpha, ctx.g, ctx.g_inv)));
  return compare_matrix_forms(lhs, rhs, ctx.n, resolve_mode(settings.mode, ctx.n, 3), settings);
}

CheckOutcome verify_curvature_identity(const GeometryContext& ctx, const CheckSettings& settings, const Rational& c) {
  CheckOutcome main = compare_matrix_forms(ctx.curvature_univ, curvature_identity_rhs(ctx, c), ctx.n,
                                           resolve_mode(settings.mode, ctx.n, 2), settings);
  if (!main.passed) {
    main.detail = "curvature identity: " + main.detail;
    return main;
  }
  CheckOutcome cross = compare_matrix_forms(ctx.curvature_hor, curvature_hor_expansion(ctx), ctx.n,
                                            resolve_mode(settings.mode, ctx.n, 3), settings);
  if (!cross.passed) {
    cross.detail = "horizontal curvature expansion: " + cross.detail;
    return cross;
  }
  main.detail = std::string("horizontal curvature cross-check ") + to_string(cross.mode);
  return main;
}

CheckOutcome refute_curvature_coefficient(const GeometryContext& ctx, const Rational& c) {
  const JetPoint z0 = JetPoint::normal(ctx.n);
  const std::vector<TangentVector> vs{TangentVector::along(JetCoordinate::metric(0, 0)),
                                      TangentVector::along(JetCoordinate::metric(0, 1))};
  const Rational lhs = evaluate(ctx.curvature_univ(0, 1), z0, vs);
  const Rational rhs = evaluate(curvature_identity_rhs(ctx, c)(0, 1), z0, vs);
  CheckOutcome out;
  out.passed = lhs != rhs;
  out.mode = CheckMode::Sampled;
  out.cases = 1;
  out.detail = "entry (1,2) on (d/dy11, d/dy12) at the normal point: curvature " + to_fraction_string(lhs) +
               ", candidate right-hand side with coefficient " + to_fraction_string(c) + " gives " +
               to_fraction_string(rhs);
  out.witness = {{"point", to_json(z0)},
                 {"vectors", to_json(vs)},
                 {"entry", "(1,2)"},
                 {"curvature", to_fraction_string(lhs)},
                 {"candidate", to_fraction_string(rhs)},
                 {"coefficient", to_fraction_string(c)}};
  return out;
}

UniquenessResult verify_uniqueness_family(const GeometryContext& ctx, const Rational& lambda, const Rational& mu,
                                          const CheckSettings& settings) {
  const int n = ctx.n;
  const DiffForm tr = trace(ctx.vartheta);
  MatrixForm tr_id(n, 1);
  for (int i = 0; i < n; ++i) tr_id.set(i, i, tr);
  MatrixForm conn = ctx.omega_univ + scale(Expr(lambda), ctx.vartheta) + scale(Expr(mu), tr_id);

  UniquenessResult out;
  out.nabla = nabla_g(ctx, conn);
  MatrixForm expected =
      scale(Expr(-2), scale(Expr(lambda), ctx.theta.entries) + scale(Expr(mu), trace_vartheta_g(ctx).entries));
  out.check = compare_matrix_forms(out.nabla.entries, expected, n, resolve_mode(settings.mode, n, 3), settings);

  // Nonzero witness: first nonvanishing coefficient at the normal point,
  // which is the value on the corresponding coordinate vector.
  const JetPoint z0 = JetPoint::normal(n);
  Evaluator ev(z0);
  for (int i = 0; i < n && !out.nonzero; ++i)
    for (int j = 0; j < n && !out.nonzero; ++j) {
      FormValue v = evaluate_at(out.nabla(i, j), ev);
      if (v.is_zero()) continue;
      const auto& [key, value] = *v.terms().begin();
      TangentVector e = TangentVector::along(JetCoordinate::from_slot(std::countr_zero(key)));
      out.nonzero = true;
      out.witness = {{"point", to_json(z0)},
                     {"entry", entry_label(i, j)},
                     {"vector", to_json(e)},
                     {"value", to_fraction_string(value)}};
    }
  return out;
}

}  // namespace jetlc

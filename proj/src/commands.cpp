#include "jetlc/commands.hpp"

#include <map>

#include "jetlc/charforms.hpp"
#include "jetlc/invariant_theory.hpp"
#include "jetlc/serialize.hpp"

namespace jetlc {

namespace {

nlohmann::json fraction_matrix(const std::vector<std::vector<Rational>>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_fraction_string(v));
    out.push_back(r);
  }
  return out;
}

std::vector<std::vector<Rational>> on_vectors(const MatrixFormValue& m, std::span<const TangentVector> vs) {
  if (static_cast<int>(vs.size()) != m.degree())
    throw InputError("this form has degree " + std::to_string(m.degree()) + " but " + std::to_string(vs.size()) +
                     " vectors were given");
  std::vector<std::vector<Rational>> out(m.size(), std::vector<Rational>(m.size()));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out[i][j] = evaluate(m(i, j), vs);
  return out;
}

// "p_k" or "pk"; -1 if malformed
int pontryagin_index(const std::string& form) {
  if (form.empty() || form[0] != 'p') return -1;
  std::string digits = form.substr(1);
  if (!digits.empty() && digits[0] == '_') digits.erase(0, 1);
  if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos) return -1;
  return std::stoi(digits);
}

}  // namespace

nlohmann::json eval_form(const std::string& form, const nlohmann::json& point, const nlohmann::json& vectors) {
  const JetPoint z = point_from_json(point);
  if (!vectors.is_array()) throw InputError("vectors must be a JSON array of tangent vectors");
  std::vector<TangentVector> vs;
  for (const auto& v : vectors) vs.push_back(tangent_from_json(v));
  const int n = z.dimension();
  for (const auto& v : vs)
    for (const auto& [slot, c] : v.components)
      if (!JetCoordinate::from_slot(slot).active_in(n))
        throw InputError("vector component " + JetCoordinate::from_slot(slot).name() +
                         " is not a coordinate for n = " + std::to_string(n));

  const GeometryContext ctx = build_context(n);
  nlohmann::json out;
  out["form"] = form;
  out["dimension"] = n;
  out["point"] = to_json(z);
  out["vectors"] = to_json(vs);

  const std::map<std::string, const MatrixForm*> matrix_forms{{"theta", &ctx.theta.entries},
                                                              {"vartheta", &ctx.vartheta},
                                                              {"omega_hor", &ctx.omega_hor},
                                                              {"omega", &ctx.omega_univ},
                                                              {"curvature", &ctx.curvature_univ}};
  if (auto it = matrix_forms.find(form); it != matrix_forms.end()) {
    const MatrixFormValue value = evaluate_at(*it->second, z);
    out["two_pi_power"] = 0;
    out["value"] = fraction_matrix(on_vectors(value, vs));
    out["components"] = to_json(value);
    return out;
  }
  if (form == "euler_pf") {
    if (n % 2) throw InputError("euler_pf needs an even dimension");
    if (static_cast<int>(vs.size()) != n) throw InputError("euler_pf needs exactly n vectors");
    out["two_pi_power"] = -n / 2;
    out["det_g"] = to_fraction_string(determinant(z.metric()));
    out["value"] = to_fraction_string(euler_pf_on(ctx, z, vs));
    out["meaning"] = "E(v) = (2 pi)^two_pi_power * det_g^(-1/2) * value";
    return out;
  }
  if (const int k = pontryagin_index(form); k >= 1) {
    if (2 * k > n) throw InputError("p_" + std::to_string(k) + " needs 2k <= n");
    if (static_cast<int>(vs.size()) != 4 * k) throw InputError("p_k needs exactly 4k vectors");
    const MatrixFormValue curvature = evaluate_at(ctx.curvature_univ, z);
    out["two_pi_power"] = -2 * k;
    out["value"] = to_fraction_string(pontryagin_on(curvature, k, vs));
    if (k == 1) out["brute_force"] = to_fraction_string(pontryagin_first_bruteforce(curvature, vs));
    out["meaning"] = "p_k(v) = (2 pi)^two_pi_power * value";
    if (n == 2) out["components"] = to_json(char_coeff(k, curvature).form);
    return out;
  }
  throw InputError("unknown form '" + form + "' (expected theta, vartheta, omega_hor, omega, curvature, p_k, euler_pf)");
}

InvariantsResult invariants_command(int n, const std::string& group_name, const std::string& space) {
  if (n < 2 || n > 4) throw InputError("dimension must be 2, 3 or 4");
  Group group;
  try {
    group = parse_group(group_name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  InvariantsResult result;
  if (space == "E") {
    const TensorSpaceSpec spec = TensorSpaceSpec::module_e(n);
    const auto r = invariant_subspace(spec, group);
    const auto m = match_contraction_basis(n);
    result.json["invariants"] = to_json(spec, r);
    result.json["basis_match"] = to_json(spec, m);
    result.ok = r.residuals_zero && m.ok;
  } else if (space == "V4" && group == Group::O) {
    const auto q = quartic_invariants(n);
    result.json["invariants"] = to_json(q);
    result.ok = q.report.residuals_zero && q.xi_in_space;
  } else if (space == "V3" || space == "V4") {
    const TensorSpaceSpec spec(n, {space == "V3" ? Summand::V3 : Summand::V4});
    const auto r = invariant_subspace(spec, group);
    result.json["invariants"] = to_json(spec, r);
    result.ok = r.residuals_zero;
  } else {
    throw InputError("space must be E, V3 or V4");
  }
  return result;
}

}  // namespace jetlc

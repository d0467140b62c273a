#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace jetlc {

/// Bad user input to a command (unknown form, wrong vector count, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates a form (theta, vartheta, omega_hor, omega, curvature, p_k,
/// euler_pf) at a jet point on tangent vectors, both in their JSON forms.
nlohmann::json eval_form(const std::string& form, const nlohmann::json& point, const nlohmann::json& vectors);

struct InvariantsResult {
  nlohmann::json json;
  bool ok = false;
};

/// Invariants of E (with the basis match), V3 or V4 under O(n) or SO(n).
InvariantsResult invariants_command(int n, const std::string& group, const std::string& space = "E");

}  // namespace jetlc

#pragma once

#include <span>
#include <string>
#include <vector>

#include "jetlc/forms.hpp"
#include "jetlc/jet_point.hpp"
#include "json.hpp"

namespace jetlc {

/// Covector label for a basis key, e.g. "dx1^dy12,2"; the empty key is "1".
std::string basis_label(SlotMask key);

/// {"degree": p, "terms": {"<basis label>": "<num>/<den>", ...}}; keys sorted.
nlohmann::json to_json(const FormValue& f);
nlohmann::json to_json(const MatrixFormValue& m);
/// Symbolic forms: coefficients rendered as expressions.
nlohmann::json to_json(const DiffForm& f);

/// {"dimension": n, "coordinates": {"x1": "0/1", "y11": "1/1", ...}}
nlohmann::json to_json(const JetPoint& p);
/// Reads a point; coordinates not listed default to the normal point
/// (x = 0, y = identity, jets 0). Validates positive definiteness.
JetPoint point_from_json(const nlohmann::json& j);

/// {"x1": "1/1", "y12,2": "-1/2"} (zero components omitted)
nlohmann::json to_json(const TangentVector& v);
TangentVector tangent_from_json(const nlohmann::json& j);
nlohmann::json to_json(std::span<const TangentVector> vs);

nlohmann::json to_json(const RationalMatrix& m);

}  // namespace jetlc

#include "jetlc/serialize.hpp"

#include "jetlc/check.hpp"

namespace jetlc {

const char* to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::Auto: return "auto";
    case CheckMode::Symbolic: return "symbolic";
    case CheckMode::Sampled: return "sampled";
  }
  return "?";
}

std::string basis_label(SlotMask key) {
  std::string s;
  for (SlotMask k = key; k; k &= k - 1) {
    if (!s.empty()) s += '^';
    s += "d" + JetCoordinate::from_slot(std::countr_zero(k)).name();
  }
  return s.empty() ? "1" : s;
}

nlohmann::json to_json(const FormValue& f) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [k, c] : f.terms()) terms[basis_label(k)] = to_fraction_string(c);
  return {{"degree", f.degree()}, {"terms", terms}};
}

nlohmann::json to_json(const MatrixFormValue& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return {{"size", m.size()}, {"degree", m.degree()}, {"entries", rows}};
}

nlohmann::json to_json(const DiffForm& f) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [k, c] : f.terms()) terms[basis_label(k)] = to_string(c);
  return {{"degree", f.degree()}, {"terms", terms}};
}

nlohmann::json to_json(const JetPoint& p) {
  nlohmann::json coords = nlohmann::json::object();
  for (int s : active_slots(p.dimension())) coords[JetCoordinate::from_slot(s).name()] = to_fraction_string(p[s]);
  return {{"dimension", p.dimension()}, {"coordinates", coords}};
}

namespace {

Rational rational_from_json(const nlohmann::json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(what + ": expected a fraction string");
}

}  // namespace

JetPoint point_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dimension")) throw ParseError("point: expected an object with 'dimension'");
  const int n = j.at("dimension").get<int>();
  require_dimension(n);
  JetPoint p = JetPoint::normal(n);
  if (j.contains("coordinates")) {
    for (const auto& [name, value] : j.at("coordinates").items()) {
      JetCoordinate c = JetCoordinate::parse(name);
      if (!c.active_in(n)) throw ParseError("point: coordinate " + name + " is not active in dimension " + std::to_string(n));
      p.set(c, rational_from_json(value, "point coordinate " + name));
    }
  }
  p.validated();
  return p;
}

nlohmann::json to_json(const TangentVector& v) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [slot, c] : v.components)
    if (!is_zero(c)) j[JetCoordinate::from_slot(slot).name()] = to_fraction_string(c);
  return j;
}

TangentVector tangent_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("tangent vector: expected an object of coordinate -> fraction");
  TangentVector v;
  for (const auto& [name, value] : j.items()) {
    Rational c = rational_from_json(value, "tangent component " + name);
    if (!is_zero(c)) v.components[JetCoordinate::parse(name).slot()] = c;
  }
  return v;
}

nlohmann::json to_json(std::span<const TangentVector> vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : m) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : r) row.push_back(to_fraction_string(c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jetlc

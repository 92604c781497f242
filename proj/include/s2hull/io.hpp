#pragma once

// JSON records for points, cuts and reports.

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "s2hull/core.hpp"
#include "s2hull/hull.hpp"
#include "s2hull/oracle.hpp"
#include "s2hull/separation.hpp"

namespace s2hull::io {

using nlohmann::json;

/// Malformed input record.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline const json& array_of(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != n)
    throw ParseError(std::string("\"") + key + "\" must be an array of length " +
                     std::to_string(n));
  return a;
}

}  // namespace detail

/// {"x":[x1,x2],"X":[[X11,X12],[X12,X22]],"z":[z1,z2]}
inline HullPoint point_from_json(const json& j, const Tolerances& tol = {}) {
  if (!j.is_object()) throw ParseError("point record must be a JSON object");
  const json& x = detail::array_of(j, "x", 2);
  const json& z = detail::array_of(j, "z", 2);
  const json& X = detail::array_of(j, "X", 2);
  for (const json& row : X)
    if (!row.is_array() || row.size() != 2) throw ParseError("\"X\" must be 2x2");
  const double X12 = detail::number(X[0][1], "X[0][1]");
  const double X21 = detail::number(X[1][0], "X[1][0]");
  if (std::abs(X12 - X21) > tol.eq) throw ParseError("\"X\" is not symmetric");
  return {detail::number(x[0], "x[0]"),  detail::number(x[1], "x[1]"),
          detail::number(X[0][0], "X[0][0]"), X12,
          detail::number(X[1][1], "X[1][1]"), detail::number(z[0], "z[0]"),
          detail::number(z[1], "z[1]")};
}

inline HullPoint point_from_string(const std::string& line, const Tolerances& tol = {}) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return point_from_json(j, tol);
}

inline json to_json(const HullPoint& p) {
  return {{"x", {p.x1, p.x2}}, {"X", {{p.X11, p.X12}, {p.X12, p.X22}}}, {"z", {p.z1, p.z2}}};
}

/// Finite values as numbers, +inf as the string "+inf".
inline json to_json(const ExtReal& v) {
  if (v.is_infinite()) return "+inf";
  return v.value();
}

inline json slack_json(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

inline json to_json(const Cut& c) {
  json coeffs = json::object();
  for (std::size_t i = 0; i < HullPoint::kDim; ++i)
    coeffs[std::string(HullPoint::kNames[i])] = c.coeffs[i];
  return {{"coeffs", coeffs},
          {"constant", c.constant},
          {"touch", to_json(c.touch)},
          {"region", std::string(to_string(c.region))}};
}

inline Cut cut_from_json(const json& j, const Tolerances& tol = {}) {
  if (!j.is_object() || !j.contains("coeffs") || !j.contains("constant") || !j.contains("touch"))
    throw ParseError("cut record needs coeffs, constant and touch");
  Cut c;
  for (std::size_t i = 0; i < HullPoint::kDim; ++i) {
    const std::string key(HullPoint::kNames[i]);
    if (!j["coeffs"].contains(key)) throw ParseError("missing coefficient " + key);
    c.coeffs[i] = detail::number(j["coeffs"][key], key.c_str());
  }
  c.constant = detail::number(j["constant"], "constant");
  c.touch = point_from_json(j["touch"], tol);
  if (j.contains("region")) {
    const auto r = region_from_string(j["region"].get<std::string>());
    if (!r) throw ParseError("unknown region tag");
    c.region = *r;
  }
  return c;
}

inline json to_json(const MembershipReport& r, bool full) {
  json j = {{"member", r.member},
            {"region", std::string(to_string(r.region))},
            {"violated", r.violated}};
  if (full) {
    j["system"] = std::string(to_string(r.system));
    j["worst_slack"] = slack_json(r.worst_slack);
    if (r.W) j["W"] = to_json(*r.W);
    j["oracle_fallback"] = r.oracle_fallback;
  }
  return j;
}

inline json to_json(const OracleWitness& w) {
  return {{"xt41", w.xt41}, {"xt42", w.xt42}, {"lambda4", w.lambda4}};
}

inline json to_json(const SeparationResult& s) {
  if (s.inside) return {{"inside", true}};
  json j = to_json(*s.cut);
  j["inside"] = false;
  return j;
}

}  // namespace s2hull::io

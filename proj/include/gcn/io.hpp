#pragma once

#include <gcn/geometry.hpp>
#include <gcn/poisedness.hpp>
#include <gcn/usage.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <variant>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcn {

using Json = nlohmann::json;

/// Malformed or semantically invalid serialized input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational: ") + e.what());
    }
  }
  if (j.is_number_integer()) {
    Rational r;
    r = j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<std::uint64_t>())))
                               : Rational(Integer(std::to_string(j.get<std::int64_t>())));
    return r;
  }
  throw InputError("bad rational: expected a string \"p/q\" or an integer, got " + j.dump());
}

inline Json to_json(const Node& p) { return Json{{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Node node_from_json(const Json& j) {
  return Node{rational_from_json(field(j, "x")), rational_from_json(field(j, "y"))};
}

inline Json to_json(const Line& l) { return Json{{"a", l.a().get_str()}, {"b", l.b().get_str()}, {"c", l.c().get_str()}}; }

inline Line line_from_json(const Json& j) {
  try {
    return Line::from_rational(rational_from_json(field(j, "a")), rational_from_json(field(j, "b")),
                               rational_from_json(field(j, "c")));
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
}

/// Accepts a bare array of lines or an object {"lines": [...]}.
inline std::vector<Line> lines_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "lines") : j;
  if (!arr.is_array()) throw InputError("expected an array of lines");
  std::vector<Line> out;
  for (const auto& e : arr) out.push_back(line_from_json(e));
  return out;
}

inline Json to_json(const NodeSet& X) {
  Json nodes = Json::array();
  for (const auto& p : X.nodes()) nodes.push_back(to_json(p));
  return Json{{"degree", X.degree()}, {"nodes", nodes}};
}

inline NodeSet nodeset_from_json(const Json& j) {
  const Json& d = field(j, "degree");
  if (!d.is_number_integer() || d.get<std::int64_t>() < 0 || d.get<std::int64_t>() > 64) {
    throw InputError("degree must be a small non-negative integer");
  }
  const Json& arr = field(j, "nodes");
  if (!arr.is_array()) throw InputError("'nodes' must be an array");
  std::vector<Node> nodes;
  for (const auto& e : arr) nodes.push_back(node_from_json(e));
  try {
    return NodeSet(static_cast<int>(d.get<std::int64_t>()), std::move(nodes));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline Json to_json(const Poly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"degree", p.max_degree()}, {"coeffs", coeffs}};
}

inline Poly poly_from_json(const Json& j) {
  const Json& d = field(j, "degree");
  if (!d.is_number_integer() || d.get<std::int64_t>() < 0 || d.get<std::int64_t>() > 64) {
    throw InputError("polynomial degree must be a small non-negative integer");
  }
  const int degree = static_cast<int>(d.get<std::int64_t>());
  const Json& arr = field(j, "coeffs");
  if (!arr.is_array() || arr.size() != dim_pi(degree)) {
    throw InputError("'coeffs' must hold dim Pi_degree entries");
  }
  std::vector<Rational> coeffs;
  for (const auto& e : arr) coeffs.push_back(rational_from_json(e));
  return Poly(degree, std::move(coeffs));
}

inline Json to_json(const UsageSet& u) {
  Json j{{"users", u.users}, {"non_users_off_curve", u.non_users_off_curve}, {"on_curve", u.on_curve}};
  if (const auto* l = std::get_if<Line>(&u.curve)) {
    j["line"] = to_json(*l);
  } else {
    j["curve"] = to_json(std::get<Poly>(u.curve));
  }
  return j;
}

inline Json to_json(const GcReport& r) {
  Json nodes = Json::array();
  for (const auto& f : r.nodes) {
    Json lines = Json::array();
    for (const auto& l : f.lines) lines.push_back(to_json(l));
    Json e{{"node", f.node}, {"lines", lines}, {"resolved", f.resolved}};
    if (!f.resolved) {
      e["residual"] = to_json(f.residual);
      e["certified_line_free"] = f.certified_line_free;
    }
    nodes.push_back(std::move(e));
  }
  return Json{{"status", to_string(r.status)}, {"nodes", nodes}};
}

inline Json to_json(const DependenceWitness& w) {
  Json j{{"kind", to_string(w.kind)}, {"nodes", w.nodes}, {"partial", w.partial}};
  if (w.line) j["line"] = to_json(*w.line);
  if (w.curve) j["curve"] = to_json(*w.curve);
  return j;
}

inline Json to_json(const MaximalCurveReport& r) {
  return Json{{"curve_degree", r.curve_degree},       {"nodes_on_curve", r.nodes_on_curve},
              {"required", r.required},               {"is_maximal", r.is_maximal},
              {"n_q_empty", r.n_q_empty},             {"complement_poised", r.complement_poised},
              {"consistent", r.consistent},           {"squarefree", to_string(r.squarefree)},
              {"n_q", r.n_q}};
}

/// 64-bit FNV-1a over the compact NodeSet JSON, as 16 hex digits.
inline std::string fingerprint(const NodeSet& X) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(X).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace gcn

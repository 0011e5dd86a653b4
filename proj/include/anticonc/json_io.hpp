#pragma once

#include "json.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include "anticonc/bounds.hpp"
#include "anticonc/chains.hpp"
#include "anticonc/coloring.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/graph.hpp"
#include "anticonc/lattice_measure.hpp"
#include "anticonc/odd_hole.hpp"
#include "anticonc/rational.hpp"

namespace anticonc::json_io {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return to_string(r); }

// Rationals are read from "p/q" strings, decimal strings or JSON integers.
inline Rational rational_from(const json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
      throw input_error("field '" + field + "': " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw input_error("field '" + field + "' must be a rational string such as \"3/8\"");
}

inline const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw input_error("'" + where + "' must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw input_error("missing field '" + (where.empty() ? key : where + "." + key) + "'");
  return *it;
}

inline std::size_t size_from(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw input_error("field '" + field + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

// ---- lattice measures

inline json to_json(const lattice_measure& m) {
  json w = json::array();
  for (const auto& x : m.weights()) w.push_back(to_string(x));
  return {{"offset_index", m.offset_index()}, {"weights", w}};
}

inline lattice_measure lattice_measure_from(const json& j) {
  const json& off = require(j, "offset_index", "");
  if (!off.is_number_integer()) throw input_error("field 'offset_index' must be an integer");
  const json& w = require(j, "weights", "");
  if (!w.is_array() || w.empty()) throw input_error("field 'weights' must be a nonempty array");
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(rational_from(w[i], "weights[" + std::to_string(i) + "]"));
  return lattice_measure(off.get<long>(), weights);
}

// ---- norms, points, measures

inline json to_json(const norm_spec& n) {
  switch (n.kind) {
    case norm_kind::l2: return "l2";
    case norm_kind::l1: return "l1";
    case norm_kind::linf: return "linf";
    case norm_kind::lp: return {{"lp", std::to_string(n.p) + "/1"}};
  }
  return nullptr;
}

inline norm_spec norm_from(const json& j, std::size_t dim) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "l2") return norm_spec::l2(dim);
    if (s == "l1") return norm_spec::l1(dim);
    if (s == "linf") return norm_spec::linf(dim);
    throw input_error("field 'norm': unknown norm '" + s + "'");
  }
  if (j.is_object() && j.contains("lp")) {
    Rational p = rational_from(j["lp"], "norm.lp");
    if (p.get_den() != 1 || p < 1) throw input_error("field 'norm.lp': only integer exponents p >= 1 are supported");
    return norm_spec::lp(dim, static_cast<unsigned>(p.get_num().get_ui()));
  }
  throw input_error("field 'norm' must be \"l2\", \"l1\", \"linf\" or {\"lp\": \"p/1\"}");
}

inline json to_json(const point<Rational>& x) {
  json out = json::array();
  for (const auto& c : x) out.push_back(to_string(c));
  return out;
}

inline point<Rational> point_from(const json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) throw input_error("field '" + field + "' must be an array of coordinates");
  if (j.size() != dim)
    throw input_error("field '" + field + "' has " + std::to_string(j.size()) + " coordinates, expected " + std::to_string(dim));
  point<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline json to_json(const std::vector<point<Rational>>& pts) {
  json out = json::array();
  for (const auto& x : pts) out.push_back(to_json(x));
  return out;
}

inline norm_spec header_from(const json& j) {
  std::size_t dim = size_from(require(j, "dim", ""), "dim");
  if (dim == 0) throw input_error("field 'dim' must be >= 1");
  return norm_from(require(j, "norm", ""), dim);
}

inline json to_json(const vector_measure<Rational>& m) {
  json atoms = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) atoms.push_back({{"point", to_json(m.points()[i])}, {"weight", to_string(m.weights()[i])}});
  return {{"norm", to_json(m.norm())}, {"dim", m.norm().dimension}, {"atoms", atoms}};
}

inline vector_measure<Rational> vector_measure_from(const json& j, const std::string& where = "") {
  norm_spec norm = header_from(j);
  const json& atoms = require(j, "atoms", where);
  if (!atoms.is_array() || atoms.empty()) throw input_error("field 'atoms' must be a nonempty array");
  std::vector<point<Rational>> pts;
  std::vector<Rational> ws;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string f = "atoms[" + std::to_string(i) + "]";
    pts.push_back(point_from(require(atoms[i], "point", f), norm.dimension, f + ".point"));
    ws.push_back(rational_from(require(atoms[i], "weight", f), f + ".weight"));
  }
  return vector_measure<Rational>(norm, pts, ws);
}

inline json to_json(const point_config<Rational>& c) {
  json atoms = json::array();
  for (const auto& x : c.points) atoms.push_back({{"point", to_json(x)}});
  return {{"norm", to_json(c.norm)}, {"dim", c.norm.dimension}, {"atoms", atoms}};
}

// Point configurations: the measure layout without weights ("atoms": [{"point": ...}]),
// or a bare "points": [[...], ...] list. Duplicates are kept.
inline point_config<Rational> point_config_from(const json& j) {
  norm_spec norm = header_from(j);
  std::vector<point<Rational>> pts;
  if (j.contains("atoms")) {
    const json& atoms = j["atoms"];
    if (!atoms.is_array()) throw input_error("field 'atoms' must be an array");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string f = "atoms[" + std::to_string(i) + "]";
      pts.push_back(point_from(require(atoms[i], "point", f), norm.dimension, f + ".point"));
    }
  } else {
    const json& list = require(j, "points", "");
    if (!list.is_array()) throw input_error("field 'points' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      pts.push_back(point_from(list[i], norm.dimension, "points[" + std::to_string(i) + "]"));
  }
  return point_config<Rational>(norm, pts);
}

// ---- graphs and certificates

inline json to_json(const dist_graph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return {{"n", g.size()}, {"edges", edges}};
}

inline dist_graph graph_from(const json& j) {
  std::size_t n = size_from(require(j, "n", ""), "n");
  dist_graph g(n);
  const json& edges = require(j, "edges", "");
  if (!edges.is_array()) throw input_error("field 'edges' must be an array");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string f = "edges[" + std::to_string(e) + "]";
    if (!edges[e].is_array() || edges[e].size() != 2) throw input_error("field '" + f + "' must be a pair [i, j]");
    std::size_t a = size_from(edges[e][0], f + "[0]"), b = size_from(edges[e][1], f + "[1]");
    if (a >= n || b >= n || a == b) throw input_error("field '" + f + "' is not an edge between distinct vertices < n");
    g.add_edge(a, b);
  }
  return g;
}

inline json to_json(const coloring_certificate& c) { return {{"colors", c.num_colors}, {"classes", c.classes}}; }

inline json to_json(const hole_witness& h) { return {{"cycle", h.cycle}, {"in_complement", h.in_complement}}; }

// ---- frames and chains

inline json to_json(const line_frame& f) {
  return {{"norm", to_json(f.norm)},
          {"direction", to_json(f.direction)},
          {"base_point", to_json(f.base_point)},
          {"functional", to_json(f.functional)},
          {"scale_power", to_string(f.scale_power)},
          {"scale_exponent", f.norm.exponent()}};
}

inline json to_json(const block& b) { return to_json(b.points()); }

inline json to_json(const chain_decomposition& d) {
  json out = json::array();
  for (const auto& c : d.chains) out.push_back(to_json(c));
  return out;
}

// ---- reports

inline json to_json(const condition_check& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

inline json to_json(const std::vector<condition_check>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

// "1/2,1/3" with optional repetition "1/2*400".
inline std::vector<Rational> parse_alpha_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      std::size_t star = item.find('*');
      Rational value = parse_rational(item.substr(0, star));
      std::size_t repeat = 1;
      if (star != std::string::npos) {
        try {
          repeat = static_cast<std::size_t>(std::stoull(item.substr(star + 1)));
        } catch (const std::exception&) {
          throw input_error("bad repetition count in '" + item + "'");
        }
      }
      out.insert(out.end(), repeat, value);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw input_error("alpha list is empty");
  return out;
}

}  // namespace anticonc::json_io

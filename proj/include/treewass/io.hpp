#pragma once

// JSON encodings. Rationals always travel as "p/q" strings; edges are named
// by their position in the tree's edge list and vertices by their ids.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "treewass/measure.hpp"
#include "treewass/radon.hpp"
#include "treewass/transport.hpp"
#include "treewass/tree.hpp"

namespace treewass::io {

using json = nlohmann::json;

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("rationals must be encoded as \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

inline std::string vertex_name_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("vertex ids must be strings or integers");
}

inline std::size_t index_from_json(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline json read_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("cannot open '" + filename + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

// ---- trees

inline TreeDescription tree_description_from_json(const json& j) {
  TreeDescription d;
  const json& vs = field(j, "vertices");
  const json& es = field(j, "edges");
  if (!vs.is_array() || !es.is_array()) throw ParseError("'vertices' and 'edges' must be arrays");
  for (const json& v : vs) d.vertices.push_back(vertex_name_from_json(v));
  for (const json& e : es) {
    EdgeSpec spec;
    spec.u = vertex_name_from_json(field(e, "u"));
    const json& v = field(e, "v");
    if (!v.is_null()) spec.v = vertex_name_from_json(v);
    const json& len = field(e, "len");
    if (!len.is_string()) throw ParseError("edge length must be a string");
    if (len.get<std::string>() != "inf") spec.length = parse_rational(len.get<std::string>());
    d.edges.push_back(std::move(spec));
  }
  return d;
}

inline Tree tree_from_json(const json& j) { return Tree::build(tree_description_from_json(j)); }

inline json to_json(const TreeDescription& d) {
  json j;
  j["vertices"] = d.vertices;
  j["edges"] = json::array();
  for (const EdgeSpec& e : d.edges)
    j["edges"].push_back({{"u", e.u},
                          {"v", e.v ? json(*e.v) : json(nullptr)},
                          {"len", e.length ? format_rational(*e.length) : std::string("inf")}});
  return j;
}

inline TreeDescription describe(const Tree& tree) {
  TreeDescription d;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) d.vertices.push_back(tree.name(vertex_id(v)));
  for (std::size_t i = 0; i < tree.edge_count(); ++i) {
    const Edge& e = tree.edge(edge_id(i));
    d.edges.push_back({tree.name(e.u), e.v ? std::optional<std::string>(tree.name(*e.v)) : std::nullopt, e.length});
  }
  return d;
}

inline json to_json(const Tree& tree) { return to_json(describe(tree)); }

// ---- points and measures

/// Vertices are written as offset 0 on an incident edge where they are the
/// `u` endpoint, falling back to the far end of an edge they terminate.
inline json point_to_json(const Tree& tree, const TreePoint& p) {
  if (!p.is_vertex()) return {{"edge", index(p.edge())}, {"offset", format_rational(p.offset())}};
  for (EdgeId e : tree.incident(p.vertex()))
    if (tree.edge(e).u == p.vertex()) return {{"edge", index(e)}, {"offset", "0"}};
  const EdgeId e = tree.incident(p.vertex()).front();
  return {{"edge", index(e)}, {"offset", format_rational(*tree.edge(e).length)}};
}

inline TreePoint point_from_json(const Tree& tree, const json& j) {
  const std::size_t e = index_from_json(field(j, "edge"), "edge");
  return tree.point(edge_id(e), rational_from_json(field(j, "offset")));
}

inline json to_json(const Tree& tree, const Measure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) {
    json p = point_to_json(tree, a.location);
    p["mass"] = format_rational(a.mass);
    atoms.push_back(std::move(p));
  }
  return {{"atoms", atoms}};
}

inline Measure measure_from_json(const Tree& tree, const json& j) {
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw ParseError("'atoms' must be an array");
  std::vector<Atom> out;
  for (const json& a : atoms) out.push_back({point_from_json(tree, a), rational_from_json(field(a, "mass"))});
  return Measure::make(tree, out);
}

// ---- plans

inline json plan_to_json(const Tree& tree, const TransportPlan& plan) {
  json list = json::array();
  for (const Coupling& c : plan.couplings)
    list.push_back({{"src", point_to_json(tree, c.source)},
                    {"dst", point_to_json(tree, c.target)},
                    {"mass", format_rational(c.mass)}});
  return list;
}

inline std::vector<Coupling> plan_from_json(const Tree& tree, const json& j) {
  if (!j.is_array()) throw ParseError("plan must be an array");
  std::vector<Coupling> out;
  for (const json& c : j)
    out.push_back({point_from_json(tree, field(c, "src")), point_from_json(tree, field(c, "dst")),
                   rational_from_json(field(c, "mass"))});
  return out;
}

// ---- vertex functions and flag tables

inline json to_json(const Tree& tree, const VertexFunction& h) {
  json list = json::array();
  for (std::size_t v = 0; v < h.size(); ++v)
    list.push_back({{"vertex", tree.name(vertex_id(v))}, {"value", format_rational(h[vertex_id(v)])}});
  return list;
}

/// Vertices missing from the list take the value 0.
inline VertexFunction vertex_function_from_json(const Tree& tree, const json& j) {
  if (!j.is_array()) throw ParseError("vertex function must be an array");
  VertexFunction h(tree.vertex_count());
  std::vector<bool> seen(tree.vertex_count(), false);
  for (const json& entry : j) {
    const std::string name = vertex_name_from_json(field(entry, "vertex"));
    auto v = tree.find_vertex(name);
    if (!v) throw ParseError("unknown vertex '" + name + "'");
    if (seen[index(*v)]) throw ParseError("vertex '" + name + "' listed twice");
    seen[index(*v)] = true;
    h.set(*v, rational_from_json(field(entry, "value")));
  }
  return h;
}

inline json to_json(const Tree& tree, const FlagTable& table) {
  json list = json::array();
  for (const auto& [fl, value] : table)
    list.push_back({{"x", tree.name(fl.vertex)}, {"e", index(fl.e)}, {"f", index(fl.f)}, {"value", format_rational(value)}});
  return list;
}

inline FlagTable flag_table_from_json(const Tree& tree, const json& j) {
  if (!j.is_array()) throw ParseError("flag table must be an array");
  FlagTable table;
  for (const json& entry : j) {
    const std::string name = vertex_name_from_json(field(entry, "x"));
    auto v = tree.find_vertex(name);
    if (!v) throw ParseError("unknown vertex '" + name + "'");
    const Flag fl = make_flag(tree, *v, edge_id(index_from_json(field(entry, "e"), "e")),
                              edge_id(index_from_json(field(entry, "f"), "f")));
    if (!table.emplace(fl, rational_from_json(field(entry, "value"))).second) throw ParseError("duplicate flag in table");
  }
  return table;
}

inline json flag_to_json(const Tree& tree, const Flag& fl) {
  return {{"x", tree.name(fl.vertex)}, {"e", index(fl.e)}, {"f", index(fl.f)}};
}

inline json to_json(const Tree& tree, const Reconstruction& r) {
  json reads = json::array();
  for (const InteriorRead& read : r.interior_reads) {
    json p = point_to_json(tree, read.location);
    reads.push_back({{"edge", index(read.edge)}, {"via", flag_to_json(tree, read.via)}, {"point", p},
                     {"mass", format_rational(read.mass)}});
  }
  json subs = json::array();
  for (const FlagSubtraction& s : r.flag_subtractions)
    subs.push_back({{"flag", flag_to_json(tree, s.flag)},
                    {"flag_mass", format_rational(s.flag_mass)},
                    {"interior_mass", format_rational(s.interior_mass)},
                    {"vertex_value", format_rational(s.vertex_value)}});
  return {{"measure", to_json(tree, r.measure)},
          {"provenance",
           {{"interior_total", format_rational(r.interior_total)}, {"interior_reads", reads}, {"flag_subtractions", subs}}}};
}

}  // namespace treewass::io

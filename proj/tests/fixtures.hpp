#pragma once

#include "treewass/treewass.hpp"

namespace treewass::testing {

inline Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

/// Finite tripod: center o, leaves x, y, z, unit legs.
/// Edges: 0 = (o,x), 1 = (o,y), 2 = (o,z).
inline Tree tripod() {
  return Tree::build({{"o", "x", "y", "z"}, {{"o", "x", q(1)}, {"o", "y", q(1)}, {"o", "z", q(1)}}});
}

/// Complete star: center c joined to a, b, d by unit edges, two rays at each
/// of a, b, d. Edges: 0 = (c,a), 1 = (c,b), 2 = (c,d), 3,4 rays at a,
/// 5,6 rays at b, 7,8 rays at d.
inline Tree star3() {
  TreeDescription d{{"c", "a", "b", "d"}, {{"c", "a", q(1)}, {"c", "b", q(1)}, {"c", "d", q(1)}}};
  for (const char* leg : {"a", "a", "b", "b", "d", "d"}) d.edges.push_back({leg, std::nullopt, std::nullopt});
  return Tree::build(d);
}

inline VertexId v(const Tree& t, const std::string& name) { return *t.find_vertex(name); }
inline TreePoint at(const Tree& t, const std::string& name) { return t.vertex_point(v(t, name)); }
inline EdgeId E(std::size_t i) { return edge_id(i); }

}  // namespace treewass::testing

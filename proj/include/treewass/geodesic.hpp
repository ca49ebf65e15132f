#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "treewass/rational.hpp"
#include "treewass/tree.hpp"

namespace treewass {

/// Piece of a path lying on one edge, as offsets measured from the edge's `u`.
struct Leg {
  EdgeId edge;
  Rational from;
  Rational to;

  Rational length() const { return abs(to - from); }
};

/// The unique injective path between two points.
struct Segment {
  TreePoint start;
  TreePoint end;
  std::vector<Leg> legs;
  Rational length;

  /// Point at arc length `s` from `start`, 0 <= s <= length.
  TreePoint point_at(const Tree& tree, const Rational& s) const {
    if (s < 0 || s > length) throw ValidationError("arc length outside segment");
    if (s == 0) return start;
    if (s == length) return end;
    Rational walked(0);
    for (const Leg& leg : legs) {
      const Rational len = leg.length();
      if (s <= walked + len) {
        const Rational into = s - walked;
        return tree.point(leg.edge, leg.to > leg.from ? Rational(leg.from + into) : Rational(leg.from - into));
      }
      walked += len;
    }
    return end;
  }
};

inline Rational vertex_offset(const Tree& tree, EdgeId e, VertexId w) {
  const Edge& ed = tree.edge(e);
  return ed.u == w ? Rational(0) : *ed.length;
}

inline Segment path(const Tree& tree, const TreePoint& p, const TreePoint& q) {
  Segment seg{p, q, {}, tree.distance(p, q)};
  if (p == q) return seg;
  if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge()) {
    seg.legs.push_back({p.edge(), p.offset(), q.offset()});
    return seg;
  }
  // The path leaves p's edge through the anchor pair realizing the distance.
  std::optional<std::pair<VertexId, VertexId>> ends;
  for (const auto& [a, da] : tree.anchors(p))
    for (const auto& [b, db] : tree.anchors(q))
      if (!ends && da + tree.vertex_distance(a, b) + db == seg.length) ends = {a, b};
  const auto [a, b] = *ends;
  if (!p.is_vertex()) seg.legs.push_back({p.edge(), p.offset(), vertex_offset(tree, p.edge(), a)});
  const std::vector<VertexId> vs = tree.vertex_path(a, b);
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const EdgeId e = tree.edge_between(vs[i], vs[i + 1]);
    seg.legs.push_back({e, vertex_offset(tree, e, vs[i]), vertex_offset(tree, e, vs[i + 1])});
  }
  if (!q.is_vertex()) seg.legs.push_back({q.edge(), vertex_offset(tree, q.edge(), b), q.offset()});
  return seg;
}

inline TreePoint midpoint(const Tree& tree, const TreePoint& p, const TreePoint& q) {
  const Segment seg = path(tree, p, q);
  return seg.point_at(tree, seg.length / 2);
}

/// Picks the edge by which a walk arriving at `at` through `incoming`
/// continues. Must return an edge incident to `at` other than `incoming`.
using ExtensionRule = std::function<EdgeId(const Tree&, VertexId at, std::optional<EdgeId> incoming)>;

inline EdgeId smallest_edge_rule(const Tree& tree, VertexId at, std::optional<EdgeId> incoming) {
  for (EdgeId e : tree.incident(at))
    if (e != incoming) return e;
  throw ValidationError("cannot extend a geodesic past leaf '" + tree.name(at) + "'");
}

/// Point at arc length `s` along the segment, continued past its end by
/// `rule` when s exceeds the segment length. The continuation never
/// backtracks, so the extended curve stays a minimizing geodesic.
inline TreePoint advance(const Tree& tree, const Segment& seg, const Rational& s,
                         const ExtensionRule& rule = smallest_edge_rule) {
  if (s <= seg.length) return seg.point_at(tree, s);
  if (seg.legs.empty()) throw ValidationError("cannot extend a constant segment");
  EdgeId edge = seg.legs.back().edge;
  Rational offset = seg.legs.back().to;
  bool forward = seg.legs.back().to > seg.legs.back().from;
  Rational remaining = s - seg.length;
  for (;;) {
    const Edge& ed = tree.edge(edge);
    VertexId reached;
    if (forward) {
      if (ed.is_ray()) return tree.point(edge, offset + remaining);
      const Rational room = *ed.length - offset;
      if (remaining <= room) return tree.point(edge, offset + remaining);
      remaining -= room;
      reached = *ed.v;
    } else {
      if (remaining <= offset) return tree.point(edge, offset - remaining);
      remaining -= offset;
      reached = ed.u;
    }
    if (tree.is_leaf(reached)) throw ValidationError("cannot extend a geodesic past leaf '" + tree.name(reached) + "'");
    const EdgeId next = rule(tree, reached, edge);
    if (next == edge || !tree.is_incident(next, reached)) throw ValidationError("extension rule chose an invalid edge");
    edge = next;
    forward = tree.edge(next).u == reached;
    offset = vertex_offset(tree, next, reached);
  }
}

/// A maximal geodesic: a vertex chain whose two ends are rays or leaves.
/// Arc-length coordinates put 0 at the origin vertex and increase toward the
/// last vertex.
class Geodesic {
 public:
  static Geodesic make(const Tree& tree, std::vector<VertexId> vertices, std::optional<EdgeId> start_ray,
                       std::optional<EdgeId> end_ray, std::size_t origin = 0) {
    if (vertices.empty()) throw ValidationError("invalid geodesic: no vertices");
    if (origin >= vertices.size()) throw ValidationError("invalid geodesic: origin out of range");
    Geodesic g;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (index(vertices[i]) >= tree.vertex_count()) throw ValidationError("invalid geodesic: unknown vertex");
      for (std::size_t j = 0; j < i; ++j)
        if (vertices[j] == vertices[i]) throw ValidationError("invalid geodesic: repeated vertex");
    }
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) g.edges_.push_back(tree.edge_between(vertices[i], vertices[i + 1]));
    auto check_end = [&](std::optional<EdgeId> ray, VertexId v) {
      if (ray) {
        if (index(*ray) >= tree.edge_count() || !tree.edge(*ray).is_ray() || tree.edge(*ray).u != v)
          throw ValidationError("invalid geodesic: end edge is not a ray at its end vertex");
      } else if (!tree.is_leaf(v) && tree.vertex_count() > 1) {
        throw ValidationError("invalid geodesic: end vertex '" + tree.name(v) + "' is neither a leaf nor followed by a ray");
      }
    };
    check_end(start_ray, vertices.front());
    check_end(end_ray, vertices.back());
    if (start_ray && end_ray && *start_ray == *end_ray) throw ValidationError("invalid geodesic: ray used twice");
    if (g.edges_.empty() && !(start_ray || end_ray)) throw ValidationError("invalid geodesic: no edges");
    g.vertices_ = std::move(vertices);
    g.start_ray_ = start_ray;
    g.end_ray_ = end_ray;
    g.origin_ = origin;
    g.coords_.assign(g.vertices_.size(), Rational(0));
    for (std::size_t i = origin; i + 1 < g.vertices_.size(); ++i)
      g.coords_[i + 1] = g.coords_[i] + *tree.edge(g.edges_[i]).length;
    for (std::size_t i = origin; i > 0; --i) g.coords_[i - 1] = g.coords_[i] - *tree.edge(g.edges_[i - 1]).length;
    return g;
  }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  /// Edges joining consecutive vertices (rays excluded).
  const std::vector<EdgeId>& inner_edges() const { return edges_; }
  std::optional<EdgeId> start_ray() const { return start_ray_; }
  std::optional<EdgeId> end_ray() const { return end_ray_; }
  VertexId origin() const { return vertices_[origin_]; }
  bool is_complete() const { return start_ray_ && end_ray_; }
  const Rational& vertex_coordinate(std::size_t i) const { return coords_.at(i); }

  std::optional<Rational> lower_bound() const {
    if (start_ray_) return std::nullopt;
    return coords_.front();
  }
  std::optional<Rational> upper_bound() const {
    if (end_ray_) return std::nullopt;
    return coords_.back();
  }

  bool contains_vertex(VertexId v) const { return position(v).has_value(); }

  bool contains_edge(EdgeId e) const {
    return e == start_ray_ || e == end_ray_ || std::find(edges_.begin(), edges_.end(), e) != edges_.end();
  }

  bool contains(const TreePoint& p) const { return p.is_vertex() ? contains_vertex(p.vertex()) : contains_edge(p.edge()); }

  Rational coordinate(const Tree& tree, const TreePoint& p) const {
    if (p.is_vertex()) {
      auto i = position(p.vertex());
      if (!i) throw ValidationError("point is not on the geodesic");
      return coords_[*i];
    }
    const EdgeId e = p.edge();
    if (e == start_ray_) return coords_.front() - p.offset();
    if (e == end_ray_) return coords_.back() + p.offset();
    auto it = std::find(edges_.begin(), edges_.end(), e);
    if (it == edges_.end()) throw ValidationError("point is not on the geodesic");
    const std::size_t i = static_cast<std::size_t>(it - edges_.begin());
    const Edge& ed = tree.edge(e);
    return ed.u == vertices_[i] ? Rational(coords_[i] + p.offset()) : Rational(coords_[i] + (*ed.length - p.offset()));
  }

  TreePoint point_at(const Tree& tree, const Rational& c) const {
    if (c < coords_.front()) {
      if (!start_ray_) throw ValidationError("coordinate outside the geodesic");
      return tree.point(*start_ray_, coords_.front() - c);
    }
    if (c > coords_.back()) {
      if (!end_ray_) throw ValidationError("coordinate outside the geodesic");
      return tree.point(*end_ray_, c - coords_.back());
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (c == coords_[i]) return tree.vertex_point(vertices_[i]);
      if (c < coords_[i + 1]) {
        const EdgeId e = edges_[i];
        const Rational into = c - coords_[i];
        return tree.point(e, tree.edge(e).u == vertices_[i] ? into : Rational(*tree.edge(e).length - into));
      }
    }
    throw ValidationError("coordinate outside the geodesic");
  }

  /// Unique point of the geodesic closest to `p`. Branches meet a geodesic
  /// only at vertices, so off-geodesic points project to the nearest vertex.
  TreePoint project(const Tree& tree, const TreePoint& p) const {
    tree.require(p);
    if (contains(p)) return p;
    std::optional<std::pair<Rational, VertexId>> best;
    for (VertexId v : vertices_) {
      Rational d = tree.distance(p, tree.vertex_point(v));
      if (!best || d < best->first) best = {std::move(d), v};
    }
    return tree.vertex_point(best->second);
  }

 private:
  Geodesic() = default;

  std::optional<std::size_t> position(VertexId v) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
  std::optional<EdgeId> start_ray_, end_ray_;
  std::size_t origin_ = 0;
  std::vector<Rational> coords_;
};

inline TreePoint project(const Tree& tree, const Geodesic& geodesic, const TreePoint& p) {
  return geodesic.project(tree, p);
}

/// A vertex with an unordered pair of distinct incident edges, stored with
/// e < f.
struct Flag {
  VertexId vertex;
  EdgeId e;
  EdgeId f;

  friend auto operator<=>(const Flag&, const Flag&) = default;
};

inline Flag make_flag(const Tree& tree, VertexId x, EdgeId e, EdgeId f) {
  if (index(x) >= tree.vertex_count() || index(e) >= tree.edge_count() || index(f) >= tree.edge_count())
    throw ValidationError("invalid flag: unknown vertex or edge");
  if (e == f) throw ValidationError("invalid flag: edges must differ");
  if (!tree.is_incident(e, x) || !tree.is_incident(f, x)) throw ValidationError("invalid flag: edge not incident to vertex");
  return e < f ? Flag{x, e, f} : Flag{x, f, e};
}

inline std::vector<Flag> enumerate_flags(const Tree& tree) {
  std::vector<Flag> flags;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    auto inc = tree.incident(vertex_id(v));
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) flags.push_back({vertex_id(v), inc[i], inc[j]});
  }
  return flags;
}

/// Vertices and edges of a closed subtree hanging from `root`.
struct Subtree {
  VertexId root;
  std::vector<VertexId> vertices;  // sorted
  std::vector<EdgeId> edges;       // sorted

  bool contains(const TreePoint& p) const {
    return p.is_vertex() ? std::binary_search(vertices.begin(), vertices.end(), p.vertex())
                         : std::binary_search(edges.begin(), edges.end(), p.edge());
  }
};

/// Vertices and edges of the component of T \ {from} entered through `first`.
inline void collect_branch(const Tree& tree, VertexId from, EdgeId first, std::vector<VertexId>& vertices,
                           std::vector<EdgeId>& edges) {
  std::vector<std::pair<VertexId, EdgeId>> stack{{from, first}};
  while (!stack.empty()) {
    auto [at, e] = stack.back();
    stack.pop_back();
    edges.push_back(e);
    if (tree.edge(e).is_ray()) continue;
    const VertexId w = tree.other_end(e, at);
    vertices.push_back(w);
    for (EdgeId g : tree.incident(w))
      if (g != e) stack.emplace_back(w, g);
  }
}

/// perp^x(ef): x together with the components of T \ {x} not entered through
/// e or f.
inline Subtree perpendicular(const Tree& tree, const Flag& flag) {
  make_flag(tree, flag.vertex, flag.e, flag.f);
  Subtree s{flag.vertex, {flag.vertex}, {}};
  for (EdgeId g : tree.incident(flag.vertex))
    if (g != flag.e && g != flag.f) collect_branch(tree, flag.vertex, g, s.vertices, s.edges);
  std::sort(s.vertices.begin(), s.vertices.end());
  std::sort(s.edges.begin(), s.edges.end());
  return s;
}

namespace detail {

struct Walk {
  std::vector<VertexId> vertices;  // excludes the start vertex
  std::optional<EdgeId> ray;
};

inline Walk walk_out(const Tree& tree, VertexId start, EdgeId first, const ExtensionRule& rule) {
  Walk w;
  VertexId at = start;
  EdgeId e = first;
  for (;;) {
    if (tree.edge(e).is_ray()) {
      w.ray = e;
      return w;
    }
    at = tree.other_end(e, at);
    w.vertices.push_back(at);
    if (tree.is_leaf(at)) return w;
    const EdgeId next = rule(tree, at, e);
    if (next == e || !tree.is_incident(next, at)) throw ValidationError("extension rule chose an invalid edge");
    e = next;
  }
}

}  // namespace detail

/// Maximal geodesic containing e, x, f, extended at every vertex by `rule`.
/// Origin at x; coordinates increase toward the smaller of e and f. On trees
/// with leaves the ends may stop at leaves.
inline Geodesic maximal_geodesic_through_flag(const Tree& tree, const Flag& flag,
                                              const ExtensionRule& rule = smallest_edge_rule) {
  const Flag fl = make_flag(tree, flag.vertex, flag.e, flag.f);
  const detail::Walk pos = detail::walk_out(tree, fl.vertex, fl.e, rule);
  const detail::Walk neg = detail::walk_out(tree, fl.vertex, fl.f, rule);
  std::vector<VertexId> vs(neg.vertices.rbegin(), neg.vertices.rend());
  const std::size_t origin = vs.size();
  vs.push_back(fl.vertex);
  vs.insert(vs.end(), pos.vertices.begin(), pos.vertices.end());
  return Geodesic::make(tree, std::move(vs), neg.ray, pos.ray, origin);
}

/// Deterministic complete geodesic through a flag (smallest-id extension).
inline Geodesic geodesic_through_flag(const Tree& tree, const Flag& flag) {
  if (!tree.is_geodesically_complete()) throw ValidationError("tree is not geodesically complete");
  return maximal_geodesic_through_flag(tree, flag);
}

struct TriangleCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
  bool strict = false;
  bool aligned = false;
};

inline bool aligned(const Tree& tree, const TreePoint& x, const TreePoint& y, const TreePoint& z) {
  const Rational xy = tree.distance(x, y), yz = tree.distance(y, z), xz = tree.distance(x, z);
  return xy + yz == xz || xy + xz == yz || xz + yz == xy;
}

/// Compares d²(y, γ_t) against the CAT(0) bound for γ the geodesic x→z.
inline TriangleCheck check_cat0_triangle(const Tree& tree, const TreePoint& x, const TreePoint& y, const TreePoint& z,
                                         const Rational& t) {
  if (t < 0 || t > 1) throw ValidationError("t must lie in [0,1]");
  const Segment gamma = path(tree, x, z);
  const TreePoint gt = gamma.point_at(tree, t * gamma.length);
  TriangleCheck c;
  c.lhs = square(tree.distance(y, gt));
  c.rhs = (1 - t) * square(tree.distance(y, x)) + t * square(tree.distance(y, z)) - t * (1 - t) * square(gamma.length);
  c.holds = c.lhs <= c.rhs;
  c.strict = c.lhs < c.rhs;
  c.aligned = aligned(tree, x, y, z);
  return c;
}

}  // namespace treewass

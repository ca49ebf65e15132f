#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treewass/rational.hpp"

namespace treewass {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index(EdgeId e) { return static_cast<std::size_t>(e); }
constexpr VertexId vertex_id(std::size_t i) { return static_cast<VertexId>(i); }
constexpr EdgeId edge_id(std::size_t i) { return static_cast<EdgeId>(i); }

/// One edge of a tree description. A missing `v` makes the edge a ray, whose
/// length must be infinite (`length == nullopt`).
struct EdgeSpec {
  std::string u;
  std::optional<std::string> v;
  std::optional<Rational> length;
};

struct TreeDescription {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
};

struct Edge {
  VertexId u;
  std::optional<VertexId> v;
  std::optional<Rational> length;  // nullopt on rays

  bool is_ray() const { return !v.has_value(); }
};

/// A location on a tree: either a vertex, or a point strictly inside an edge
/// given by its offset from the edge's `u` endpoint. Vertex locations are
/// always stored in the vertex form, so equality is structural.
class TreePoint {
 public:
  static TreePoint at_vertex(VertexId v) { return TreePoint(true, static_cast<std::uint32_t>(v), Rational(0)); }

  bool is_vertex() const { return vertex_; }
  VertexId vertex() const { return static_cast<VertexId>(id_); }
  EdgeId edge() const { return static_cast<EdgeId>(id_); }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    return a.vertex_ == b.vertex_ && a.id_ == b.id_ && a.offset_ == b.offset_;
  }
  friend bool operator<(const TreePoint& a, const TreePoint& b) {
    if (a.vertex_ != b.vertex_) return a.vertex_;  // vertices first
    if (a.id_ != b.id_) return a.id_ < b.id_;
    return a.offset_ < b.offset_;
  }

 private:
  friend class Tree;
  TreePoint(bool vertex, std::uint32_t id, Rational offset) : vertex_(vertex), id_(id), offset_(std::move(offset)) {}

  bool vertex_;
  std::uint32_t id_;
  Rational offset_;
};

struct ValencyProfile {
  std::map<std::size_t, std::size_t> count_by_valency;
  std::vector<VertexId> leaves;
  bool geodesically_complete = false;
};

/// Locally finite simplicial metric tree with finite edges and rays.
/// Immutable once built; all queries are const.
class Tree {
 public:
  /// Validates a description and builds the tree. Throws ValidationError on
  /// cycles, disconnection, valency-2 or isolated vertices, nonpositive
  /// lengths, finite rays and infinite finite edges.
  static Tree build(const TreeDescription& desc) {
    Tree t;
    const std::size_t n = desc.vertices.size();
    if (n == 0) throw ValidationError("tree has no vertices");
    for (std::size_t i = 0; i < n; ++i) {
      if (!t.by_name_.emplace(desc.vertices[i], vertex_id(i)).second)
        throw ValidationError("duplicate vertex id '" + desc.vertices[i] + "'");
    }
    t.names_ = desc.vertices;
    t.incident_.resize(n);

    auto lookup = [&](const std::string& name) {
      auto it = t.by_name_.find(name);
      if (it == t.by_name_.end()) throw ValidationError("edge references unknown vertex '" + name + "'");
      return it->second;
    };

    std::vector<std::size_t> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };

    for (std::size_t i = 0; i < desc.edges.size(); ++i) {
      const EdgeSpec& spec = desc.edges[i];
      Edge e{lookup(spec.u), std::nullopt, spec.length};
      const std::string where = "edge " + std::to_string(i);
      if (spec.v) {
        e.v = lookup(*spec.v);
        if (!spec.length) throw ValidationError(where + ": infinite length on an edge with two endpoints");
        if (*spec.length <= 0) throw ValidationError(where + ": nonpositive length");
        if (*e.v == e.u) throw ValidationError(where + ": cycle detected (self-loop)");
        std::size_t a = find(index(e.u)), b = find(index(*e.v));
        if (a == b) throw ValidationError(where + ": cycle detected");
        uf[a] = b;
      } else if (spec.length) {
        throw ValidationError(where + ": finite-length ray");
      }
      t.incident_[index(e.u)].push_back(edge_id(i));
      if (e.v) t.incident_[index(*e.v)].push_back(edge_id(i));
      t.edges_.push_back(std::move(e));
    }
    for (std::size_t v = 1; v < n; ++v)
      if (find(v) != find(0)) throw ValidationError("tree is disconnected");
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t k = t.incident_[v].size();
      if (k == 2) throw ValidationError("valency-2 vertex '" + t.names_[v] + "'");
      if (k == 0) throw ValidationError("isolated vertex '" + t.names_[v] + "'");
      std::sort(t.incident_[v].begin(), t.incident_[v].end());
    }
    t.root();
    return t;
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(index(e)); }
  const std::string& name(VertexId v) const { return names_.at(index(v)); }
  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  /// Incident edges in increasing id order.
  std::span<const EdgeId> incident(VertexId v) const { return incident_.at(index(v)); }
  std::size_t valency(VertexId v) const { return incident(v).size(); }
  bool is_leaf(VertexId v) const { return valency(v) == 1; }

  bool is_incident(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    return ed.u == v || ed.v == v;
  }

  /// The endpoint of a finite edge opposite to `v`.
  VertexId other_end(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    if (!ed.v) throw ValidationError("ray has a single endpoint");
    return ed.u == v ? *ed.v : ed.u;
  }

  /// A tree is geodesically complete iff it has no leaf.
  bool is_geodesically_complete() const {
    for (std::size_t v = 0; v < vertex_count(); ++v)
      if (is_leaf(vertex_id(v))) return false;
    return true;
  }

  ValencyProfile valency_profile() const {
    ValencyProfile p;
    for (std::size_t v = 0; v < vertex_count(); ++v) {
      ++p.count_by_valency[valency(vertex_id(v))];
      if (is_leaf(vertex_id(v))) p.leaves.push_back(vertex_id(v));
    }
    p.geodesically_complete = p.leaves.empty();
    return p;
  }

  TreePoint vertex_point(VertexId v) const {
    if (index(v) >= vertex_count()) throw ValidationError("point not on tree: unknown vertex");
    return TreePoint::at_vertex(v);
  }

  /// Canonical point at `offset` from the `u` endpoint of `e`.
  TreePoint point(EdgeId e, const Rational& offset) const {
    if (index(e) >= edge_count()) throw ValidationError("point not on tree: unknown edge");
    const Edge& ed = edge(e);
    if (offset < 0) throw ValidationError("point not on tree: negative offset");
    if (offset == 0) return TreePoint::at_vertex(ed.u);
    if (ed.length) {
      if (offset > *ed.length) throw ValidationError("point not on tree: offset exceeds edge length");
      if (offset == *ed.length) return TreePoint::at_vertex(*ed.v);
    }
    return TreePoint(false, static_cast<std::uint32_t>(e), offset);
  }

  bool contains(const TreePoint& p) const {
    if (p.is_vertex()) return index(p.vertex()) < vertex_count();
    if (index(p.edge()) >= edge_count()) return false;
    const Edge& ed = edge(p.edge());
    return p.offset() > 0 && (!ed.length || p.offset() < *ed.length);
  }

  void require(const TreePoint& p) const {
    if (!contains(p)) throw ValidationError("point not on tree");
  }

  /// Vertices of the edge carrying `p` together with the distance to them
  /// (a single entry for vertex points).
  std::vector<std::pair<VertexId, Rational>> anchors(const TreePoint& p) const {
    require(p);
    if (p.is_vertex()) return {{p.vertex(), Rational(0)}};
    const Edge& ed = edge(p.edge());
    std::vector<std::pair<VertexId, Rational>> out{{ed.u, p.offset()}};
    if (ed.v) out.emplace_back(*ed.v, *ed.length - p.offset());
    return out;
  }

  VertexId lca(VertexId a, VertexId b) const {
    while (depth_[index(a)] > depth_[index(b)]) a = parent_[index(a)];
    while (depth_[index(b)] > depth_[index(a)]) b = parent_[index(b)];
    while (a != b) {
      a = parent_[index(a)];
      b = parent_[index(b)];
    }
    return a;
  }

  Rational vertex_distance(VertexId a, VertexId b) const {
    const VertexId c = lca(a, b);
    return root_distance_[index(a)] + root_distance_[index(b)] - 2 * root_distance_[index(c)];
  }

  /// Vertices visited walking from `a` to `b`, both included.
  std::vector<VertexId> vertex_path(VertexId a, VertexId b) const {
    const VertexId c = lca(a, b);
    std::vector<VertexId> up, down;
    for (VertexId x = a; x != c; x = parent_[index(x)]) up.push_back(x);
    for (VertexId x = b; x != c; x = parent_[index(x)]) down.push_back(x);
    up.push_back(c);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }

  /// The edge joining adjacent vertices.
  EdgeId edge_between(VertexId a, VertexId b) const {
    if (parent_[index(a)] == b && a != b) return parent_edge_[index(a)];
    if (parent_[index(b)] == a && a != b) return parent_edge_[index(b)];
    throw ValidationError("vertices are not adjacent");
  }

  Rational distance(const TreePoint& p, const TreePoint& q) const {
    require(p);
    require(q);
    if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge()) return abs(p.offset() - q.offset());
    std::optional<Rational> best;
    for (const auto& [a, da] : anchors(p))
      for (const auto& [b, db] : anchors(q)) {
        Rational d = da + vertex_distance(a, b) + db;
        if (!best || d < *best) best = std::move(d);
      }
    return *best;
  }

 private:
  Tree() = default;

  void root() {
    const std::size_t n = vertex_count();
    parent_.assign(n, vertex_id(0));
    parent_edge_.assign(n, edge_id(0));
    depth_.assign(n, 0);
    root_distance_.assign(n, Rational(0));
    std::vector<bool> seen(n, false);
    std::queue<VertexId> queue;
    queue.push(vertex_id(0));
    seen[0] = true;
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop();
      for (EdgeId e : incident(x)) {
        const Edge& ed = edge(e);
        if (ed.is_ray()) continue;
        VertexId y = other_end(e, x);
        if (seen[index(y)]) continue;
        seen[index(y)] = true;
        parent_[index(y)] = x;
        parent_edge_[index(y)] = e;
        depth_[index(y)] = depth_[index(x)] + 1;
        root_distance_[index(y)] = root_distance_[index(x)] + *ed.length;
        queue.push(y);
      }
    }
  }

  std::vector<std::string> names_;
  std::map<std::string, VertexId> by_name_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::size_t> depth_;
  std::vector<Rational> root_distance_;
};

}  // namespace treewass

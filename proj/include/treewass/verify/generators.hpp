#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "treewass/geodesic.hpp"
#include "treewass/measure.hpp"
#include "treewass/radon.hpp"
#include "treewass/tree.hpp"

namespace treewass::verify {

/// Portable draws on top of mt19937_64 (the standard distributions are
/// implementation-defined, which would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % n;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 8;
  std::size_t min_valency = 3;
  std::size_t max_valency = 5;
  std::size_t max_atoms = 5;
  std::int64_t max_denominator = 12;
  std::size_t trials = 25;
  bool inject_fault = false;  // harness self-check: corrupts one property on purpose

  void validate() const {
    if (max_vertices == 0 || min_vertices == 0 || max_atoms == 0 || min_valency == 0 || max_valency == 0)
      throw ValidationError("suite bounds must be positive");
    if (min_vertices > max_vertices) throw ValidationError("min_vertices exceeds max_vertices");
    if (min_valency > max_valency) throw ValidationError("min_valency exceeds max_valency");
    if (max_denominator < 2) throw ValidationError("denominator bound must be at least 2");
  }
};

enum class TreeMode { finite, complete };

/// Random tree. Complete mode attaches rays until every vertex has valency
/// in [max(3, min_valency), max_valency]; finite mode keeps the leaves and
/// contracts any valency-2 vertex. Deterministic given the generator state.
inline Tree gen_tree(const SuiteConfig& config, TreeMode mode, Rng& rng) {
  config.validate();
  if (mode == TreeMode::complete && config.max_valency < 3)
    throw ValidationError("complete trees need valency bound >= 3 (valency 2 is forbidden)");
  const std::size_t n_min = mode == TreeMode::finite ? std::max<std::size_t>(2, config.min_vertices) : config.min_vertices;
  if (n_min > config.max_vertices) throw ValidationError("finite trees need at least two vertices");
  const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(n_min), static_cast<std::int64_t>(config.max_vertices)));
  const std::int64_t D = config.max_denominator;
  auto length = [&] {
    const std::int64_t q = rng.between(1, D);
    return make_rational(rng.between(1, 2 * q), q);
  };

  struct RawEdge {
    std::size_t u;
    std::optional<std::size_t> v;
    std::optional<Rational> len;
  };
  std::vector<RawEdge> edges;
  std::vector<std::size_t> degree(n, 0);
  const std::size_t cap = std::max<std::size_t>(config.max_valency, 1);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < i; ++j)
      if (degree[j] < cap) open.push_back(j);
    if (open.empty()) throw ValidationError("valency bound too small for the requested vertex count");
    const std::size_t parent = rng.pick(open);
    edges.push_back({parent, i, length()});
    ++degree[parent];
    ++degree[i];
  }

  std::vector<bool> alive(n, true);
  if (mode == TreeMode::complete) {
    const auto lo = static_cast<std::int64_t>(std::max<std::size_t>(3, config.min_valency));
    const auto hi = static_cast<std::int64_t>(config.max_valency);
    for (std::size_t v = 0; v < n; ++v) {
      const auto target = static_cast<std::size_t>(rng.between(std::min(lo, hi), hi));
      for (std::size_t k = degree[v]; k < std::max<std::size_t>(target, 3); ++k) edges.push_back({v, std::nullopt, std::nullopt});
    }
  } else {
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] != 2) continue;
      std::vector<std::size_t> at;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].len && (edges[i].u == v || edges[i].v == v)) at.push_back(i);
      RawEdge& a = edges[at[0]];
      RawEdge& b = edges[at[1]];
      const std::size_t x = a.u == v ? *a.v : a.u;
      const std::size_t y = b.u == v ? *b.v : b.u;
      a = {x, y, *a.len + *b.len};
      b.len.reset();  // tombstone
      alive[v] = false;
    }
  }

  std::vector<std::size_t> rename(n, 0);
  TreeDescription d;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) {
      rename[v] = d.vertices.size();
      d.vertices.push_back(std::to_string(d.vertices.size()));
    }
  for (const RawEdge& e : edges) {
    if (e.v && !e.len) continue;
    d.edges.push_back({d.vertices[rename[e.u]], e.v ? std::optional<std::string>(d.vertices[rename[*e.v]]) : std::nullopt, e.len});
  }
  return Tree::build(d);
}

inline Tree gen_tree(const SuiteConfig& config, TreeMode mode) {
  Rng rng(config.seed);
  return gen_tree(config, mode, rng);
}

/// Fraction a/b with 0 < a < b <= D.
inline Rational gen_unit_fraction(Rng& rng, std::int64_t D) {
  const std::int64_t b = rng.between(2, D);
  return make_rational(rng.between(1, b - 1), b);
}

inline TreePoint gen_interior_point(const Tree& tree, Rng& rng, std::int64_t D) {
  const EdgeId e = edge_id(rng.below(tree.edge_count()));
  const Edge& ed = tree.edge(e);
  if (ed.is_ray()) {
    const std::int64_t q = rng.between(1, D);
    return tree.point(e, make_rational(rng.between(1, 3 * q), q));
  }
  return tree.point(e, *ed.length * gen_unit_fraction(rng, D));
}

inline TreePoint gen_point(const Tree& tree, Rng& rng, std::int64_t D) {
  if (rng.coin()) return tree.vertex_point(vertex_id(rng.below(tree.vertex_count())));
  return gen_interior_point(tree, rng, D);
}

inline std::vector<Rational> gen_weights(Rng& rng, std::size_t count, std::int64_t D) {
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    w.push_back(rng.between(1, D));
    total += w.back();
  }
  std::vector<Rational> out;
  for (std::int64_t x : w) out.push_back(make_rational(x, total));
  return out;
}

inline Measure measure_on(const Tree& tree, const std::vector<TreePoint>& points, Rng& rng, std::int64_t D) {
  const std::vector<Rational> masses = gen_weights(rng, points.size(), D);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < points.size(); ++i) atoms.push_back({points[i], masses[i]});
  return Measure::make(tree, atoms);
}

inline Measure gen_measure(const Tree& tree, Rng& rng, std::size_t max_atoms, std::int64_t D) {
  const auto count = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_atoms)));
  std::vector<TreePoint> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(gen_point(tree, rng, D));
  return measure_on(tree, pts, rng, D);
}

/// Non-Dirac measure (at least two distinct atoms).
inline Measure gen_spread_measure(const Tree& tree, Rng& rng, std::size_t max_atoms, std::int64_t D) {
  for (;;) {
    const auto count = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(std::max<std::size_t>(2, max_atoms))));
    std::vector<TreePoint> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back(gen_point(tree, rng, D));
    Measure m = measure_on(tree, pts, rng, D);
    if (!m.is_dirac()) return m;
  }
}

inline VertexFunction gen_vertex_function(const Tree& tree, Rng& rng, std::int64_t D) {
  VertexFunction h(tree.vertex_count());
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    if (rng.below(5) == 0) continue;  // keep some zeros
    h.set(vertex_id(v), make_rational(rng.between(-D, D), rng.between(1, D)));
  }
  return h;
}

/// Extension rule drawing the continuing edge at random.
inline ExtensionRule random_rule(std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](const Tree& tree, VertexId at, std::optional<EdgeId> incoming) {
    std::vector<EdgeId> options;
    for (EdgeId e : tree.incident(at))
      if (e != incoming) options.push_back(e);
    if (options.empty()) throw ValidationError("cannot extend a geodesic past a leaf");
    return rng->pick(options);
  };
}

inline Flag gen_flag(const Tree& tree, Rng& rng) {
  std::vector<Flag> flags = enumerate_flags(tree);
  if (flags.empty()) throw ValidationError("tree has no flags");
  return rng.pick(flags);
}

/// Maximal geodesic through a random flag, extended by a random rule.
inline Geodesic gen_geodesic(const Tree& tree, Rng& rng) {
  if (enumerate_flags(tree).empty()) {
    // a single edge between two leaves
    const Edge& e = tree.edge(edge_id(0));
    return Geodesic::make(tree, {e.u, *e.v}, std::nullopt, std::nullopt);
  }
  const Flag fl = gen_flag(tree, rng);
  return maximal_geodesic_through_flag(tree, fl, random_rule(rng.below(~std::uint64_t{0})));
}

/// Random point on a geodesic within one unit beyond its extreme vertices.
inline TreePoint gen_point_on(const Tree& tree, const Geodesic& g, Rng& rng, std::int64_t D) {
  Rational lo = g.lower_bound().value_or(g.vertex_coordinate(0) - 2);
  Rational hi = g.upper_bound().value_or(g.vertex_coordinate(g.vertices().size() - 1) + 2);
  if (rng.below(3) == 0) return tree.vertex_point(rng.pick(g.vertices()));
  return g.point_at(tree, lo + (hi - lo) * gen_unit_fraction(rng, D));
}

}  // namespace treewass::verify

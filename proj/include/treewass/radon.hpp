#pragma once

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "treewass/geodesic.hpp"
#include "treewass/measure.hpp"
#include "treewass/rational.hpp"
#include "treewass/tree.hpp"

namespace treewass {

/// Rational function on the vertices of a finite tree (dense storage).
class VertexFunction {
 public:
  VertexFunction() = default;
  explicit VertexFunction(std::size_t vertex_count) : values_(vertex_count, Rational(0)) {}
  explicit VertexFunction(std::vector<Rational> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](VertexId v) const { return values_.at(index(v)); }
  void set(VertexId v, Rational value) { values_.at(index(v)) = std::move(value); }
  const std::vector<Rational>& values() const { return values_; }

  Rational total() const {
    Rational s(0);
    for (const Rational& x : values_) s += x;
    return s;
  }

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

 private:
  std::vector<Rational> values_;
};

using FlagTable = std::map<Flag, Rational>;

inline Rational binomial2(std::size_t n) { return Rational(static_cast<long>(n * (n > 0 ? n - 1 : 0) / 2)); }

namespace detail {

/// Sum of h over the vertices of the component of T \ {from} entered through
/// `e` (zero on rays). Memoized per directed edge.
class BranchSums {
 public:
  BranchSums(const Tree& tree, const VertexFunction& h) : tree_(tree), h_(h) {}

  const Rational& operator()(VertexId from, EdgeId e) {
    const auto key = std::make_pair(from, e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational sum(0);
    if (!tree_.edge(e).is_ray()) {
      const VertexId w = tree_.other_end(e, from);
      sum = h_[w];
      for (EdgeId g : tree_.incident(w))
        if (g != e) sum += (*this)(w, g);
    }
    return memo_.emplace(key, std::move(sum)).first->second;
  }

 private:
  const Tree& tree_;
  const VertexFunction& h_;
  std::map<std::pair<VertexId, EdgeId>, Rational> memo_;
};

}  // namespace detail

/// Combinatorial perpendicular Radon transform: Rh(x, ef) is the sum of h
/// over the vertices of perp^x(ef), i.e. Σh minus the branches through e and f.
inline FlagTable radon_forward(const Tree& tree, const VertexFunction& h) {
  if (h.size() != tree.vertex_count()) throw ValidationError("vertex function size does not match tree");
  detail::BranchSums branch(tree, h);
  const Rational total = h.total();
  FlagTable table;
  for (const Flag& fl : enumerate_flags(tree)) table[fl] = total - branch(fl.vertex, fl.e) - branch(fl.vertex, fl.f);
  return table;
}

struct DoubleCount {
  Rational lhs;  // Σ over flags at x of Rh(x, ef), summed over perpendiculars
  Rational rhs;  // C(k-1, 2)·Σh + (k-1)·h(x)
};

inline DoubleCount double_count_check(const Tree& tree, const VertexFunction& h, VertexId x) {
  const std::size_t k = tree.valency(x);
  if (k < 2) throw ValidationError("vertex '" + tree.name(x) + "' has no flags");
  DoubleCount dc{Rational(0), binomial2(k - 1) * h.total() + Rational(static_cast<long>(k - 1)) * h[x]};
  auto inc = tree.incident(x);
  for (std::size_t i = 0; i < inc.size(); ++i)
    for (std::size_t j = i + 1; j < inc.size(); ++j)
      for (VertexId y : perpendicular(tree, {x, inc[i], inc[j]}).vertices) dc.lhs += h[y];
  return dc;
}

/// Recovers h from its flag table and Σh:
///   h(x) = Σ_{ef∋x} Rh(x, ef) / (k(x) - 1) - (k(x) - 2)/2 · Σh.
inline VertexFunction radon_invert(const Tree& tree, const FlagTable& table, const Rational& total) {
  for (const auto& [fl, value] : table) {
    if (index(fl.vertex) >= tree.vertex_count() || index(fl.e) >= tree.edge_count() ||
        index(fl.f) >= tree.edge_count() || fl.e >= fl.f || !tree.is_incident(fl.e, fl.vertex) ||
        !tree.is_incident(fl.f, fl.vertex))
      throw ValidationError("flag table contains a flag that is not on the tree");
  }
  VertexFunction h(tree.vertex_count());
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const VertexId x = vertex_id(v);
    const std::size_t k = tree.valency(x);
    if (k < 3) throw ValidationError("vertex '" + tree.name(x) + "' has valency < 3");
    Rational sum(0);
    auto inc = tree.incident(x);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        auto it = table.find({x, inc[i], inc[j]});
        if (it == table.end()) throw ValidationError("incomplete flag table at vertex '" + tree.name(x) + "'");
        sum += it->second;
      }
    const Rational km1(static_cast<long>(k - 1));
    const Rational km2(static_cast<long>(k - 2));
    h.set(x, sum / km1 - km2 / 2 * total);
  }
  return h;
}

inline RadonSample radon_measure(const Tree& tree, const Measure& mu, const Geodesic& geodesic) {
  return pushforward_projection(tree, geodesic, mu);
}

/// μ(perp^x(ef)), read off the projection onto the deterministic geodesic
/// through the flag (whose origin is x).
inline Rational flag_mass(const Tree& tree, const Measure& mu, const Flag& flag) {
  const Geodesic g = geodesic_through_flag(tree, flag);
  return radon_measure(tree, mu, g).mass_at(g.coordinate(tree, tree.vertex_point(flag.vertex)));
}

class InconsistentOracleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

using RadonOracle = std::function<RadonSample(const Geodesic&)>;

struct InteriorRead {
  EdgeId edge;
  Flag via;
  TreePoint location;
  Rational mass;
};

struct FlagSubtraction {
  Flag flag;
  Rational flag_mass;
  Rational interior_mass;
  Rational vertex_value;
};

struct Reconstruction {
  Measure measure;
  std::vector<InteriorRead> interior_reads;
  std::vector<FlagSubtraction> flag_subtractions;
  Rational interior_total;
};

/// Recovers a finitely supported measure from its perpendicular Radon
/// transform. Atoms inside edges are read directly off geodesics through
/// `skeleton` edges; the vertex part comes from inverting flag masses with
/// the interior contribution removed.
inline Reconstruction reconstruct_measure(const Tree& tree, const RadonOracle& oracle, const std::vector<EdgeId>& skeleton) {
  if (!tree.is_geodesically_complete()) throw ValidationError("tree is not geodesically complete");
  std::vector<std::pair<Geodesic, RadonSample>> queried;
  auto query = [&](const Geodesic& g) -> const RadonSample& {
    queried.emplace_back(g, oracle(g));
    return queried.back().second;
  };

  std::vector<InteriorRead> reads;
  std::map<TreePoint, Rational> interior;
  for (EdgeId e : std::set<EdgeId>(skeleton.begin(), skeleton.end())) {
    if (index(e) >= tree.edge_count()) throw ValidationError("skeleton references an unknown edge");
    const Edge& ed = tree.edge(e);
    std::vector<VertexId> ends{ed.u};
    if (ed.v) ends.push_back(*ed.v);
    std::optional<std::map<TreePoint, Rational>> previous;
    for (VertexId w : ends) {
      EdgeId partner = e;
      for (EdgeId g : tree.incident(w))
        if (g != e) {
          partner = g;
          break;
        }
      const Flag via = make_flag(tree, w, e, partner);
      const Geodesic g = geodesic_through_flag(tree, via);
      const RadonSample& sample = query(g);
      std::map<TreePoint, Rational> found;
      for (const auto& [c, m] : sample.atoms) {
        const TreePoint p = g.point_at(tree, c);
        if (!p.is_vertex() && p.edge() == e) found[p] += m;
      }
      if (previous && *previous != found)
        throw InconsistentOracleError("oracle masses disagree across geodesics through edge " + std::to_string(index(e)));
      if (!previous)
        for (const auto& [p, m] : found) reads.push_back({e, via, p, m});
      previous = std::move(found);
    }
    for (const auto& [p, m] : *previous) interior[p] += m;
  }

  Rational interior_total(0);
  for (const auto& [p, m] : interior) interior_total += m;

  FlagTable table;
  std::vector<FlagSubtraction> subtractions;
  for (const Flag& fl : enumerate_flags(tree)) {
    const Geodesic g = geodesic_through_flag(tree, fl);
    const Rational raw = query(g).mass_at(g.coordinate(tree, tree.vertex_point(fl.vertex)));
    const Subtree perp = perpendicular(tree, fl);
    Rational inside(0);
    for (const auto& [p, m] : interior)
      if (perp.contains(p)) inside += m;
    table[fl] = raw - inside;
    subtractions.push_back({fl, raw, inside, raw - inside});
  }

  const VertexFunction h = radon_invert(tree, table, 1 - interior_total);
  std::vector<Atom> atoms;
  for (const auto& [p, m] : interior) atoms.push_back({p, m});
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const Rational& m = h[vertex_id(v)];
    if (m < 0) throw InconsistentOracleError("negative vertex mass recovered at '" + tree.name(vertex_id(v)) + "'");
    if (m > 0) atoms.push_back({tree.vertex_point(vertex_id(v)), m});
  }
  std::optional<Measure> mu;
  try {
    mu = Measure::make(tree, atoms);
  } catch (const ValidationError& err) {
    throw InconsistentOracleError(std::string("recovered masses do not form a probability measure: ") + err.what());
  }
  for (const auto& [g, sample] : queried)
    if (!(radon_measure(tree, *mu, g) == sample))
      throw InconsistentOracleError("reconstruction does not reproduce the oracle data; support lies outside the skeleton");
  return {*mu, std::move(reads), std::move(subtractions), interior_total};
}

}  // namespace treewass

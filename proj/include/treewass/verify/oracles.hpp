#pragma once

// Reference computations that avoid the library's fast paths. Each one
// recomputes a quantity from definitions so the suites compare two routes.

#include <numeric>
#include <optional>
#include <vector>

#include "treewass/geodesic.hpp"
#include "treewass/measure.hpp"
#include "treewass/radon.hpp"
#include "treewass/transportation.hpp"
#include "treewass/tree.hpp"

namespace treewass::verify {

/// Minimum cost over all basic feasible solutions of a transportation
/// problem. Bases are the spanning trees of the bipartite row/column graph;
/// each one fixes the flows by peeling leaves. Meant for m·n up to ~16.
inline Rational brute_force_transport(const TransportationProblem& p) {
  const std::size_t m = p.supply.size(), n = p.demand.size();
  const std::size_t cells = m * n, need = m + n - 1;
  std::optional<Rational> best;
  std::vector<std::size_t> pick(need);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::size_t> uf(m + n);
  for (;;) {
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    bool tree = true;
    for (std::size_t k : pick) {
      const std::size_t a = find(k / n), b = find(m + k % n);
      if (a == b) {
        tree = false;
        break;
      }
      uf[a] = b;
    }
    if (tree) {
      std::vector<Rational> left(m + n);
      for (std::size_t i = 0; i < m; ++i) left[i] = p.supply[i];
      for (std::size_t j = 0; j < n; ++j) left[m + j] = p.demand[j];
      std::vector<bool> done(need, false);
      std::vector<std::size_t> deg(m + n, 0);
      for (std::size_t k : pick) {
        ++deg[k / n];
        ++deg[m + k % n];
      }
      Rational cost(0);
      bool feasible = true;
      for (std::size_t round = 0; round < need && feasible; ++round) {
        for (std::size_t idx = 0; idx < need; ++idx) {
          if (done[idx]) continue;
          const std::size_t r = pick[idx] / n, c = m + pick[idx] % n;
          if (deg[r] != 1 && deg[c] != 1) continue;
          const std::size_t leaf = deg[r] == 1 ? r : c, other = leaf == r ? c : r;
          const Rational f = left[leaf];
          if (f < 0) feasible = false;
          left[leaf] -= f;
          left[other] -= f;
          cost += f * p.cost[r][c - m];
          --deg[r];
          --deg[c];
          done[idx] = true;
          break;
        }
      }
      if (feasible && (!best || cost < *best)) best = cost;
    }
    // next combination
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == cells - need + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return *best;
}

inline Rational brute_force_w2_squared(const Tree& tree, const Measure& mu, const Measure& nu) {
  TransportationProblem p;
  for (const Atom& a : mu.atoms()) p.supply.push_back(a.mass);
  for (const Atom& b : nu.atoms()) p.demand.push_back(b.mass);
  for (const Atom& a : mu.atoms()) {
    std::vector<Rational> row;
    for (const Atom& b : nu.atoms()) row.push_back(square(tree.distance(a.location, b.location)));
    p.cost.push_back(row);
  }
  return brute_force_transport(p);
}

/// rhs - lhs of the CAT(0) inequality computed from the tripod spanned by
/// x, y, z: legs from Gromov products, γ_t located on the x-leg or z-leg.
inline Rational comparison_gap(const Rational& xy, const Rational& yz, const Rational& xz, const Rational& t) {
  const Rational leg_x = (xy + xz - yz) / 2;
  const Rational leg_y = (xy + yz - xz) / 2;
  const Rational s = t * xz;
  const Rational dist = s <= leg_x ? Rational(leg_y + (leg_x - s)) : Rational(leg_y + (s - leg_x));
  const Rational rhs = (1 - t) * xy * xy + t * yz * yz - t * (1 - t) * xz * xz;
  return rhs - dist * dist;
}

/// Rh(x, ef) summed straight over perpendicular vertices.
inline Rational perpendicular_sum(const Tree& tree, const VertexFunction& h, const Flag& flag) {
  Rational s(0);
  for (VertexId y : perpendicular(tree, flag).vertices) s += h[y];
  return s;
}

/// μ of the component of T \ {x} entered through `e` (x excluded).
inline Rational branch_mass(const Tree& tree, const Measure& mu, VertexId x, EdgeId e) {
  std::vector<VertexId> vs;
  std::vector<EdgeId> es;
  collect_branch(tree, x, e, vs, es);
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  const Subtree branch{x, vs, es};
  Rational m(0);
  for (const Atom& a : mu.atoms())
    if (branch.contains(a.location)) m += a.mass;
  return m;
}

inline Rational subtree_mass(const Subtree& s, const Measure& mu) {
  Rational m(0);
  for (const Atom& a : mu.atoms())
    if (s.contains(a.location)) m += a.mass;
  return m;
}

/// W₂² between two measures on a common line given by coordinates, via the
/// monotone (quantile) coupling.
inline Rational line_w2_squared(std::vector<std::pair<Rational, Rational>> a, std::vector<std::pair<Rational, Rational>> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Rational cost(0);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Rational f = a[i].second < b[j].second ? a[i].second : b[j].second;
    cost += f * square(a[i].first - b[j].first);
    a[i].second -= f;
    b[j].second -= f;
    if (a[i].second == 0) ++i;
    if (j < b.size() && b[j].second == 0) ++j;
  }
  return cost;
}

}  // namespace treewass::verify

#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "treewass/rational.hpp"

namespace treewass {

/// Balanced transportation problem: ship `supply` to `demand` minimizing
/// the sum of flow times `cost[row][col]`.
struct TransportationProblem {
  std::vector<Rational> supply;
  std::vector<Rational> demand;
  std::vector<std::vector<Rational>> cost;
};

struct BasicCell {
  std::size_t row;
  std::size_t col;
  Rational flow;
};

struct TransportationSolution {
  std::vector<BasicCell> basis;  // m + n - 1 cells, some possibly at zero flow
  Rational cost;
  std::size_t pivots = 0;
};

/// Exact transportation simplex. Starts from the northwest-corner basis and
/// pivots with Bland's rule (lowest cell index enters, lowest tied cell index
/// leaves), which rules out cycling on degenerate bases.
inline TransportationSolution solve_transportation(const TransportationProblem& problem) {
  const std::size_t m = problem.supply.size();
  const std::size_t n = problem.demand.size();
  if (m == 0 || n == 0) throw std::logic_error("transportation problem has an empty side");
  if (problem.cost.size() != m) throw std::logic_error("cost matrix row count mismatch");
  Rational supply_total(0), demand_total(0);
  for (const Rational& s : problem.supply) {
    if (s < 0) throw std::logic_error("negative supply");
    supply_total += s;
  }
  for (const Rational& d : problem.demand) {
    if (d < 0) throw std::logic_error("negative demand");
    demand_total += d;
  }
  if (supply_total != demand_total) throw std::logic_error("internal error: unbalanced transportation problem");
  for (const auto& row : problem.cost)
    if (row.size() != n) throw std::logic_error("cost matrix column count mismatch");

  const auto& c = problem.cost;
  std::vector<std::vector<bool>> basic(m, std::vector<bool>(n, false));
  std::vector<std::vector<Rational>> flow(m, std::vector<Rational>(n, Rational(0)));

  // Northwest corner: a staircase of m + n - 1 cells, which is a spanning
  // tree of the row/column bipartite graph.
  {
    std::vector<Rational> a = problem.supply, b = problem.demand;
    std::size_t i = 0, j = 0;
    for (;;) {
      const Rational x = a[i] < b[j] ? a[i] : b[j];
      basic[i][j] = true;
      flow[i][j] = x;
      a[i] -= x;
      b[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (i < m - 1 && (a[i] == 0 || j == n - 1))
        ++i;
      else
        ++j;
    }
  }

  TransportationSolution out;
  const std::size_t nodes = m + n;  // rows 0..m-1, columns m..m+n-1
  for (;;) {
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (basic[i][j]) {
          adj[i].push_back(m + j);
          adj[m + j].push_back(i);
        }

    std::vector<Rational> potential(nodes, Rational(0));
    {
      std::vector<bool> seen(nodes, false);
      std::queue<std::size_t> q;
      q.push(0);
      seen[0] = true;
      while (!q.empty()) {
        const std::size_t x = q.front();
        q.pop();
        for (std::size_t y : adj[x]) {
          if (seen[y]) continue;
          seen[y] = true;
          // u_i + v_j = c_ij on basic cells
          if (x < m)
            potential[y] = c[x][y - m] - potential[x];
          else
            potential[y] = c[y][x - m] - potential[x];
          q.push(y);
        }
      }
    }

    std::optional<std::pair<std::size_t, std::size_t>> entering;
    for (std::size_t i = 0; i < m && !entering; ++i)
      for (std::size_t j = 0; j < n && !entering; ++j)
        if (!basic[i][j] && c[i][j] - potential[i] - potential[m + j] < 0) entering = {i, j};
    if (!entering) break;

    // Tree path from row node i to column node j closes the pivot cycle.
    const auto [ei, ej] = *entering;
    std::vector<std::size_t> parent(nodes, nodes);
    {
      std::queue<std::size_t> q;
      q.push(ei);
      parent[ei] = ei;
      while (!q.empty()) {
        const std::size_t x = q.front();
        q.pop();
        for (std::size_t y : adj[x])
          if (parent[y] == nodes) {
            parent[y] = x;
            q.push(y);
          }
      }
    }
    std::vector<std::size_t> chain;  // nodes from column j back to row i
    for (std::size_t x = m + ej; x != ei; x = parent[x]) chain.push_back(x);
    chain.push_back(ei);

    struct Step {
      std::size_t row, col;
      bool plus;
    };
    std::vector<Step> cycle{{ei, ej, true}};
    // Walking from row i toward column j, cells alternate -, +, -, ...
    bool plus = false;
    for (std::size_t k = chain.size() - 1; k > 0; --k) {
      const std::size_t a = chain[k], b = chain[k - 1];
      const std::size_t row = a < m ? a : b;
      const std::size_t col = (a < m ? b : a) - m;
      cycle.push_back({row, col, plus});
      plus = !plus;
    }

    std::optional<Rational> theta;
    std::optional<std::pair<std::size_t, std::size_t>> leaving;
    for (const Step& s : cycle) {
      if (s.plus) continue;
      const Rational& f = flow[s.row][s.col];
      const bool better = !theta || f < *theta ||
                          (f == *theta && std::make_pair(s.row, s.col) < *leaving);
      if (better) {
        theta = f;
        leaving = {s.row, s.col};
      }
    }
    for (const Step& s : cycle) {
      if (s.plus)
        flow[s.row][s.col] += *theta;
      else
        flow[s.row][s.col] -= *theta;
    }
    basic[ei][ej] = true;
    basic[leaving->first][leaving->second] = false;
    ++out.pivots;
  }

  out.cost = Rational(0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (basic[i][j]) {
        out.basis.push_back({i, j, flow[i][j]});
        out.cost += flow[i][j] * c[i][j];
      }
  return out;
}

}  // namespace treewass

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "treewass/geodesic.hpp"
#include "treewass/measure.hpp"
#include "treewass/rational.hpp"
#include "treewass/transportation.hpp"
#include "treewass/tree.hpp"

namespace treewass {

struct Coupling {
  TreePoint source;
  TreePoint target;
  Rational mass;
};

struct TransportPlan {
  std::vector<Coupling> couplings;
  Rational cost;  // Σ mass · d²(source, target)
};

inline Rational plan_cost(const Tree& tree, const std::vector<Coupling>& couplings) {
  Rational sum(0);
  for (const Coupling& c : couplings) sum += c.mass * square(tree.distance(c.source, c.target));
  return sum;
}

inline TransportPlan make_plan(const Tree& tree, std::vector<Coupling> couplings) {
  Rational cost = plan_cost(tree, couplings);
  return {std::move(couplings), std::move(cost)};
}

inline Measure source_marginal(const Tree& tree, const TransportPlan& plan) {
  std::vector<Atom> atoms;
  for (const Coupling& c : plan.couplings) atoms.push_back({c.source, c.mass});
  return Measure::make(tree, atoms);
}

inline Measure target_marginal(const Tree& tree, const TransportPlan& plan) {
  std::vector<Atom> atoms;
  for (const Coupling& c : plan.couplings) atoms.push_back({c.target, c.mass});
  return Measure::make(tree, atoms);
}

/// Exact optimal coupling for the quadratic cost d².
inline TransportPlan optimal_plan(const Tree& tree, const Measure& mu, const Measure& nu) {
  TransportationProblem problem;
  for (const Atom& a : mu.atoms()) problem.supply.push_back(a.mass);
  for (const Atom& b : nu.atoms()) problem.demand.push_back(b.mass);
  for (const Atom& a : mu.atoms()) {
    std::vector<Rational> row;
    for (const Atom& b : nu.atoms()) row.push_back(square(tree.distance(a.location, b.location)));
    problem.cost.push_back(std::move(row));
  }
  const TransportationSolution sol = solve_transportation(problem);
  TransportPlan plan{{}, sol.cost};
  for (const BasicCell& cell : sol.basis)
    if (cell.flow > 0) plan.couplings.push_back({mu.atoms()[cell.row].location, nu.atoms()[cell.col].location, cell.flow});
  return plan;
}

/// W₂²(μ, ν). W₂ itself is irrational in general; callers compare squares.
inline Rational w2_squared(const Tree& tree, const Measure& mu, const Measure& nu) {
  return optimal_plan(tree, mu, nu).cost;
}

/// The only plan out of a Dirac mass.
inline TransportPlan plan_from_dirac(const Tree& tree, const TreePoint& x, const Measure& mu) {
  std::vector<Coupling> cs;
  for (const Atom& a : mu.atoms()) cs.push_back({x, a.location, a.mass});
  return make_plan(tree, std::move(cs));
}

/// Displacement interpolation of a plan: every coupled mass slides along its
/// path at constant speed.
class WassersteinGeodesic {
 public:
  WassersteinGeodesic(const Tree& tree, TransportPlan plan) : plan_(std::move(plan)) {
    for (const Coupling& c : plan_.couplings) paths_.push_back(path(tree, c.source, c.target));
  }

  const TransportPlan& plan() const { return plan_; }
  const std::vector<Segment>& paths() const { return paths_; }

  Measure at(const Tree& tree, const Rational& t) const {
    if (t < 0 || t > 1) throw ValidationError("t must lie in [0,1]");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < paths_.size(); ++i)
      atoms.push_back({paths_[i].point_at(tree, t * paths_[i].length), plan_.couplings[i].mass});
    return Measure::make(tree, atoms);
  }

 private:
  TransportPlan plan_;
  std::vector<Segment> paths_;
};

inline Measure interpolate(const Tree& tree, const TransportPlan& plan, const Rational& t) {
  return WassersteinGeodesic(tree, plan).at(tree, t);
}

/// x^t·μ: the W₂ geodesic from δ_x to μ at time t.
inline Measure dilate(const Tree& tree, const TreePoint& x, const Measure& mu, const Rational& t) {
  return interpolate(tree, plan_from_dirac(tree, x, mu), t);
}

struct CycleWitness {
  std::vector<std::size_t> cycle;  // coupling indices i1..ik; rearrangement sends source(i_j) to target(i_{j+1})
  Rational cost;                   // Σ d²(source_i, target_i) over the cycle
  Rational rearranged_cost;        // strictly smaller
};

struct MonotonicityResult {
  bool monotone = true;
  std::optional<CycleWitness> witness;
};

/// Searches cycles of coupling pairs of length 2..max_cycle_len for a
/// cyclic rearrangement of targets that lowers the quadratic cost. Lengths
/// above 2 are limited to plans with at most 8 couplings.
inline MonotonicityResult is_cyclically_monotone(const Tree& tree, const TransportPlan& plan,
                                                 std::size_t max_cycle_len = 2) {
  const std::size_t k = plan.couplings.size();
  if (max_cycle_len > 2 && k > 8) throw ValidationError("exhaustive cycle search is limited to plans with at most 8 couplings");
  std::vector<std::vector<Rational>> c(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c[i][j] = square(tree.distance(plan.couplings[i].source, plan.couplings[j].target));

  MonotonicityResult result;
  std::vector<std::size_t> seq;
  std::vector<bool> used(k, false);
  // seq[0] is the smallest index of the cycle, so each cycle is met once per rotation class.
  std::function<bool(const Rational&, const Rational&)> extend = [&](const Rational& diag, const Rational& chain) {
    if (seq.size() >= 2) {
      const Rational closed = chain + c[seq.back()][seq.front()];
      if (closed < diag) {
        result.monotone = false;
        result.witness = CycleWitness{seq, diag, closed};
        return true;
      }
    }
    if (seq.size() == max_cycle_len) return false;
    for (std::size_t j = seq.front() + 1; j < k; ++j) {
      if (used[j]) continue;
      used[j] = true;
      const Rational step = c[seq.back()][j];
      seq.push_back(j);
      if (extend(diag + c[j][j], chain + step)) return true;
      seq.pop_back();
      used[j] = false;
    }
    return false;
  };
  for (std::size_t s = 0; s < k; ++s) {
    seq = {s};
    std::fill(used.begin(), used.end(), false);
    used[s] = true;
    if (extend(c[s][s], Rational(0))) break;
  }
  return result;
}

/// Extends the W₂ geodesic from δ_x to μ to time t >= 0. Each atom keeps
/// moving past its target along `rule`; atoms at x stay put. Agrees with
/// dilate for t <= 1.
inline Measure extend_from_dirac(const Tree& tree, const TreePoint& x, const Measure& mu, const Rational& t,
                                 const ExtensionRule& rule = smallest_edge_rule) {
  if (!tree.is_geodesically_complete()) throw ValidationError("tree is not geodesically complete");
  if (t < 0) throw ValidationError("t must be nonnegative");
  tree.require(x);
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms()) {
    if (a.location == x) {
      atoms.push_back(a);
      continue;
    }
    const Segment seg = path(tree, x, a.location);
    atoms.push_back({advance(tree, seg, t * seg.length, rule), a.mass});
  }
  return Measure::make(tree, atoms);
}

/// Two-cycle ((y′, y″), (y, y)) showing that a proposed extension of the
/// geodesic μ0 → δ_y to time 1 + ε is not an optimal plan.
struct NonExtensionWitness {
  TreePoint y_prime;
  TreePoint y;
  TreePoint y_double_prime;
  Rational plan_cost;     // d²(y′, y″) + d²(y, y)
  Rational swapped_cost;  // d²(y′, y) + d²(y, y″)
  bool violated = false;
  TransportPlan proposed;
  MonotonicityResult monotonicity;
};

/// Builds the continuation of μ0 → δ_y to time 1 + ε (each atom y′ ≠ y
/// overshoots y by ε·d(y′, y) along `rule`, the atom at y stays) and
/// exhibits the cost-lowering swap.
inline NonExtensionWitness check_nonextendable(const Tree& tree, const Measure& mu0, const TreePoint& y,
                                               const Rational& epsilon = Rational(1),
                                               const ExtensionRule& rule = smallest_edge_rule) {
  if (mu0.is_dirac()) throw ValidationError("source measure is a Dirac mass");
  if (!mu0.in_support(y)) throw ValidationError("y is not in the support of the source measure");
  if (epsilon < 0) throw ValidationError("extension length must be nonnegative");

  std::vector<Coupling> cs;
  std::optional<std::size_t> first_other;
  for (const Atom& a : mu0.atoms()) {
    if (a.location == y) {
      cs.push_back({y, y, a.mass});
      continue;
    }
    const Segment seg = path(tree, a.location, y);
    if (!first_other) first_other = cs.size();
    cs.push_back({a.location, advance(tree, seg, (1 + epsilon) * seg.length, rule), a.mass});
  }
  NonExtensionWitness w{cs[*first_other].source, y, cs[*first_other].target, {}, {}, false, {}, {}};
  w.plan_cost = square(tree.distance(w.y_prime, w.y_double_prime));
  w.swapped_cost = square(tree.distance(w.y_prime, y)) + square(tree.distance(y, w.y_double_prime));
  w.violated = w.swapped_cost < w.plan_cost;
  w.proposed = make_plan(tree, std::move(cs));
  w.monotonicity = is_cyclically_monotone(tree, w.proposed, 2);
  return w;
}

}  // namespace treewass

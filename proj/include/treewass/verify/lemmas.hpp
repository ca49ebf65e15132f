#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treewass/geodesic.hpp"
#include "treewass/measure.hpp"
#include "treewass/transport.hpp"

namespace treewass::verify {

enum class Relation { less, equal, greater };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::less: return "less";
    case Relation::equal: return "equal";
    case Relation::greater: return "greater";
  }
  return "?";
}

struct ThalesCheck {
  Rational lhs_squared;  // W²(x^{1/2}·μ, δ_{(x+g)/2})
  Rational rhs_squared;  // W²(μ, δ_g) / 4
  Relation relation = Relation::equal;
  bool supported_on_geodesic = false;
};

/// Midpoint comparison for the dilation of μ from x against the Dirac at g.
/// Always lhs <= rhs; equality characterizes support on γ when x and g are
/// placed as in `thales_configuration`.
inline ThalesCheck check_thales(const Tree& tree, const Geodesic& geodesic, const TreePoint& x, const TreePoint& g,
                                const Measure& mu) {
  if (!geodesic.contains(x) || !geodesic.contains(g)) throw ValidationError("x and g must lie on the geodesic");
  const Measure half = dilate(tree, x, mu, Rational(1, 2));
  const TreePoint mid = midpoint(tree, x, g);
  ThalesCheck c;
  c.lhs_squared = w2_squared(tree, half, Measure::dirac(tree, mid));
  c.rhs_squared = w2_squared(tree, mu, Measure::dirac(tree, g)) / 4;
  c.relation = c.lhs_squared < c.rhs_squared ? Relation::less
               : c.lhs_squared == c.rhs_squared ? Relation::equal
                                                : Relation::greater;
  c.supported_on_geodesic = true;
  for (const Atom& a : mu.atoms()) c.supported_on_geodesic = c.supported_on_geodesic && geodesic.contains(a.location);
  return c;
}

/// Places x before every projection of supp μ and g beyond all of them with
/// d(x, g) > d(x, y) for every support point y. Off-geodesic atoms then form
/// non-aligned triangles with x and g. Needs both ends of γ to be rays.
inline std::pair<TreePoint, TreePoint> thales_configuration(const Tree& tree, const Geodesic& geodesic, const Measure& mu) {
  if (!geodesic.is_complete()) throw ValidationError("configuration needs a complete geodesic");
  Rational lo = geodesic.vertex_coordinate(0);
  for (const Atom& a : mu.atoms()) {
    const Rational c = geodesic.coordinate(tree, geodesic.project(tree, a.location));
    if (c < lo) lo = c;
  }
  const TreePoint x = geodesic.point_at(tree, lo - 1);
  Rational reach(0);
  for (const Atom& a : mu.atoms()) {
    const Rational d = tree.distance(x, a.location);
    if (d > reach) reach = d;
  }
  const TreePoint g = geodesic.point_at(tree, lo - 1 + reach + 1);
  return {x, g};
}

struct ExtensionCheck {
  bool passed = false;
  std::string detail;
};

/// Dirac masses are the measures from which geodesics extend: checks that
/// the geodesic δ_x → μ extends up to `horizon` with the exact geodesic
/// property, and that for non-Dirac μ the reversed problem μ → δ_y (y in the
/// support) admits no extension.
inline ExtensionCheck check_dirac_preserved_extension(const Tree& tree, const TreePoint& x, const Measure& mu,
                                                      const Rational& horizon) {
  if (horizon <= 1) throw ValidationError("horizon must exceed 1");
  const Measure m1 = extend_from_dirac(tree, x, mu, Rational(1));
  if (!(m1 == mu)) return {false, "extension at time 1 differs from the target"};
  const Rational base = w2_squared(tree, Measure::dirac(tree, x), mu);
  const std::vector<Rational> times{Rational(0), Rational(1, 2), Rational(1), (1 + horizon) / 2, horizon};
  std::vector<Measure> at;
  for (const Rational& t : times) at.push_back(extend_from_dirac(tree, x, mu, t));
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = i + 1; j < times.size(); ++j)
      if (w2_squared(tree, at[i], at[j]) != square(times[j] - times[i]) * base)
        return {false, "geodesic property fails between t=" + format_rational(times[i]) + " and t=" + format_rational(times[j])};
  if (mu.is_dirac()) return {true, "dirac target: reversal check vacuous"};
  for (const Atom& a : mu.atoms()) {
    const NonExtensionWitness w = check_nonextendable(tree, mu, a.location, horizon - 1);
    if (!w.violated || w.monotonicity.monotone) return {false, "no cyclical-monotonicity violation for reversed geodesic"};
  }
  return {true, "extension exact; reversal blocked"};
}

}  // namespace treewass::verify

#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "treewass/geodesic.hpp"
#include "treewass/rational.hpp"
#include "treewass/tree.hpp"

namespace treewass {

struct Atom {
  TreePoint location;
  Rational mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely supported probability measure with exact masses. Atoms are
/// sorted by location and pairwise distinct.
class Measure {
 public:
  /// Merges atoms sharing a location. Throws on nonpositive masses, points
  /// off the tree, or a total other than 1.
  static Measure make(const Tree& tree, const std::vector<Atom>& atoms) {
    std::map<TreePoint, Rational> merged;
    for (const Atom& a : atoms) {
      if (a.mass <= 0) throw ValidationError("nonpositive mass " + format_rational(a.mass));
      tree.require(a.location);
      merged[a.location] += a.mass;
    }
    Measure m;
    Rational total(0);
    for (auto& [p, w] : merged) {
      total += w;
      m.atoms_.push_back({p, w});
    }
    if (total != 1) throw ValidationError("masses sum to " + format_rational(total) + ", expected 1");
    return m;
  }

  static Measure dirac(const Tree& tree, const TreePoint& p) { return make(tree, {{p, Rational(1)}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_dirac() const { return atoms_.size() == 1; }

  Rational mass_at(const TreePoint& p) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                               [](const Atom& a, const TreePoint& q) { return a.location < q; });
    return it != atoms_.end() && it->location == p ? it->mass : Rational(0);
  }

  bool in_support(const TreePoint& p) const { return mass_at(p) > 0; }

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  Measure() = default;
  std::vector<Atom> atoms_;
};

inline Measure make_measure(const Tree& tree, const std::vector<Atom>& atoms) { return Measure::make(tree, atoms); }

/// One-dimensional image (p_γ)#μ, in arc-length coordinates of `geodesic`.
struct RadonSample {
  Geodesic geodesic;
  std::vector<std::pair<Rational, Rational>> atoms;  // (coordinate, mass), coordinates increasing

  Rational mass_at(const Rational& coordinate) const {
    for (const auto& [c, m] : atoms)
      if (c == coordinate) return m;
    return Rational(0);
  }

  friend bool operator==(const RadonSample& a, const RadonSample& b) { return a.atoms == b.atoms; }
};

inline RadonSample pushforward_projection(const Tree& tree, const Geodesic& geodesic, const Measure& mu) {
  std::map<Rational, Rational> bins;
  for (const Atom& a : mu.atoms()) bins[geodesic.coordinate(tree, geodesic.project(tree, a.location))] += a.mass;
  RadonSample s{geodesic, {}};
  for (auto& [c, m] : bins) s.atoms.emplace_back(c, m);
  return s;
}

/// Measure on the tree carried by a sample's atoms.
inline Measure sample_to_measure(const Tree& tree, const RadonSample& sample) {
  std::vector<Atom> atoms;
  for (const auto& [c, m] : sample.atoms) atoms.push_back({sample.geodesic.point_at(tree, c), m});
  return Measure::make(tree, atoms);
}

/// ∫ d²(x0, x) dμ(x).
inline Rational second_moment(const Tree& tree, const Measure& mu, const TreePoint& x0) {
  Rational sum(0);
  for (const Atom& a : mu.atoms()) sum += a.mass * square(tree.distance(x0, a.location));
  return sum;
}

}  // namespace treewass

#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "treewass/io.hpp"
#include "treewass/radon.hpp"
#include "treewass/transport.hpp"
#include "treewass/verify/generators.hpp"
#include "treewass/verify/lemmas.hpp"
#include "treewass/verify/oracles.hpp"

namespace treewass::verify {

using json = nlohmann::json;

/// A property trial returns nothing on success and a counterexample payload
/// on failure.
using Trial = std::function<std::optional<json>(const SuiteConfig&, Rng&)>;

struct Property {
  std::string name;
  Trial trial;
};

struct Counterexample {
  std::uint64_t trial_seed = 0;
  std::size_t trial = 0;
  SuiteConfig shrunk;
  json payload;
};

struct PropertyRecord {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<Counterexample> counterexamples;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<PropertyRecord> properties;
  std::chrono::milliseconds duration{0};

  bool ok() const {
    for (const auto& p : properties)
      if (p.failed) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& p : properties) n += p.failed;
    return n;
  }
};

namespace props {

inline json describe(const Tree& tree) { return io::to_json(tree); }

inline std::optional<json> fail(const std::string& what, json extra = json::object()) {
  extra["reason"] = what;
  return extra;
}

inline Tree any_tree(const SuiteConfig& c, Rng& rng) {
  const bool finite = rng.coin() && c.max_vertices >= 2;
  return gen_tree(c, finite ? TreeMode::finite : TreeMode::complete, rng);
}

inline Tree complete_tree(const SuiteConfig& c, Rng& rng) { return gen_tree(c, TreeMode::complete, rng); }

inline std::optional<json> metric_axioms(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const TreePoint p = gen_point(t, rng, c.max_denominator), q = gen_point(t, rng, c.max_denominator),
                  r = gen_point(t, rng, c.max_denominator);
  const Rational pq = t.distance(p, q), qp = t.distance(q, p), pr = t.distance(p, r), qr = t.distance(q, r);
  if (pq != qp) return fail("distance not symmetric", {{"tree", describe(t)}});
  if (t.distance(p, p) != 0) return fail("d(p,p) != 0", {{"tree", describe(t)}});
  if ((pq == 0) != (p == q)) return fail("zero distance between distinct points", {{"tree", describe(t)}});
  if (pr > pq + qr) return fail("triangle inequality violated", {{"tree", describe(t)}});
  if (path(t, p, q).length != pq) return fail("path length differs from distance", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> projection_lipschitz(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Geodesic g = gen_geodesic(t, rng);
  const TreePoint p = gen_point(t, rng, c.max_denominator), q = gen_point(t, rng, c.max_denominator);
  const TreePoint pp = g.project(t, p), pq = g.project(t, q);
  if (t.distance(pp, pq) > t.distance(p, q)) return fail("projection expands distance", {{"tree", describe(t)}});
  if (g.project(t, pp) != pp) return fail("projection not idempotent", {{"tree", describe(t)}});
  for (VertexId v : g.vertices())
    if (t.distance(p, t.vertex_point(v)) < t.distance(p, pp)) return fail("projection is not the closest point");
  return std::nullopt;
}

inline std::optional<json> perpendicular_level_set(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const Flag fl = gen_flag(t, rng);
  const Subtree perp = perpendicular(t, fl);
  for (const Geodesic& g : {geodesic_through_flag(t, fl), maximal_geodesic_through_flag(t, fl, random_rule(rng.below(1u << 30)))}) {
    for (int i = 0; i < 6; ++i) {
      const TreePoint p = gen_point(t, rng, c.max_denominator);
      const bool level = g.project(t, p) == t.vertex_point(fl.vertex);
      if (level != perp.contains(p)) return fail("perpendicular differs from projection level set", {{"tree", describe(t)}});
    }
  }
  return std::nullopt;
}

inline std::optional<json> cat0_inequality(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  std::vector<TreePoint> pts{gen_point(t, rng, c.max_denominator), gen_point(t, rng, c.max_denominator),
                             gen_point(t, rng, c.max_denominator)};
  if (rng.coin()) {
    // aligned triple: a point of the segment between the other two, shuffled
    const Segment s = path(t, pts[0], pts[2]);
    pts[1] = s.point_at(t, s.length * make_rational(static_cast<std::int64_t>(rng.below(5)), 4));
    std::swap(pts[rng.below(3)], pts[rng.below(3)]);
  }
  const Rational t_value = make_rational(static_cast<std::int64_t>(rng.below(5)), 4);
  const TriangleCheck chk = check_cat0_triangle(t, pts[0], pts[1], pts[2], t_value);
  json info{{"tree", describe(t)}, {"t", format_rational(t_value)}, {"lhs", format_rational(chk.lhs)}, {"rhs", format_rational(chk.rhs)}};
  if (!chk.holds) return fail("CAT(0) inequality violated", info);
  const bool interior = t_value > 0 && t_value < 1;
  if (chk.aligned && chk.strict) return fail("aligned triple gives strict inequality", info);
  if (!chk.aligned && interior && !chk.strict) return fail("non-aligned triple gives equality", info);
  if ((t_value == 0 || t_value == 1) && chk.strict) return fail("endpoint parameter gives strict inequality", info);
  return std::nullopt;
}

inline std::optional<json> cat0_gap_calibration(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const TreePoint x = gen_point(t, rng, c.max_denominator), y = gen_point(t, rng, c.max_denominator),
                  z = gen_point(t, rng, c.max_denominator);
  const Rational t_value = make_rational(rng.between(1, 3), 4);
  const TriangleCheck chk = check_cat0_triangle(t, x, y, z, t_value);
  const Rational oracle = comparison_gap(t.distance(x, y), t.distance(y, z), t.distance(x, z), t_value);
  if (chk.rhs - chk.lhs != oracle) return fail("gap differs from comparison-tripod computation", {{"tree", describe(t)}});
  if (!chk.aligned && !(oracle > 0)) return fail("non-aligned gap not positive", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> pushforward_mass(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Geodesic g = gen_geodesic(t, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const RadonSample s = pushforward_projection(t, g, mu);
  Rational total(0);
  for (const auto& [coord, m] : s.atoms) total += m;
  if (total != 1) return fail("pushforward lost mass", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> pushforward_idempotent(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Geodesic g = gen_geodesic(t, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const RadonSample once = pushforward_projection(t, g, mu);
  const RadonSample twice = pushforward_projection(t, g, sample_to_measure(t, once));
  if (!(once == twice)) return fail("repeated projection changed the sample", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> pushforward_contraction(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Geodesic g = gen_geodesic(t, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure nu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure pmu = sample_to_measure(t, pushforward_projection(t, g, mu));
  const Measure pnu = sample_to_measure(t, pushforward_projection(t, g, nu));
  if (w2_squared(t, pmu, pnu) > w2_squared(t, mu, nu)) return fail("projection increased W2", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> plan_marginals(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure nu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const TransportPlan plan = optimal_plan(t, mu, nu);
  if (!(source_marginal(t, plan) == mu) || !(target_marginal(t, plan) == nu))
    return fail("plan marginals differ from inputs", {{"tree", describe(t)}});
  if (plan_cost(t, plan.couplings) != plan.cost) return fail("cached cost differs from recomputed cost");
  return std::nullopt;
}

/// W(μ,κ) <= W(μ,ν) + W(ν,κ) on squares: A <= B + C or (A - B - C)² <= 4BC.
inline bool w2_triangle_holds(const Rational& a, const Rational& b, const Rational& c) {
  if (a <= b + c) return true;
  return square(a - b - c) <= 4 * b * c;
}

inline std::optional<json> w2_triangle(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure nu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure ka = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Rational a = w2_squared(t, mu, ka), b = w2_squared(t, mu, nu), cc = w2_squared(t, nu, ka);
  if (!w2_triangle_holds(a, b, cc)) return fail("W2 triangle inequality violated", {{"tree", describe(t)}});
  if (w2_squared(t, mu, mu) != 0) return fail("W2(mu,mu) != 0");
  if (w2_squared(t, mu, nu) != w2_squared(t, nu, mu)) return fail("W2 not symmetric", {{"tree", describe(t)}});
  if ((b == 0) != (mu == nu)) return fail("W2 zero between distinct measures", {{"tree", describe(t)}});
  return std::nullopt;
}

inline const std::vector<Rational>& quarter_grid() {
  static const std::vector<Rational> grid{Rational(0), make_rational(1, 4), make_rational(1, 2), make_rational(3, 4), Rational(1)};
  return grid;
}

inline std::optional<json> interpolation_geodesic(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure nu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const WassersteinGeodesic geo(t, optimal_plan(t, mu, nu));
  const Rational base = geo.plan().cost;
  const auto& grid = quarter_grid();
  const Rational s = rng.pick(grid), u = rng.pick(grid);
  if (!(geo.at(t, Rational(0)) == mu) || !(geo.at(t, Rational(1)) == nu)) return fail("interpolation endpoints differ");
  if (w2_squared(t, geo.at(t, s), geo.at(t, u)) != square(u - s) * base)
    return fail("interpolation is not a constant-speed geodesic", {{"tree", describe(t)}, {"s", format_rational(s)}, {"t", format_rational(u)}});
  return std::nullopt;
}

inline std::optional<json> extension_geodesic(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const TreePoint x = gen_point(t, rng, c.max_denominator);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const std::vector<Rational> times{Rational(0), make_rational(1, 2), Rational(1), make_rational(3, 2), Rational(2)};
  const Rational s = rng.pick(times), u = rng.pick(times);
  const Rational base = w2_squared(t, Measure::dirac(t, x), mu);
  if (w2_squared(t, extend_from_dirac(t, x, mu, s), extend_from_dirac(t, x, mu, u)) != square(u - s) * base)
    return fail("extension is not a constant-speed geodesic", {{"tree", describe(t)}});
  if (!(extend_from_dirac(t, x, mu, Rational(1, 2)) == dilate(t, x, mu, Rational(1, 2))))
    return fail("extension disagrees with dilation on [0,1]");
  return std::nullopt;
}

inline std::optional<json> optimal_plan_monotone(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Measure nu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const TransportPlan plan = optimal_plan(t, mu, nu);
  const std::size_t longest = plan.couplings.size() <= 8 ? std::min<std::size_t>(plan.couplings.size(), 4) : 2;
  for (std::size_t len = 2; len <= longest; ++len)
    if (!is_cyclically_monotone(t, plan, len).monotone) return fail("optimal plan not cyclically monotone", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> solver_vs_bruteforce(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const std::size_t atoms = std::min<std::size_t>(c.max_atoms, 4);
  const Measure mu = gen_measure(t, rng, atoms, c.max_denominator);
  const Measure nu = gen_measure(t, rng, atoms, c.max_denominator);
  const Rational fast = w2_squared(t, mu, nu), slow = brute_force_w2_squared(t, mu, nu);
  if (fast != slow)
    return fail("solver disagrees with extreme-point enumeration",
                {{"tree", describe(t)}, {"mu", io::to_json(t, mu)}, {"nu", io::to_json(t, nu)},
                 {"solver", format_rational(fast)}, {"enumeration", format_rational(slow)}});
  return std::nullopt;
}

inline std::optional<json> radon_roundtrip(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const VertexFunction h = gen_vertex_function(t, rng, c.max_denominator);
  FlagTable table = radon_forward(t, h);
  if (c.inject_fault && !table.empty()) table.begin()->second += 1;
  const VertexFunction back = radon_invert(t, table, h.total());
  if (!(back == h)) return fail("inversion did not recover h", {{"tree", describe(t)}, {"h", io::to_json(t, h)}});
  if (!(radon_forward(t, back) == table)) return fail("forward of inverse differs from table");
  return std::nullopt;
}

inline std::optional<json> radon_forward_bruteforce(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const VertexFunction h = gen_vertex_function(t, rng, c.max_denominator);
  for (const auto& [fl, value] : radon_forward(t, h))
    if (value != perpendicular_sum(t, h, fl)) return fail("branch-sum transform differs from perpendicular sum", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> double_counting(const SuiteConfig& c, Rng& rng) {
  const Tree t = any_tree(c, rng);
  const VertexFunction h = gen_vertex_function(t, rng, c.max_denominator);
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (t.valency(vertex_id(v)) < 2) continue;
    const DoubleCount dc = double_count_check(t, h, vertex_id(v));
    if (dc.lhs != dc.rhs) return fail("double counting identity fails", {{"tree", describe(t)}, {"vertex", t.name(vertex_id(v))}});
  }
  return std::nullopt;
}

inline std::optional<json> radon_injectivity(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const VertexFunction h = gen_vertex_function(t, rng, c.max_denominator);
  VertexFunction l = h;
  if (t.vertex_count() == 1) return std::nullopt;  // equal totals force h = l
  const VertexId a = vertex_id(rng.below(t.vertex_count()));
  VertexId b = vertex_id(rng.below(t.vertex_count() - 1));
  if (index(b) >= index(a)) b = vertex_id(index(b) + 1);
  const Rational delta = make_rational(rng.between(1, c.max_denominator), rng.between(1, c.max_denominator));
  l.set(a, l[a] + delta);
  l.set(b, l[b] - delta);
  if (radon_forward(t, h) == radon_forward(t, l)) return fail("distinct functions with equal totals share a transform", {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> reconstruction(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const Measure hidden = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  std::vector<EdgeId> skeleton;
  for (std::size_t e = 0; e < t.edge_count(); ++e) skeleton.push_back(edge_id(e));
  const Reconstruction r = reconstruct_measure(t, [&](const Geodesic& g) { return radon_measure(t, hidden, g); }, skeleton);
  if (!(r.measure == hidden))
    return fail("reconstruction differs from hidden measure", {{"tree", describe(t)}, {"hidden", io::to_json(t, hidden)}});
  return std::nullopt;
}

inline std::optional<json> flag_mass_perpendicular(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const Flag fl = gen_flag(t, rng);
  if (flag_mass(t, mu, fl) != subtree_mass(perpendicular(t, fl), mu))
    return fail("flag mass differs from perpendicular mass", {{"tree", describe(t)}});
  // Swapping f for a third edge g moves mass μ(C_g) - μ(C_f) in or out.
  for (EdgeId g : t.incident(fl.vertex)) {
    if (g == fl.e || g == fl.f) continue;
    const Rational diff = flag_mass(t, mu, fl) - flag_mass(t, mu, make_flag(t, fl.vertex, fl.e, g));
    if (diff != branch_mass(t, mu, fl.vertex, g) - branch_mass(t, mu, fl.vertex, fl.f))
      return fail("flag refinement mismatch", {{"tree", describe(t)}});
  }
  return std::nullopt;
}

inline std::optional<json> thales(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const Geodesic g = geodesic_through_flag(t, gen_flag(t, rng));
  Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  if (rng.coin()) {
    std::vector<TreePoint> pts;
    const auto count = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(c.max_atoms)));
    for (std::size_t i = 0; i < count; ++i) pts.push_back(gen_point_on(t, g, rng, c.max_denominator));
    mu = measure_on(t, pts, rng, c.max_denominator);
  }
  const auto [x, target] = thales_configuration(t, g, mu);
  const ThalesCheck chk = check_thales(t, g, x, target, mu);
  json info{{"tree", describe(t)}, {"mu", io::to_json(t, mu)}, {"lhs2", format_rational(chk.lhs_squared)},
            {"rhs2", format_rational(chk.rhs_squared)}};
  if (chk.relation == Relation::greater) return fail("Thales inequality violated", info);
  if ((chk.relation == Relation::equal) != chk.supported_on_geodesic)
    return fail("equality does not match support on the geodesic", info);
  return std::nullopt;
}

inline std::optional<json> dirac_extension(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const TreePoint x = gen_point(t, rng, c.max_denominator);
  const Measure mu = gen_measure(t, rng, c.max_atoms, c.max_denominator);
  const ExtensionCheck chk = check_dirac_preserved_extension(t, x, mu, Rational(3));
  if (!chk.passed) return fail(chk.detail, {{"tree", describe(t)}});
  return std::nullopt;
}

inline std::optional<json> nonextendable(const SuiteConfig& c, Rng& rng) {
  const Tree t = complete_tree(c, rng);
  const Measure mu0 = gen_spread_measure(t, rng, c.max_atoms, c.max_denominator);
  const TreePoint y = rng.pick(mu0.atoms()).location;
  const Rational eps = make_rational(rng.between(1, c.max_denominator), rng.between(1, c.max_denominator));
  const NonExtensionWitness w = check_nonextendable(t, mu0, y, eps, random_rule(rng.below(1u << 30)));
  if (!w.violated || w.monotonicity.monotone) return fail("extension past a Dirac target not refuted", {{"tree", describe(t)}});
  if (!(square(1 + eps) > 1 + square(eps))) return fail("convexity of the cost fails");
  return std::nullopt;
}

}  // namespace props

inline std::vector<Property> all_properties() {
  using namespace props;
  return {
      {"tree.metric_axioms", metric_axioms},
      {"tree.projection_lipschitz", projection_lipschitz},
      {"tree.perpendicular_level_set", perpendicular_level_set},
      {"tree.cat0_inequality", cat0_inequality},
      {"tree.cat0_gap_calibration", cat0_gap_calibration},
      {"measures.pushforward_mass", pushforward_mass},
      {"measures.pushforward_idempotent", pushforward_idempotent},
      {"measures.pushforward_contraction", pushforward_contraction},
      {"transport.plan_marginals", plan_marginals},
      {"transport.w2_triangle", w2_triangle},
      {"transport.interpolation_geodesic", interpolation_geodesic},
      {"transport.extension_geodesic", extension_geodesic},
      {"transport.optimal_plan_monotone", optimal_plan_monotone},
      {"transport.solver_vs_bruteforce", solver_vs_bruteforce},
      {"radon.roundtrip", radon_roundtrip},
      {"radon.forward_bruteforce", radon_forward_bruteforce},
      {"radon.double_counting", double_counting},
      {"radon.injectivity", radon_injectivity},
      {"radon.reconstruction", reconstruction},
      {"radon.flag_mass", flag_mass_perpendicular},
      {"lemmas.thales", thales},
      {"lemmas.dirac_extension", dirac_extension},
      {"lemmas.nonextendable", nonextendable},
  };
}

inline std::optional<json> run_trial(const Property& p, const SuiteConfig& c, std::uint64_t seed) {
  Rng rng(seed);
  try {
    return p.trial(c, rng);
  } catch (const std::exception& e) {
    return props::fail(std::string("exception: ") + e.what());
  }
}

/// Shrinks generator bounds while the trial keeps failing: vertex count
/// first, then denominators, then atom count.
inline Counterexample shrink(const Property& p, const SuiteConfig& c, std::uint64_t seed, std::size_t trial, json payload) {
  Counterexample best{seed, trial, c, std::move(payload)};
  auto attempt = [&](SuiteConfig candidate) {
    try {
      candidate.validate();
    } catch (const ValidationError&) {
      return false;
    }
    if (auto failure = run_trial(p, candidate, seed)) {
      best.shrunk = candidate;
      best.payload = std::move(*failure);
      return true;
    }
    return false;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    while (best.shrunk.max_vertices > best.shrunk.min_vertices) {
      SuiteConfig cand = best.shrunk;
      --cand.max_vertices;
      if (!attempt(cand)) break;
      progress = true;
    }
    while (best.shrunk.max_denominator > 2) {
      SuiteConfig cand = best.shrunk;
      --cand.max_denominator;
      if (!attempt(cand)) break;
      progress = true;
    }
    while (best.shrunk.max_atoms > 1) {
      SuiteConfig cand = best.shrunk;
      --cand.max_atoms;
      if (!attempt(cand)) break;
      progress = true;
    }
  }
  return best;
}

inline SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report{config, {}, {}};
  const std::vector<Property> properties = all_properties();
  for (std::size_t k = 0; k < properties.size() && config.trials > 0; ++k) {
    const Property& p = properties[k];
    PropertyRecord rec{p.name, 0, 0, {}};
    for (std::size_t i = 0; i < config.trials; ++i) {
      const std::uint64_t seed = mix_seed(mix_seed(config.seed, k), i);
      if (auto failure = run_trial(p, config, seed)) {
        ++rec.failed;
        if (rec.counterexamples.size() < 3) rec.counterexamples.push_back(shrink(p, config, seed, i, std::move(*failure)));
      } else {
        ++rec.passed;
      }
    }
    report.properties.push_back(std::move(rec));
  }
  report.duration = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

inline json to_json(const SuiteConfig& c) {
  return {{"seed", c.seed},
          {"min_vertices", c.min_vertices},
          {"max_vertices", c.max_vertices},
          {"min_valency", c.min_valency},
          {"max_valency", c.max_valency},
          {"max_atoms", c.max_atoms},
          {"max_denominator", c.max_denominator},
          {"trials", c.trials},
          {"inject_fault", c.inject_fault}};
}

/// Report JSON. Wall-clock time is left out unless asked for so that
/// repeated runs produce identical bytes.
inline json to_json(const SuiteReport& r, bool with_timing = false) {
  json props = json::array();
  for (const PropertyRecord& p : r.properties) {
    json ces = json::array();
    for (const Counterexample& ce : p.counterexamples)
      ces.push_back({{"trial", ce.trial}, {"trial_seed", ce.trial_seed}, {"shrunk_config", to_json(ce.shrunk)}, {"payload", ce.payload}});
    props.push_back({{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}, {"counterexamples", ces}});
  }
  json j{{"config", to_json(r.config)}, {"ok", r.ok()}, {"failures", r.failures()}, {"properties", props}};
  if (with_timing) j["duration_ms"] = r.duration.count();
  return j;
}

}  // namespace treewass::verify

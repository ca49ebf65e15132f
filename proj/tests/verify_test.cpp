#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "treewass/verify/generators.hpp"
#include "treewass/verify/lemmas.hpp"
#include "treewass/verify/oracles.hpp"
#include "treewass/verify/suite.hpp"

using namespace treewass;
using namespace treewass::testing;
using namespace treewass::verify;

TEST(Generators, TreesAreDeterministic) {
  SuiteConfig cfg;
  cfg.seed = 1;
  cfg.max_vertices = 5;
  const Tree a = gen_tree(cfg, TreeMode::complete);
  const Tree b = gen_tree(cfg, TreeMode::complete);
  EXPECT_EQ(io::to_json(a).dump(), io::to_json(b).dump());
  EXPECT_TRUE(a.is_geodesically_complete());
  for (std::size_t v = 0; v < a.vertex_count(); ++v) EXPECT_GE(a.valency(vertex_id(v)), 3u);
  cfg.seed = 2;
  EXPECT_NE(io::to_json(gen_tree(cfg, TreeMode::complete)).dump(), io::to_json(a).dump());
}

TEST(Generators, RespectsBounds) {
  SuiteConfig cfg;
  cfg.max_vertices = 9;
  cfg.min_valency = 3;
  cfg.max_valency = 4;
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Tree t = gen_tree(cfg, i % 2 ? TreeMode::finite : TreeMode::complete, rng);
    EXPECT_LE(t.vertex_count(), 9u);
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
      const std::size_t k = t.valency(vertex_id(v));
      EXPECT_NE(k, 2u);
      EXPECT_LE(k, 4u);
    }
    if (i % 2 == 0) EXPECT_TRUE(t.is_geodesically_complete());
  }
}

TEST(Generators, RejectsImpossibleBounds) {
  SuiteConfig cfg;
  cfg.max_valency = 2;
  cfg.min_valency = 2;
  EXPECT_THROW(gen_tree(cfg, TreeMode::complete), ValidationError);
  SuiteConfig bad;
  bad.min_vertices = 5;
  bad.max_vertices = 3;
  EXPECT_THROW(gen_tree(bad, TreeMode::complete), ValidationError);
  SuiteConfig one;
  one.max_vertices = 1;
  EXPECT_THROW(gen_tree(one, TreeMode::finite), ValidationError);
}

TEST(Oracles, ComparisonGapMatchesDirectCheck) {
  const Tree t = tripod();
  const TriangleCheck c = check_cat0_triangle(t, at(t, "x"), at(t, "y"), at(t, "z"), q(1, 2));
  EXPECT_EQ(comparison_gap(q(2), q(2), q(2), q(1, 2)), c.rhs - c.lhs);
}

TEST(Oracles, LineTransport) {
  EXPECT_EQ(line_w2_squared({{q(0), q(1)}}, {{q(3), q(1)}}), q(9));
  EXPECT_EQ(line_w2_squared({{q(0), q(1, 2)}, {q(2), q(1, 2)}}, {{q(1), q(1)}}), q(1));
}

TEST(Thales, OffGeodesicMassIsStrict) {
  const Tree t = star3();
  const Geodesic g = Geodesic::make(t, {v(t, "a"), v(t, "c"), v(t, "b")}, E(3), E(5));
  const ThalesCheck c = check_thales(t, g, at(t, "a"), at(t, "b"), Measure::dirac(t, at(t, "d")));
  EXPECT_EQ(c.lhs_squared, q(0));
  EXPECT_EQ(c.rhs_squared, q(1));
  EXPECT_EQ(c.relation, Relation::less);
  EXPECT_FALSE(c.supported_on_geodesic);
}

TEST(Thales, MassOnGeodesicIsEqual) {
  const Tree t = star3();
  const Geodesic g = Geodesic::make(t, {v(t, "a"), v(t, "c"), v(t, "b")}, E(3), E(5));
  const Measure mu = Measure::make(t, {{at(t, "c"), q(1, 2)}, {at(t, "b"), q(1, 2)}});
  const ThalesCheck c = check_thales(t, g, at(t, "a"), at(t, "b"), mu);
  EXPECT_EQ(c.lhs_squared, q(1, 8));
  EXPECT_EQ(c.rhs_squared, q(1, 8));
  EXPECT_EQ(c.relation, Relation::equal);
  EXPECT_TRUE(c.supported_on_geodesic);
  EXPECT_THROW(check_thales(t, g, at(t, "d"), at(t, "b"), mu), ValidationError);
}

TEST(Thales, ConfigurationSeparatesTheCases) {
  const Tree t = star3();
  const Geodesic g = Geodesic::make(t, {v(t, "a"), v(t, "c"), v(t, "b")}, E(3), E(5));
  const Measure off = Measure::make(t, {{at(t, "a"), q(1, 3)}, {t.point(E(7), q(2)), q(2, 3)}});
  const auto [x, gp] = thales_configuration(t, g, off);
  EXPECT_EQ(check_thales(t, g, x, gp, off).relation, Relation::less);
  const Measure on = Measure::make(t, {{at(t, "a"), q(1, 3)}, {t.point(E(5), q(2)), q(2, 3)}});
  const auto [x2, g2] = thales_configuration(t, g, on);
  EXPECT_EQ(check_thales(t, g, x2, g2, on).relation, Relation::equal);
}

TEST(Lemmas, DiracExtensionOnStar) {
  const Tree t = star3();
  const Measure mu = Measure::make(t, {{at(t, "a"), q(1, 2)}, {t.point(E(2), q(1, 2)), q(1, 2)}});
  const ExtensionCheck c = check_dirac_preserved_extension(t, at(t, "b"), mu, q(2));
  EXPECT_TRUE(c.passed) << c.detail;
  EXPECT_THROW(check_dirac_preserved_extension(t, at(t, "b"), mu, q(1)), ValidationError);
}

TEST(Suite, DefaultRunPasses) {
  SuiteConfig cfg;
  cfg.trials = 10;
  const SuiteReport r = run_suite(cfg);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.properties.size(), all_properties().size());
  for (const auto& p : r.properties) EXPECT_EQ(p.passed, 10u) << p.name;
}

TEST(Suite, ReportIsReproducible) {
  SuiteConfig cfg;
  cfg.trials = 5;
  cfg.seed = 99;
  EXPECT_EQ(to_json(run_suite(cfg)).dump(), to_json(run_suite(cfg)).dump());
}

TEST(Suite, InjectedFaultIsCaughtAndShrunk) {
  SuiteConfig cfg;
  cfg.trials = 5;
  cfg.inject_fault = true;
  const SuiteReport r = run_suite(cfg);
  EXPECT_FALSE(r.ok());
  bool seen = false;
  for (const auto& p : r.properties) {
    if (p.name != "radon.roundtrip") {
      EXPECT_EQ(p.failed, 0u) << p.name;
      continue;
    }
    seen = true;
    EXPECT_EQ(p.failed, 5u);
    ASSERT_FALSE(p.counterexamples.empty());
    EXPECT_LE(p.counterexamples[0].shrunk.max_vertices, cfg.max_vertices);
  }
  EXPECT_TRUE(seen);
}

TEST(Suite, ZeroTrialsGivesEmptyReport) {
  SuiteConfig cfg;
  cfg.trials = 0;
  const SuiteReport r = run_suite(cfg);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.properties.empty());
}

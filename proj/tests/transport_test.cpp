#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "treewass/verify/generators.hpp"
#include "treewass/verify/oracles.hpp"

using namespace treewass;
using namespace treewass::testing;

TEST(Measure, MergesAndSortsAtoms) {
  const Tree t = tripod();
  const Measure m = Measure::make(t, {{at(t, "y"), q(1, 4)}, {at(t, "x"), q(1, 2)}, {at(t, "y"), q(1, 4)}});
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.mass_at(at(t, "y")), q(1, 2));
  EXPECT_EQ(m.mass_at(at(t, "z")), q(0));
  EXPECT_FALSE(m.is_dirac());
  EXPECT_TRUE(m == Measure::make(t, {{at(t, "x"), q(1, 2)}, {at(t, "y"), q(1, 2)}}));
}

TEST(Measure, RejectsNonProbability) {
  const Tree t = tripod();
  EXPECT_THROW(Measure::make(t, {{at(t, "x"), q(1, 3)}, {at(t, "y"), q(1, 3)}}), ValidationError);
  EXPECT_THROW(Measure::make(t, {{at(t, "x"), q(3, 2)}, {at(t, "y"), q(-1, 2)}}), ValidationError);
  EXPECT_THROW(Measure::make(t, {{at(t, "x"), q(1)}, {at(t, "y"), q(0)}}), ValidationError);
  EXPECT_THROW(Measure::make(t, {}), ValidationError);
}

TEST(Measure, PushforwardOntoGeodesic) {
  const Tree t = tripod();
  const Geodesic g = Geodesic::make(t, {v(t, "x"), v(t, "o"), v(t, "y")}, std::nullopt, std::nullopt);
  const Measure mu = Measure::make(t, {{at(t, "x"), q(1, 2)}, {at(t, "z"), q(1, 2)}});
  const RadonSample s = pushforward_projection(t, g, mu);
  const std::vector<std::pair<Rational, Rational>> expected{{q(0), q(1, 2)}, {q(1), q(1, 2)}};
  EXPECT_EQ(s.atoms, expected);
  EXPECT_TRUE(sample_to_measure(t, s) == Measure::make(t, {{at(t, "x"), q(1, 2)}, {at(t, "o"), q(1, 2)}}));
}

TEST(Measure, SecondMoment) {
  const Tree t = tripod();
  EXPECT_EQ(second_moment(t, Measure::dirac(t, at(t, "o")), at(t, "o")), q(0));
  const Measure mu = Measure::make(t, {{at(t, "x"), q(1, 2)}, {at(t, "y"), q(1, 2)}});
  EXPECT_EQ(second_moment(t, mu, at(t, "o")), q(1));
  EXPECT_EQ(second_moment(t, mu, at(t, "x")), q(2));
}

TEST(Transportation, DegenerateSquareProblem) {
  // equal marginals make the northwest-corner start degenerate
  TransportationProblem p{{q(1, 3), q(1, 3), q(1, 3)}, {q(1, 3), q(1, 3), q(1, 3)}, {}};
  p.cost = {{q(4), q(1), q(0)}, {q(1), q(0), q(1)}, {q(0), q(1), q(4)}};
  const TransportationSolution s = solve_transportation(p);
  EXPECT_EQ(s.cost, q(0));
  EXPECT_EQ(s.basis.size(), 5u);
  EXPECT_EQ(s.cost, verify::brute_force_transport(p));
}

TEST(Transportation, RejectsUnbalanced) {
  TransportationProblem p{{q(1)}, {q(1, 2)}, {{q(0)}}};
  EXPECT_THROW(solve_transportation(p), std::logic_error);
}

TEST(Transportation, AgreesWithBasisEnumeration) {
  verify::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.below(4), n = 1 + rng.below(4);
    TransportationProblem p{verify::gen_weights(rng, m, 6), verify::gen_weights(rng, n, 6), {}};
    p.cost.assign(m, std::vector<Rational>(n));
    for (auto& row : p.cost)
      for (auto& c : row) c = make_rational(rng.between(0, 9), rng.between(1, 3));
    const TransportationSolution s = solve_transportation(p);
    ASSERT_EQ(s.cost, verify::brute_force_transport(p)) << "trial " << trial;
    Rational check(0);
    for (const BasicCell& cell : s.basis) {
      ASSERT_GE(cell.flow, 0);
      check += cell.flow * p.cost[cell.row][cell.col];
    }
    EXPECT_EQ(check, s.cost);
  }
}

TEST(Wasserstein, TripodExamples) {
  const Tree t = tripod();
  const Measure dx = Measure::dirac(t, at(t, "x"));
  const Measure yz = Measure::make(t, {{at(t, "y"), q(1, 2)}, {at(t, "z"), q(1, 2)}});
  EXPECT_EQ(w2_squared(t, dx, yz), q(4));
  const Measure xy = Measure::make(t, {{at(t, "x"), q(1, 2)}, {at(t, "y"), q(1, 2)}});
  EXPECT_EQ(w2_squared(t, xy, Measure::dirac(t, at(t, "o"))), q(1));
  EXPECT_EQ(w2_squared(t, yz, yz), q(0));
  // only x must move: x→z costs 4 with half the mass, y stays
  EXPECT_EQ(w2_squared(t, xy, yz), q(2));
  EXPECT_EQ(verify::brute_force_w2_squared(t, xy, yz), q(2));
}

TEST(Wasserstein, PlanHasRequestedMarginals) {
  const Tree t = star3();
  const Measure mu = Measure::make(t, {{at(t, "a"), q(1, 3)}, {t.point(E(5), q(2)), q(1, 6)}, {at(t, "c"), q(1, 2)}});
  const Measure nu = Measure::make(t, {{at(t, "d"), q(3, 4)}, {t.point(E(1), q(1, 5)), q(1, 4)}});
  const TransportPlan p = optimal_plan(t, mu, nu);
  EXPECT_TRUE(source_marginal(t, p) == mu);
  EXPECT_TRUE(target_marginal(t, p) == nu);
  EXPECT_EQ(p.cost, plan_cost(t, p.couplings));
  EXPECT_EQ(p.cost, verify::brute_force_w2_squared(t, mu, nu));
  EXPECT_TRUE(is_cyclically_monotone(t, p, 4).monotone);
}

TEST(Wasserstein, InterpolationAndDilation) {
  const Tree t = tripod();
  const TransportPlan p = optimal_plan(t, Measure::dirac(t, at(t, "x")), Measure::dirac(t, at(t, "y")));
  EXPECT_TRUE(interpolate(t, p, q(1, 2)) == Measure::dirac(t, at(t, "o")));
  EXPECT_TRUE(interpolate(t, p, q(1, 4)) == Measure::dirac(t, t.point(E(0), q(1, 2))));
  EXPECT_THROW(interpolate(t, p, q(5, 4)), ValidationError);

  const Tree s = star3();
  EXPECT_TRUE(dilate(s, at(s, "a"), Measure::dirac(s, at(s, "d")), q(1, 2)) == Measure::dirac(s, at(s, "c")));
  const TreePoint tip_a = s.point(E(3), q(1)), tip_d = s.point(E(7), q(1));
  EXPECT_TRUE(dilate(s, tip_a, Measure::dirac(s, tip_d), q(1, 2)) == Measure::dirac(s, at(s, "c")));
}

TEST(Monotonicity, CrossingPairIsNotMonotone) {
  const Tree t = tripod();
  const TransportPlan p = make_plan(t, {{at(t, "x"), at(t, "z"), q(1, 2)}, {at(t, "o"), at(t, "o"), q(1, 2)}});
  const MonotonicityResult r = is_cyclically_monotone(t, p);
  ASSERT_FALSE(r.monotone);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->cost, q(4));
  EXPECT_EQ(r.witness->rearranged_cost, q(2));
}

TEST(Monotonicity, ExhaustiveModeIsBounded) {
  const Tree t = star3();
  std::vector<Coupling> cs;
  for (int i = 1; i <= 9; ++i) cs.push_back({t.point(E(3), q(i)), t.point(E(3), q(i)), q(1, 9)});
  const TransportPlan p = make_plan(t, cs);
  EXPECT_TRUE(is_cyclically_monotone(t, p, 2).monotone);
  EXPECT_THROW(is_cyclically_monotone(t, p, 3), ValidationError);
}

TEST(Extension, DiracGeodesicKeepsGoing) {
  const Tree t = star3();
  const Measure mu = Measure::make(t, {{at(t, "a"), q(1, 2)}, {at(t, "b"), q(1, 2)}});
  const Measure two = extend_from_dirac(t, at(t, "c"), mu, q(2));
  EXPECT_TRUE(two == Measure::make(t, {{t.point(E(3), q(1)), q(1, 2)}, {t.point(E(5), q(1)), q(1, 2)}}));
  const Measure d = Measure::dirac(t, at(t, "c"));
  EXPECT_EQ(w2_squared(t, d, two), 4 * w2_squared(t, d, mu));
  EXPECT_TRUE(extend_from_dirac(t, at(t, "c"), mu, q(1)) == mu);
  EXPECT_TRUE(extend_from_dirac(t, at(t, "c"), mu, q(1, 2)) == dilate(t, at(t, "c"), mu, q(1, 2)));
  EXPECT_THROW(extend_from_dirac(tripod(), at(tripod(), "o"), Measure::dirac(tripod(), at(tripod(), "x")), q(2)),
               ValidationError);
}

TEST(NonExtendable, TwoCycleBeatsTheOvershoot) {
  const Tree t = tripod();
  const Measure mu0 = Measure::make(t, {{at(t, "x"), q(1, 2)}, {at(t, "o"), q(1, 2)}});
  const ExtensionRule toward_z = [](const Tree&, VertexId, std::optional<EdgeId>) { return E(2); };
  const NonExtensionWitness w = check_nonextendable(t, mu0, at(t, "o"), q(1), toward_z);
  EXPECT_EQ(w.y_prime, at(t, "x"));
  EXPECT_EQ(w.y_double_prime, at(t, "z"));
  EXPECT_EQ(w.plan_cost, q(4));
  EXPECT_EQ(w.swapped_cost, q(2));
  EXPECT_TRUE(w.violated);
  EXPECT_FALSE(w.monotonicity.monotone);

  const NonExtensionWitness zero = check_nonextendable(t, mu0, at(t, "o"), q(0), toward_z);
  EXPECT_FALSE(zero.violated);
  EXPECT_EQ(zero.plan_cost, zero.swapped_cost);
}

TEST(NonExtendable, RejectsBadInput) {
  const Tree t = star3();
  const Measure mu0 = Measure::make(t, {{at(t, "a"), q(1, 2)}, {at(t, "b"), q(1, 2)}});
  EXPECT_THROW(check_nonextendable(t, Measure::dirac(t, at(t, "a")), at(t, "a")), ValidationError);
  EXPECT_THROW(check_nonextendable(t, mu0, at(t, "c")), ValidationError);
  EXPECT_THROW(check_nonextendable(t, mu0, at(t, "a"), q(-1)), ValidationError);
  const NonExtensionWitness w = check_nonextendable(t, mu0, at(t, "a"), q(1, 3));
  EXPECT_TRUE(w.violated);
  // (1+ε)² d² against (1+ε²) d² with d = 2
  EXPECT_EQ(w.plan_cost, square(q(4, 3) * 2));
  EXPECT_EQ(w.swapped_cost, 4 + square(q(1, 3) * 2));
}

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace treewass;
using namespace treewass::testing;

namespace {

void expect_rejected(const TreeDescription& d, const std::string& fragment) {
  try {
    Tree::build(d);
    FAIL() << "accepted an invalid tree, expected: " << fragment;
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(TreeBuild, TripodIsFiniteNotComplete) {
  const Tree t = tripod();
  EXPECT_EQ(t.vertex_count(), 4u);
  EXPECT_FALSE(t.is_geodesically_complete());
  const ValencyProfile p = t.valency_profile();
  EXPECT_EQ(p.leaves.size(), 3u);
  EXPECT_FALSE(p.geodesically_complete);
}

TEST(TreeBuild, Star3IsComplete) {
  const Tree t = star3();
  EXPECT_TRUE(t.is_geodesically_complete());
  for (std::size_t i = 0; i < t.vertex_count(); ++i) EXPECT_EQ(t.valency(vertex_id(i)), 3u);
}

TEST(TreeBuild, RejectsMalformedDescriptions) {
  expect_rejected({{"a", "m", "b"}, {{"a", "m", q(1)}, {"m", "b", q(1)}}}, "valency-2");
  expect_rejected({{"a", "b", "c"}, {{"a", "b", q(1)}, {"b", "c", q(1)}, {"c", "a", q(1)}, {"a", std::nullopt, std::nullopt}}},
                  "cycle");
  expect_rejected({{"a", "b"}, {{"a", "b", q(0)}}}, "nonpositive");
  expect_rejected({{"a", "b"}, {{"a", "b", q(-1)}}}, "nonpositive");
  expect_rejected({{"a", "b"}, {{"a", "b", std::nullopt}}}, "infinite length");
  expect_rejected({{"a", "b"}, {{"a", std::nullopt, q(2)}, {"b", std::nullopt, std::nullopt}}}, "finite-length ray");
  expect_rejected({{"a", "a"}, {{"a", std::nullopt, std::nullopt}}}, "duplicate");
  expect_rejected({{"a"}, {{"a", "zz", q(1)}}}, "unknown vertex");
  expect_rejected({{"a", "b", "c", "d"}, {{"a", "b", q(1)}, {"c", "d", q(1)}}}, "disconnected");
  expect_rejected({{"a"}, {}}, "isolated");
  expect_rejected({{}, {}}, "no vertices");
}

TEST(TreeBuild, SingleVertexWithRaysIsComplete) {
  const Tree t = Tree::build({{"v"}, {{"v", std::nullopt, std::nullopt}, {"v", std::nullopt, std::nullopt}, {"v", std::nullopt, std::nullopt}}});
  EXPECT_TRUE(t.is_geodesically_complete());
  EXPECT_EQ(enumerate_flags(t).size(), 3u);
}

TEST(TreePoint, CanonicalForm) {
  const Tree t = tripod();
  EXPECT_EQ(t.point(E(0), q(0)), at(t, "o"));
  EXPECT_EQ(t.point(E(0), q(1)), at(t, "x"));
  EXPECT_FALSE(t.point(E(0), q(1, 2)).is_vertex());
  EXPECT_THROW(t.point(E(0), q(2)), ValidationError);
  EXPECT_THROW(t.point(E(0), q(-1, 3)), ValidationError);
  EXPECT_THROW(t.point(E(7), q(1, 3)), ValidationError);
}

TEST(Distance, TripodExamples) {
  const Tree t = tripod();
  EXPECT_EQ(t.distance(at(t, "x"), at(t, "y")), q(2));
  // points at distance 3/10 and 1/2 from o on the x and y legs
  const TreePoint p = t.point(E(0), q(3, 10)), r = t.point(E(1), q(1, 2));
  EXPECT_EQ(t.distance(p, r), q(4, 5));
  EXPECT_EQ(t.distance(p, p), q(0));
  EXPECT_EQ(t.distance(t.point(E(0), q(1, 4)), t.point(E(0), q(3, 4))), q(1, 2));
}

TEST(Distance, AlongRays) {
  const Tree t = star3();
  const TreePoint far_a = t.point(E(3), q(5, 2));
  const TreePoint far_d = t.point(E(7), q(1, 2));
  EXPECT_EQ(t.distance(far_a, far_d), q(5, 2) + 2 + q(1, 2));
  EXPECT_EQ(t.distance(far_a, t.point(E(4), q(1))), q(7, 2));
}

TEST(Geodesic, MidpointExamples) {
  const Tree t = tripod();
  EXPECT_EQ(midpoint(t, at(t, "x"), at(t, "y")), at(t, "o"));
  EXPECT_EQ(midpoint(t, at(t, "x"), at(t, "o")), t.point(E(0), q(1, 2)));
  EXPECT_EQ(midpoint(t, at(t, "x"), at(t, "x")), at(t, "x"));
  const TreePoint m = midpoint(t, t.point(E(0), q(1, 3)), at(t, "z"));
  EXPECT_EQ(m, t.point(E(2), q(1, 3)));
}

TEST(Geodesic, PathLegsSumToDistance) {
  const Tree t = star3();
  const TreePoint p = t.point(E(3), q(2)), r = t.point(E(6), q(1, 7));
  const Segment s = path(t, p, r);
  Rational total(0);
  for (const Leg& l : s.legs) total += l.length();
  EXPECT_EQ(total, t.distance(p, r));
  EXPECT_EQ(s.point_at(t, q(0)), p);
  EXPECT_EQ(s.point_at(t, s.length), r);
  EXPECT_EQ(s.point_at(t, q(2)), at(t, "a"));
  EXPECT_EQ(s.point_at(t, q(3)), at(t, "c"));
}

TEST(Geodesic, ProjectionExamples) {
  const Tree t = tripod();
  const Geodesic g = Geodesic::make(t, {v(t, "x"), v(t, "o"), v(t, "y")}, std::nullopt, std::nullopt);
  EXPECT_EQ(g.project(t, at(t, "z")), at(t, "o"));
  EXPECT_EQ(g.project(t, t.point(E(2), q(1, 2))), at(t, "o"));
  const TreePoint on = t.point(E(0), q(1, 3));
  EXPECT_EQ(g.project(t, on), on);
  EXPECT_EQ(g.coordinate(t, at(t, "x")), q(0));
  EXPECT_EQ(g.coordinate(t, at(t, "y")), q(2));
  EXPECT_EQ(g.coordinate(t, on), q(2, 3));
}

TEST(Geodesic, RejectsIncompleteEnds) {
  const Tree t = star3();
  EXPECT_THROW(Geodesic::make(t, {v(t, "a"), v(t, "c"), v(t, "b")}, std::nullopt, E(5)), ValidationError);
  EXPECT_THROW(Geodesic::make(t, {v(t, "a"), v(t, "c"), v(t, "b")}, E(5), E(5)), ValidationError);
  EXPECT_THROW(Geodesic::make(t, {v(t, "a"), v(t, "b")}, E(3), E(5)), ValidationError);
  const Geodesic g = Geodesic::make(t, {v(t, "a"), v(t, "c"), v(t, "b")}, E(3), E(5));
  EXPECT_TRUE(g.is_complete());
  EXPECT_EQ(g.point_at(t, q(-2)), t.point(E(3), q(2)));
  EXPECT_EQ(g.point_at(t, q(3)), t.point(E(5), q(1)));
}

TEST(Geodesic, ThroughFlagConvention) {
  const Tree t = star3();
  // Flag at c on edges (c,a) and (c,b): origin c, positive direction through (c,a).
  const Geodesic g = geodesic_through_flag(t, make_flag(t, v(t, "c"), E(1), E(0)));
  EXPECT_EQ(g.origin(), v(t, "c"));
  EXPECT_EQ(g.coordinate(t, at(t, "c")), q(0));
  EXPECT_EQ(g.coordinate(t, at(t, "a")), q(1));
  EXPECT_EQ(g.coordinate(t, at(t, "b")), q(-1));
  EXPECT_EQ(g.end_ray(), E(3));
  EXPECT_EQ(g.start_ray(), E(5));
  EXPECT_THROW(geodesic_through_flag(tripod(), make_flag(tripod(), vertex_id(0), E(0), E(1))), ValidationError);
}

TEST(Flags, EnumerationAndValidation) {
  const Tree t = star3();
  EXPECT_EQ(enumerate_flags(t).size(), 12u);
  EXPECT_THROW(make_flag(t, v(t, "c"), E(0), E(0)), ValidationError);
  EXPECT_THROW(make_flag(t, v(t, "c"), E(0), E(3)), ValidationError);
  const Flag f = make_flag(t, v(t, "c"), E(2), E(0));
  EXPECT_EQ(f.e, E(0));
  EXPECT_EQ(f.f, E(2));
}

TEST(Perpendicular, Star3Examples) {
  const Tree t = star3();
  const Subtree all = perpendicular(t, make_flag(t, v(t, "a"), E(3), E(4)));
  EXPECT_EQ(all.vertices.size(), 4u);

  const Subtree leg = perpendicular(t, make_flag(t, v(t, "a"), E(0), E(3)));
  EXPECT_EQ(leg.vertices, std::vector<VertexId>{v(t, "a")});
  EXPECT_EQ(leg.edges, std::vector<EdgeId>{E(4)});

  const Subtree at_c = perpendicular(t, make_flag(t, v(t, "c"), E(0), E(1)));
  EXPECT_EQ(at_c.vertices, (std::vector<VertexId>{v(t, "c"), v(t, "d")}));
  EXPECT_EQ(at_c.edges, (std::vector<EdgeId>{E(2), E(7), E(8)}));
  EXPECT_TRUE(at_c.contains(t.point(E(8), q(9))));
  EXPECT_FALSE(at_c.contains(t.point(E(0), q(1, 2))));
}

TEST(Perpendicular, ProjectsToFlagVertex) {
  const Tree t = star3();
  for (const Flag& fl : enumerate_flags(t)) {
    const Geodesic g = geodesic_through_flag(t, fl);
    const Subtree perp = perpendicular(t, fl);
    for (std::size_t i = 0; i < t.vertex_count(); ++i) {
      const TreePoint p = t.vertex_point(vertex_id(i));
      EXPECT_EQ(g.project(t, p) == t.vertex_point(fl.vertex), perp.contains(p));
    }
  }
}

TEST(Cat0, TripodStrictAtMidpoint) {
  const Tree t = tripod();
  const TriangleCheck c = check_cat0_triangle(t, at(t, "x"), at(t, "y"), at(t, "z"), q(1, 2));
  EXPECT_EQ(c.lhs, q(1));
  EXPECT_EQ(c.rhs, q(3));
  EXPECT_TRUE(c.strict);
  EXPECT_FALSE(c.aligned);
}

TEST(Cat0, AlignedGivesEquality) {
  const Tree t = tripod();
  const TriangleCheck c = check_cat0_triangle(t, at(t, "x"), t.point(E(0), q(1, 3)), at(t, "y"), q(1, 4));
  EXPECT_TRUE(c.aligned);
  EXPECT_EQ(c.lhs, c.rhs);
  EXPECT_THROW(check_cat0_triangle(t, at(t, "x"), at(t, "y"), at(t, "z"), q(3, 2)), ValidationError);
}

TEST(Extension, AdvancePastEndpointUsesRule) {
  const Tree t = star3();
  const Segment s = path(t, at(t, "c"), at(t, "a"));
  EXPECT_EQ(advance(t, s, q(2)), t.point(E(3), q(1)));
  const ExtensionRule largest = [](const Tree& tr, VertexId x, std::optional<EdgeId> in) {
    EdgeId best = in.value_or(E(0));
    for (EdgeId e : tr.incident(x))
      if (e != in) best = e;
    return best;
  };
  EXPECT_EQ(advance(t, s, q(2), largest), t.point(E(4), q(1)));
  const Tree tp = tripod();
  EXPECT_THROW(advance(tp, path(tp, at(tp, "o"), at(tp, "o")), q(1)), ValidationError);
  EXPECT_THROW(advance(tp, path(tp, at(tp, "o"), at(tp, "x")), q(2)), ValidationError);
}

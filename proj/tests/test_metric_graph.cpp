#include <gtest/gtest.h>

#include <random>

#include "gcyc/error.hpp"
#include "gcyc/metric_graph.hpp"
#include "support/oracles.hpp"

using namespace gcyc;

namespace {

Point pt(std::string id, std::vector<double> c, Side s) { return {std::move(id), std::move(c), s}; }

// Two points on each of the lines x = 0 and x = 1.
FiniteMetricGraph ladder(std::vector<Edge> edges = {}) {
  return FiniteMetricGraph::from_coordinates(
      {pt("a0", {0, 0}, Side::A), pt("a1", {0, 1}, Side::A), pt("b0", {1, 0}, Side::B), pt("b1", {1, 1}, Side::B)},
      Metric::L1, std::move(edges), true);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(MetricGraph, CoordinateMetrics) {
  const std::vector<Point> pts{pt("p", {0, 0}, Side::A), pt("q", {3, 4}, Side::B)};
  EXPECT_DOUBLE_EQ(FiniteMetricGraph::from_coordinates(pts, Metric::L1, {}, true).dist(0, 1), 7.0);
  EXPECT_DOUBLE_EQ(FiniteMetricGraph::from_coordinates(pts, Metric::L2, {}, true).dist(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(FiniteMetricGraph::from_coordinates(pts, Metric::Sup, {}, true).dist(0, 1), 4.0);
}

TEST(MetricGraph, AutoLoopsAndLookup) {
  const auto g = ladder({{0, 2}});
  for (Vertex v = 0; v < g.size(); ++v) EXPECT_TRUE(g.has_edge(v, v));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_FALSE(g.has_edge(2, 0));
  EXPECT_EQ(g.index_of("b1"), 3u);
  EXPECT_FALSE(g.find("zz").has_value());
  EXPECT_EQ(code_of([&] { (void)g.index_of("zz"); }), ErrorCode::UnknownPoint);
}

TEST(MetricGraph, MissingLoopRejected) {
  try {
    FiniteMetricGraph::from_coordinates({pt("a", {0}, Side::A), pt("b", {1}, Side::B)}, Metric::L1, {{0, 0}}, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
}

TEST(MetricGraph, TableValidation) {
  const std::vector<Point> pts{pt("x", {}, Side::A), pt("y", {}, Side::B), pt("z", {}, Side::B)};
  // triangle inequality broken: d(x,z) > d(x,y) + d(y,z)
  EXPECT_EQ(code_of([&] {
              FiniteMetricGraph::from_table(pts, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, {}, true);
            }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { FiniteMetricGraph::from_table(pts, {{0, 1, 2}, {1, 0, 1}, {2.5, 1, 0}}, {}, true); }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { FiniteMetricGraph::from_table(pts, {{0, -1, 1}, {-1, 0, 1}, {1, 1, 0}}, {}, true); }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { FiniteMetricGraph::from_table(pts, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {{0, 1}, {0, 1}}, true); }),
            ErrorCode::InvalidInput);
  EXPECT_NO_THROW(FiniteMetricGraph::from_table(pts, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {}, true));
}

TEST(MetricGraph, DuplicateIdsRejected) {
  EXPECT_EQ(code_of([] {
              FiniteMetricGraph::from_coordinates({pt("a", {0}, Side::A), pt("a", {1}, Side::B)}, Metric::L1, {}, true);
            }),
            ErrorCode::InvalidInput);
}

TEST(PairGeometry, DistanceAndProximalSets) {
  const auto g = ladder({{0, 2}, {1, 3}});
  const PairGeometry geom = pair_distance(g);
  EXPECT_DOUBLE_EQ(geom.d_ab, 1.0);
  EXPECT_EQ(geom.a0, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(geom.b0, (std::vector<Vertex>{2, 3}));
  EXPECT_EQ(geom.parallel_pairs.size(), 2u);
  EXPECT_TRUE(is_sharp_proximal(g, geom));
  EXPECT_TRUE(has_property_uc(g, geom));
  EXPECT_TRUE(is_g_chebyshev(g, geom));
}

TEST(PairGeometry, ChebyshevNeedsParallelEdges) {
  const auto g = ladder({{0, 2}});
  const auto check = is_g_chebyshev(g, pair_distance(g));
  ASSERT_FALSE(check);
  EXPECT_EQ(check.witness->points, (std::vector<Vertex>{1, 3}));
}

TEST(PairGeometry, UcWitness) {
  // two A points at distance d(A,B) from the same B point
  const auto g = FiniteMetricGraph::from_coordinates(
      {pt("a0", {0, -1}, Side::A), pt("a1", {0, 1}, Side::A), pt("b", {1, 0}, Side::B)}, Metric::L1, {}, true);
  const auto geom = pair_distance(g);
  EXPECT_DOUBLE_EQ(geom.d_ab, 2.0);
  const Check uc = has_property_uc(g, geom);
  ASSERT_FALSE(uc);
  EXPECT_EQ(uc.witness->points, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_FALSE(is_sharp_proximal(g, geom));
}

TEST(PairGeometry, EmptySide) {
  const auto g = FiniteMetricGraph::from_coordinates({pt("a", {0}, Side::A)}, Metric::L1, {}, true);
  EXPECT_EQ(code_of([&] { (void)pair_distance(g); }), ErrorCode::EmptySide);
}

TEST(Components, LabelsAndClasses) {
  const auto g = ladder({{0, 2}, {3, 1}});
  EXPECT_EQ(component_of(g, 0), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(component_of(g, 1), (std::vector<Vertex>{1, 3}));
  EXPECT_EQ(component_labels(g), (std::vector<std::size_t>{0, 1, 0, 1}));
  EXPECT_EQ(classes_meeting_a(g), 2u);
  EXPECT_FALSE(scope_in_single_class(g, Scope::A));
}

TEST(Components, ClassReadingDiffersFromInducedReading) {
  // A points joined only through B
  const auto g = ladder({{0, 2}, {1, 2}});
  EXPECT_TRUE(scope_in_single_class(g, Scope::A));
  EXPECT_FALSE(induced_weakly_connected(g, Scope::A));
}

TEST(PropertyStar, TransitivityWithinScope) {
  auto g = FiniteMetricGraph::from_coordinates(
      {pt("x", {0, 0}, Side::A), pt("y", {0, 1}, Side::A), pt("z", {0, 2}, Side::A), pt("b", {1, 0}, Side::B)},
      Metric::L1, {{0, 1}, {1, 2}}, true);
  const Check star = check_property_star(g, Scope::A);
  ASSERT_FALSE(star);
  EXPECT_EQ(star.witness->points, (std::vector<Vertex>{0, 1, 2}));
  g = FiniteMetricGraph::from_coordinates(
      {pt("x", {0, 0}, Side::A), pt("y", {0, 1}, Side::A), pt("z", {0, 2}, Side::A), pt("b", {1, 0}, Side::B)},
      Metric::L1, {{0, 1}, {1, 2}, {0, 2}}, true);
  EXPECT_TRUE(check_property_star(g, Scope::A));
  // a chain through B is outside scope A
  g = FiniteMetricGraph::from_coordinates(
      {pt("x", {0, 0}, Side::A), pt("y", {1, 1}, Side::B), pt("z", {0, 2}, Side::A)}, Metric::L1, {{0, 1}, {1, 2}},
      true);
  EXPECT_TRUE(check_property_star(g, Scope::A));
  EXPECT_FALSE(check_property_star(g, Scope::Union));
}

TEST(MetricGraph, RandomCoordinatesAgreeWithOracle) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int round = 0; round < 50; ++round) {
    std::vector<Point> pts;
    std::vector<std::vector<double>> coords;
    for (int i = 0; i < 6; ++i) {
      coords.push_back({u(rng), u(rng), u(rng)});
      pts.push_back(pt("p" + std::to_string(i), coords.back(), i % 2 ? Side::B : Side::A));
    }
    const auto g = FiniteMetricGraph::from_coordinates(pts, Metric::L2, {}, true);
    const auto ref = oracle::distance_matrix(coords, oracle::Norm::L2);
    for (Vertex i = 0; i < 6; ++i)
      for (Vertex j = 0; j < 6; ++j) {
        EXPECT_NEAR(g.dist(i, j), ref[i][j], 1e-12);
        EXPECT_DOUBLE_EQ(g.dist(i, j), g.dist(j, i));
      }
    std::vector<char> in_a(6), in_b(6);
    for (int i = 0; i < 6; ++i) in_a[i] = i % 2 == 0, in_b[i] = i % 2 == 1;
    EXPECT_NEAR(pair_distance(g).d_ab, oracle::min_cross_distance(ref, in_a, in_b), 1e-12);
  }
}

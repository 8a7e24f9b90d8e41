#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gcyc/cyclic_contraction.hpp"
#include "gcyc/error.hpp"
#include "gcyc/examples_corpus.hpp"

using namespace gcyc;

namespace {

// smallest k >= 1 with 1/k <= z
std::int64_t kappa_scan(double z) {
  for (std::int64_t k = 1;; ++k)
    if (1.0 / static_cast<double>(k) <= z) return k;
}

FiniteMetricGraph line_pair(std::vector<Edge> edges) {
  std::vector<Point> pts{{"a0", {0, 0}, Side::A}, {"a1", {0, 1}, Side::A}, {"b0", {1, 0}, Side::B},
                         {"b1", {1, 1}, Side::B}};
  return FiniteMetricGraph::from_coordinates(std::move(pts), Metric::L1, std::move(edges), true);
}

}  // namespace

TEST(Kappa, StatedValues) {
  EXPECT_EQ(kappa(0.49), 3);
  EXPECT_EQ(kappa(0.51), 2);
  EXPECT_EQ(kappa(0.5), 2);
  EXPECT_EQ(kappa(1.0 / 3.0), 3);
  EXPECT_EQ(kappa(0.99), 2);
  EXPECT_EQ(kappa_total(0.0), 0);
  EXPECT_EQ(kappa_total(1.0), 1);
}

TEST(Kappa, DomainErrors) {
  for (double z : {0.0, 1.0, -0.2, 1.5, std::nan("")}) EXPECT_THROW((void)kappa(z), Error) << z;
}

TEST(Kappa, SnapsNearReciprocals) {
  for (int n = 2; n < 200; ++n) {
    const double z = 1.0 / n;
    EXPECT_EQ(kappa(z), n);
    EXPECT_EQ(kappa(std::nextafter(z, 1.0)), n);
    EXPECT_EQ(kappa(std::nextafter(z, 0.0)), n);
  }
}

TEST(Kappa, MatchesScanOracle) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(1e-3, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double z = u(rng);
    const double near = std::round(1.0 / z);
    if (std::abs(z - 1.0 / near) < 1e-10) continue;
    ASSERT_EQ(kappa(z), kappa_scan(z)) << z;
  }
}

TEST(FloorFraction, Values) {
  EXPECT_DOUBLE_EQ(floor_fraction(1.0), 1.0);
  EXPECT_DOUBLE_EQ(floor_fraction(2.0), 2.0);
  EXPECT_NEAR(floor_fraction(1.02), 1.0 + 0.02 / 50.0, 1e-15);
  EXPECT_NEAR(floor_fraction(0.49), 0.49 / 3.0, 1e-15);
  EXPECT_NEAR(floor_fraction(0.5), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(floor_fraction(0.0), 0.0);
}

TEST(FloorFraction, StrictlyIncreasingOnSamples) {
  std::vector<double> grid;
  for (int k = 0; k <= 4000; ++k) grid.push_back(k / 1000.0);
  EXPECT_TRUE(verify_gauge_classes(Gauge::floor_fraction(), Gauge::identity(), grid));
}

TEST(Gauge, KindsEvaluate) {
  EXPECT_DOUBLE_EQ(Gauge::linear(0.25)(4.0), 1.0);
  EXPECT_DOUBLE_EQ(Gauge::affine_shift(3.0)(4.0), 7.0);
  EXPECT_DOUBLE_EQ(Gauge::identity()(4.0), 4.0);
  EXPECT_DOUBLE_EQ(Gauge::constant(0.5)(9.0), 0.5);
  const Gauge t = Gauge::table({0, 1, 3}, {0, 2, 3});
  EXPECT_DOUBLE_EQ(t(0.5), 1.0);
  EXPECT_DOUBLE_EQ(t(2.0), 2.5);
  EXPECT_DOUBLE_EQ(t(5.0), 4.0);
  EXPECT_THROW(Gauge::linear(0.0), Error);
  EXPECT_THROW(Gauge::table({0, 0}, {1, 2}), Error);
}

TEST(Gauge, InducedPsi) {
  // phi(t) = t/2 with d = 1: t (1 - psi) = (t - 1)/2, psi = 1/2 + 1/(2t)
  const Gauge psi = Gauge::induced(Gauge::linear(0.5), 1.0);
  EXPECT_NEAR(psi(2.0), 0.75, 1e-12);
  EXPECT_NEAR(psi(4.0), 0.625, 1e-12);
}

TEST(Gauge, ClassViolationsFound) {
  const std::vector<double> grid{0, 1, 2, 3};
  const auto bad1 = verify_gauge_classes(Gauge::constant(1.0), Gauge::identity(), grid);
  ASSERT_FALSE(bad1);
  EXPECT_EQ(bad1.witness->note, "phi1 is not strictly increasing");
  const auto bad2 = verify_gauge_classes(Gauge::identity(), Gauge::linear(0.5), grid);
  ASSERT_FALSE(bad2);
  EXPECT_FALSE(verify_psi_gauge(Gauge::constant(1.0), grid));
  EXPECT_TRUE(verify_psi_gauge(Gauge::constant(0.0), grid));
}

TEST(CyclicMap, SideChecks) {
  const auto g = line_pair({});
  EXPECT_NO_THROW(CyclicMap(g, {2, 3, 0, 1}));
  EXPECT_THROW(CyclicMap(g, {1, 3, 0, 1}), Error);
  EXPECT_THROW(CyclicMap(g, {2, 3, 0}), Error);
  EXPECT_THROW(CyclicMap::from_ids(g, {{"a0", "b0"}}), Error);
}

TEST(Contraction, MValueAndBound) {
  const auto g = line_pair({{0, 2}, {1, 3}});
  const CyclicMap t(g, {3, 2, 1, 0});
  EXPECT_DOUBLE_EQ(m_value(g, t, 0, 2), 2.0);
  EXPECT_THROW((void)m_value(g, t, 2, 0), Error);
  // (d - d/2) + (m - m - 1) + (1/2 + 2 - 1)
  EXPECT_DOUBLE_EQ(contraction_bound(Gauge::linear(0.5), Gauge::affine_shift(1.0), 2.0, 3.0, 1.0), 1.5);
}

TEST(Contraction, SwapMapHoldsIdentityMapHolds) {
  const auto g = line_pair({{0, 2}, {1, 3}});
  const auto straight = verify_g_cyclic_contraction(g, CyclicMap(g, {2, 3, 0, 1}), Gauge::linear(0.5),
                                                    Gauge::affine_shift(0.0));
  EXPECT_TRUE(straight.holds);
  EXPECT_EQ(straight.checked_pairs, 2u);
  EXPECT_DOUBLE_EQ(straight.d_ab, 1.0);
}

TEST(Contraction, CrossingMapViolates) {
  // T swaps heights: d(Ta0, Tb0) = d(b1, a1) = 1 but the pair (a0, b1) is edge-eligible
  const auto g = line_pair({{0, 2}, {1, 3}, {0, 3}});
  const CyclicMap t(g, {3, 2, 1, 0});
  ContractionOptions opt;
  const auto r = verify_g_cyclic_contraction(g, t, Gauge::linear(0.5), Gauge::affine_shift(0.0), opt);
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_FALSE(r.t_maps_a0_into_b0 && r.violations.empty());
}

TEST(Contraction, TSquaredEdgeFailureIsReported) {
  // A-edge a0 -> a1 but T^2 sends it to a1 -> a0, which is no edge
  const auto g = line_pair({{0, 1}, {0, 2}, {1, 3}});
  const CyclicMap t(g, {3, 2, 0, 1});
  const Check c = verify_t2_preserves_edges(g, t);
  ASSERT_FALSE(c);
  const auto r = verify_g_cyclic_contraction(g, t, Gauge::linear(0.5), Gauge::affine_shift(0.0));
  EXPECT_FALSE(r.t2_preserves_edges);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.t2_witness.has_value());
}

TEST(Contraction, GaugeCheckThrows) {
  const auto g = line_pair({{0, 2}, {1, 3}});
  try {
    (void)verify_g_cyclic_contraction(g, CyclicMap(g, {2, 3, 0, 1}), Gauge::constant(1.0), Gauge::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GaugeClassViolation);
    EXPECT_TRUE(e.detail().contains("s0"));
  }
}

TEST(Contraction, StrictModeCountsMarginal) {
  // lhs exceeds the bound by 1e-12
  std::vector<Point> pts{{"a", {}, Side::A}, {"b", {}, Side::B}, {"c", {}, Side::B}};
  const double eps = 1e-12;
  const auto g = FiniteMetricGraph::from_table(pts, {{0, 1, 1 + eps}, {1, 0, eps}, {1 + eps, eps, 0}},
                                               {{0, 1}, {0, 2}}, true);
  // T a = c, T b = a, T c = a: d(Ta, Tb) = d(c, a) = 1 + eps, pair (a, b): d = 1, m = 1 + eps
  const CyclicMap t(g, {2, 0, 0});
  ContractionOptions loose;
  loose.check_gauges = false;
  const auto r1 = verify_g_cyclic_contraction(g, t, Gauge::identity(), Gauge::identity(), loose);
  EXPECT_TRUE(r1.holds);
  EXPECT_FALSE(r1.marginal.empty());
  ContractionOptions strict = loose;
  strict.strict = true;
  EXPECT_FALSE(verify_g_cyclic_contraction(g, t, Gauge::identity(), Gauge::identity(), strict).holds);
}

TEST(Contraction, Ex22EdgeEligibleVsAllPairs) {
  const GraphBundle b = build_ex22(16);
  const auto edge = verify_g_cyclic_contraction(b.space, *b.map, b.phi1, b.phi2);
  EXPECT_TRUE(edge.holds);
  ContractionOptions all;
  all.scope = PairScope::AllPairs;
  const auto every = verify_g_cyclic_contraction(b.space, *b.map, b.phi1, b.phi2, all);
  EXPECT_FALSE(every.holds);
  EXPECT_GT(every.checked_pairs, edge.checked_pairs);
}

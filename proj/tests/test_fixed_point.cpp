#include <gtest/gtest.h>

#include <cmath>

#include "gcyc/error.hpp"
#include "gcyc/examples_corpus.hpp"
#include "gcyc/fixed_point.hpp"

using namespace gcyc;

namespace {

// a2 -> b1 -> a1 -> p on a line; p lies in both A and B
struct Chain {
  FiniteMetricGraph space;
  PairMaps pair;
};

// `skip` drops one directed edge from the complete graph
Chain chain(bool with_edges = true, Edge skip = {0, 0}) {
  std::vector<Point> pts{{"a2", {7}, Side::A}, {"b1", {3}, Side::B}, {"a1", {1}, Side::A}, {"p", {0}, Side::Both}};
  std::vector<Edge> edges;
  if (with_edges)
    for (Vertex u = 0; u < 4; ++u)
      for (Vertex v = 0; v < 4; ++v)
        if (u != v && !(Edge{u, v} == skip)) edges.push_back({u, v});
  auto s = FiniteMetricGraph::from_coordinates(std::move(pts), Metric::L1, std::move(edges), true);
  PairMaps pair(s, {1, kNoImage, 3, 3}, {kNoImage, 2, kNoImage, 3});
  return {std::move(s), std::move(pair)};
}

}  // namespace

TEST(PairMaps, DomainChecks) {
  const auto c = chain();
  EXPECT_THROW(PairMaps(c.space, {1, 0, 3, 3}, {kNoImage, 2, kNoImage, 3}), Error);
  EXPECT_THROW(PairMaps(c.space, {2, kNoImage, 3, 3}, {kNoImage, 2, kNoImage, 3}), Error);
  EXPECT_THROW(PairMaps(c.space, {kNoImage, kNoImage, 3, 3}, {kNoImage, 2, kNoImage, 3}), Error);
}

TEST(AprioriBound, ClosedForm) {
  EXPECT_DOUBLE_EQ(apriori_bound(2.0, 0.5, 0), 4.0);
  EXPECT_DOUBLE_EQ(apriori_bound(2.0, 0.5, 3), 0.5);
  EXPECT_THROW((void)apriori_bound(1.0, 1.0, 1), Error);
  EXPECT_THROW((void)apriori_bound(1.0, -0.1, 1), Error);
}

TEST(PsiContraction, ChainHoldsWithHalf) {
  const auto c = chain();
  const auto r = verify_g_psi_contraction(c.space, c.pair, Gauge::constant(0.5));
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.checked_pairs, 0u);
}

TEST(PsiContraction, TooSmallPsiViolates) {
  // gaps 4, 2, 1 only halve
  const auto c = chain();
  const auto r = verify_g_psi_contraction(c.space, c.pair, Gauge::constant(0.25));
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().kind, "inequality");
}

TEST(PsiContraction, MissingEdgeReported) {
  // (a2, b1) is an edge but its image step (b1, a1) is not
  const auto c = chain(true, {1, 2});
  const auto r = verify_g_psi_contraction(c.space, c.pair, Gauge::constant(0.5));
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().kind, "edge");
}

TEST(PsiContraction, BadGaugeThrows) {
  const auto c = chain();
  try {
    (void)verify_g_psi_contraction(c.space, c.pair, Gauge::constant(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GaugeClassViolation);
  }
}

TEST(CommonFixedPoint, ChainReachesSharedPoint) {
  const auto c = chain();
  const FixedPointResult r = solve_common_fixed_point(c.space, c.pair, Gauge::constant(0.5), 0);
  EXPECT_EQ(c.space.id(r.p), "p");
  EXPECT_DOUBLE_EQ(r.d0, 4.0);
  EXPECT_DOUBLE_EQ(r.residual_t1, 0.0);
  ASSERT_EQ(r.trace.gaps.size(), r.apriori.size());
  for (std::size_t n = 0; n < r.trace.gaps.size(); ++n) {
    EXPECT_LE(r.trace.gaps[n], r.apriori[n]);
    EXPECT_DOUBLE_EQ(r.envelope[n], 4.0 * std::pow(0.5, static_cast<double>(n)));
  }
}

TEST(CommonFixedPoint, SeedWithoutEdge) {
  const auto c = chain(false);
  FixedPointOptions opt;
  opt.check_star = false;
  try {
    (void)solve_common_fixed_point(c.space, c.pair, Gauge::constant(0.5), 0, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SeedNotEligible);
  }
}

TEST(CommonFixedPoint, DiscretizedComplexExample) {
  const GraphBundle b = build_ex41(24, 64);
  const FixedPointResult r = solve_common_fixed_point(b.space, *b.pair, *b.psi, b.space.index_of(b.seed));
  EXPECT_EQ(b.space.id(r.p), "zero");
  EXPECT_LE(std::max(r.residual_t1, r.residual_t2), 1e-8);
  for (std::size_t n = 0; n < r.trace.gaps.size(); ++n) EXPECT_LE(r.trace.gaps[n], r.apriori[n]) << n;
  EXPECT_TRUE(verify_g_psi_contraction(b.space, *b.pair, *b.psi).holds);
}

TEST(Uniqueness, Regimes) {
  const auto c = chain();
  const UniquenessRegime full = check_uniqueness_regime(c.space);
  EXPECT_TRUE(full.weakly_connected);
  EXPECT_TRUE(full.weak_friendship);
  const auto bare = chain(false);
  const UniquenessRegime none = check_uniqueness_regime(bare.space);
  EXPECT_FALSE(none.weakly_connected);
  EXPECT_FALSE(none.weak_friendship);
}

TEST(InducedPsi, BelowOneAboveGap) {
  const Gauge psi = induced_psi(Gauge::linear(0.5), 1.0);
  for (double t : {1.5, 2.0, 10.0}) {
    EXPECT_GE(psi(t), 0.0);
    EXPECT_LT(psi(t), 1.0);
    EXPECT_NEAR(t * (1 - psi(t)), 0.5 * t - 0.5, 1e-12);
  }
}

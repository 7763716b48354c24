#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "sensornet/errors.hpp"
#include "sensornet/graph.hpp"
#include "sensornet/random.hpp"
#include "sensornet/rgg.hpp"

namespace {

using namespace sensornet;
using namespace sensornet::rgg;

NodePlacement line_placement(std::initializer_list<double> xs) {
  NodePlacement p;
  p.domain = Domain::UnitSquare;
  for (double x : xs) p.points.push_back({x, 0.0});
  return p;
}

std::set<Edge> edge_set(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

TEST(PlaceUniform, SinglePointInsideDisk) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = place_uniform(1, Domain::UnitAreaDisk, s);
    ASSERT_EQ(p.size(), 1);
    EXPECT_LE(p.points[0].x * p.points[0].x + p.points[0].y * p.points[0].y, 1.0 / std::numbers::pi);
  }
}

TEST(PlaceUniform, DeterministicPerSeed) {
  const auto a = place_uniform(1000, Domain::UnitSquare, 42);
  const auto b = place_uniform(1000, Domain::UnitSquare, 42);
  EXPECT_EQ(a.points, b.points);
  const auto c = place_uniform(1000, Domain::UnitSquare, 43);
  EXPECT_NE(a.points, c.points);
  for (const auto& pt : a.points) EXPECT_TRUE(contains(Domain::UnitSquare, pt));
}

TEST(PlaceUniform, DiskMeanNearOrigin) {
  const auto p = place_uniform(10000, Domain::UnitAreaDisk, 5);
  double mx = 0.0;
  double my = 0.0;
  for (const auto& pt : p.points) {
    EXPECT_TRUE(contains(Domain::UnitAreaDisk, pt));
    mx += pt.x;
    my += pt.y;
  }
  EXPECT_LT(std::hypot(mx / 1e4, my / 1e4), 0.02);
}

TEST(PlaceUniform, RejectsZeroNodes) {
  EXPECT_THROW(place_uniform(0, Domain::UnitSquare, 1), InvalidArgument);
}

TEST(RangeGraph, ZeroRangeIsEmpty) {
  const auto p = place_uniform(50, Domain::UnitAreaDisk, 3);
  EXPECT_EQ(build_range_graph(p, 0.0).edge_count(), 0U);
}

TEST(RangeGraph, DiameterRangeIsComplete) {
  const auto p = place_uniform(40, Domain::UnitAreaDisk, 3);
  EXPECT_EQ(build_range_graph(p, 2.0 / std::sqrt(std::numbers::pi)).edge_count(), 40U * 39U / 2U);
}

TEST(RangeGraph, CollinearExample) {
  const auto g = build_range_graph(line_placement({0.0, 0.4, 0.85}), 0.5);
  EXPECT_EQ(edge_set(g), (std::set<Edge>{{0, 1}, {1, 2}}));
}

TEST(RangeGraph, StrictInequality) {
  const auto g = build_range_graph(line_placement({0.0, 0.5}), 0.5);
  EXPECT_EQ(g.edge_count(), 0U);
  // 0.9 - 0.4 evaluates to exactly 0.5, which is not below the range.
  EXPECT_EQ(edge_set(build_range_graph(line_placement({0.0, 0.4, 0.9}), 0.5)), (std::set<Edge>{{0, 1}}));
}

TEST(RangeGraph, NegativeRangeThrows) {
  EXPECT_THROW(build_range_graph(line_placement({0.0, 0.5}), -0.1), InvalidArgument);
}

TEST(RangeGraph, MatchesPairwiseOracleAndIsMonotone) {
  const auto p = place_uniform(200, Domain::UnitAreaDisk, 11);
  std::set<Edge> previous;
  for (double r : {0.02, 0.05, 0.1, 0.2}) {
    std::set<Edge> oracle;
    for (int i = 0; i < p.size(); ++i)
      for (int j = i + 1; j < p.size(); ++j) {
        const double dx = p.points[i].x - p.points[j].x;
        const double dy = p.points[i].y - p.points[j].y;
        if (std::sqrt(dx * dx + dy * dy) < r) oracle.insert({i, j});
      }
    const auto got = edge_set(build_range_graph(p, r));
    EXPECT_EQ(got, oracle);
    for (const auto& e : previous) EXPECT_TRUE(got.count(e));
    previous = got;
  }
}

TEST(KnnGraph, LineExample) {
  const auto g = build_knn_graph(line_placement({0.0, 1.0, 2.0, 10.0}), 1);
  EXPECT_EQ(edge_set(g), (std::set<Edge>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(KnnGraph, TieBrokenBySmallerIndex) {
  // Node 1 is equidistant from 0 and 2.
  const auto g = build_knn_graph(line_placement({0.0, 1.0, 2.0}), 1);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 2));  // 2's own nearest is 1
  EXPECT_EQ(g.edge_count(), 2U);
}

TEST(KnnGraph, FullKIsComplete) {
  const auto p = place_uniform(30, Domain::UnitSquare, 8);
  EXPECT_EQ(build_knn_graph(p, 29).edge_count(), 30U * 29U / 2U);
}

TEST(KnnGraph, DegreeBoundsAndMonotone) {
  const auto p = place_uniform(150, Domain::UnitAreaDisk, 21);
  std::set<Edge> previous;
  for (int k = 1; k <= 8; ++k) {
    const auto g = build_knn_graph(p, k);
    for (int d : g.degrees()) {
      EXPECT_GE(d, k);
      EXPECT_LE(d, 149);
    }
    const auto got = edge_set(g);
    for (const auto& e : previous) EXPECT_TRUE(got.count(e));
    previous = got;
  }
}

TEST(KnnGraph, OutOfRangeK) {
  const auto p = place_uniform(5, Domain::UnitSquare, 1);
  EXPECT_THROW(build_knn_graph(p, 0), InvalidArgument);
  EXPECT_THROW(build_knn_graph(p, 5), InvalidArgument);
}

TEST(ErGraph, ExtremeProbabilities) {
  EXPECT_EQ(build_er_graph(30, 0.0, 4).edge_count(), 0U);
  EXPECT_EQ(build_er_graph(30, 1.0, 4).edge_count(), 435U);
  EXPECT_THROW(build_er_graph(30, 1.5, 4), InvalidArgument);
  EXPECT_THROW(build_er_graph(30, -0.1, 4), InvalidArgument);
}

TEST(ErGraph, DeterministicAndNested) {
  EXPECT_EQ(build_er_graph(60, 0.3, 9), build_er_graph(60, 0.3, 9));
  const auto lo = edge_set(build_er_graph(60, 0.1, 9));
  const auto hi = edge_set(build_er_graph(60, 0.4, 9));
  for (const auto& e : lo) EXPECT_TRUE(hi.count(e));
}

TEST(ErGraph, MeanEdgeCountMatchesBinomial) {
  // Binomial(4950, 0.5) has mean 2475.
  double total = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) total += static_cast<double>(build_er_graph(100, 0.5, 1000 + t).edge_count());
  EXPECT_NEAR(total / trials, 2475.0, 0.01 * 2475.0);
}

TEST(Connected, SmallCases) {
  EXPECT_TRUE(is_connected(Graph::empty(1)));
  EXPECT_FALSE(is_connected(Graph::empty(2)));
  EXPECT_TRUE(is_connected(Graph::path(5)));
  EXPECT_FALSE(is_connected(Graph(5, {{0, 1}, {1, 2}, {3, 4}})));
}

TEST(CriticalRange, Formula) {
  EXPECT_DOUBLE_EQ(critical_range(1000, 0.0), std::sqrt(std::log(1000.0) / (std::numbers::pi * 1000.0)));
  EXPECT_NEAR(critical_range(1000, 0.0), 0.046891, 1e-6);
  double prev = 0.0;
  for (double c = -5.0; c <= 5.0; c += 0.5) {
    const double r = critical_range(1000, c);
    EXPECT_GT(r, prev);
    prev = r;
  }
  EXPECT_THROW(critical_range(10, -std::log(10.0)), InvalidArgument);
  EXPECT_DOUBLE_EQ(critical_probability(1000, 2.0), (std::log(1000.0) + 2.0) / 1000.0);
}

TEST(Wilson, KnownValues) {
  const auto all = wilson_estimate(10, 10);
  EXPECT_DOUBLE_EQ(all.p_hat, 1.0);
  EXPECT_LT(all.ci_low, 1.0);
  EXPECT_NEAR(all.ci_high, 1.0, 1e-12);
  // Wilson interval for 50/100 at z = 1.959964: 0.5 +- 0.0961...
  const auto half = wilson_estimate(50, 100);
  const double z = 1.959963984540054;
  const double w = z * std::sqrt(0.25 / 100.0 + z * z / 40000.0) / (1.0 + z * z / 100.0);
  EXPECT_NEAR(half.ci_low, 0.5 - w, 1e-9);
  EXPECT_NEAR(half.ci_high, 0.5 + w, 1e-9);
}

TEST(ConnectivityProbability, TrivialCases) {
  EXPECT_DOUBLE_EQ(connectivity_probability(Model::Range, 2, 2.0 / std::sqrt(std::numbers::pi), 20, 1).p_hat, 1.0);
  EXPECT_DOUBLE_EQ(connectivity_probability(Model::ErdosRenyi, 50, 0.0, 20, 1).p_hat, 0.0);
}

TEST(ConnectivityProbability, ThreadCountDoesNotChangeOutcomes) {
  ConnectivityOptions one;
  ConnectivityOptions four;
  four.threads = 4;
  EXPECT_EQ(connectivity_outcomes(Model::Range, 200, critical_range(200, 0.0), 40, 77, one),
            connectivity_outcomes(Model::Range, 200, critical_range(200, 0.0), 40, 77, four));
}

TEST(ConnectivityProbability, PairedOutcomesMonotoneInC) {
  // Common random numbers: a placement connected at c stays connected at c' > c.
  std::vector<bool> prev(60, false);
  for (double c : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
    const auto out = connectivity_outcomes(Model::Range, 300, critical_range(300, c), 60, 5);
    for (std::size_t t = 0; t < out.size(); ++t)
      if (prev[t]) {
        EXPECT_TRUE(out[t]);
      }
    prev = out;
  }
}

TEST(ConnectivityProbability, ThresholdBracket) {
  // Brackets frozen after a pilot (c = 6 gave about 0.99, c = -6 about 0.0).
  EXPECT_GE(connectivity_probability(Model::Range, 1000, critical_range(1000, 6.0), 500, 101).p_hat, 0.9);
  EXPECT_LE(connectivity_probability(Model::Range, 1000, critical_range(1000, -6.0), 500, 101).p_hat, 0.3);
}

}  // namespace

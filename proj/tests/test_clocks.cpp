#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sensornet/clocks.hpp"
#include "sensornet/errors.hpp"
#include "sensornet/lp.hpp"
#include "sensornet/random.hpp"
#include "sensornet/rgg.hpp"

namespace {

using namespace sensornet;
using namespace sensornet::clocks;

ClockWorld two_node_world(double a1, double b1, double d01, double d10) {
  ClockWorld w;
  w.clocks = {{1.0, 0.0}, {a1, b1}};
  w.graph = Graph(2, {{0, 1}, {1, 0}}, true);
  w.delays = {{{0, 1}, d01}, {{1, 0}, d10}};
  return w;
}

PacketRecord packet(const std::vector<PacketRecord>& log, int i, int j, int k) {
  for (const auto& p : log)
    if (p.i == i && p.j == j && p.k == k) return p;
  throw InsufficientData("missing packet");
}

double skew_from(const std::vector<PacketRecord>& log, int i, int j) {
  return estimate_relative_skew(packet(log, i, j, 0), packet(log, i, j, 1));
}

Graph random_connected(int n, double p, Pcg32& rng) {
  for (;;) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < p) edges.emplace_back(i, j);
    Graph g(n, edges);
    if (is_connected(g)) return g;
  }
}

std::vector<OffsetMeasurement> noisy_measurements(const Graph& g, Pcg32& rng) {
  std::vector<OffsetMeasurement> m;
  for (const auto& [i, j] : g.edges()) m.push_back({i, j, rng.uniform(-5.0, 5.0), rng.uniform(0.25, 4.0)});
  return m;
}

// Effective resistance to node 0 from the pseudo-inverse of the weighted Laplacian.
std::vector<double> resistance_oracle(int n, const std::vector<OffsetMeasurement>& m) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : m) {
    const double w = 1.0 / e.variance;
    lap(e.i, e.i) += w;
    lap(e.j, e.j) += w;
    lap(e.i, e.j) -= w;
    lap(e.j, e.i) -= w;
  }
  const Eigen::MatrixXd pinv = lap.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = pinv(i, i) + pinv(0, 0) - 2.0 * pinv(i, 0);
  return r;
}

double error_norm(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

TEST(Exchange, IdentityClocksNoDelay) {
  const auto w = two_node_world(1.0, 0.0, 0.0, 0.0);
  const auto log = simulate_exchange(w, {{0, 1, 3.5}, {1, 0, 7.25}});
  ASSERT_EQ(log.size(), 2U);
  for (const auto& p : log) EXPECT_EQ(p.r, p.s);
}

TEST(Exchange, AffineExample) {
  const auto w = two_node_world(2.0, 3.0, 1.0, 0.0);
  const auto log = simulate_exchange(w, {{0, 1, 10.0}});
  EXPECT_DOUBLE_EQ(log.at(0).r, 25.0);
}

TEST(Exchange, StampsFollowAffineModel) {
  const auto w = random_world(Graph::complete(4), 8);
  for (const auto& p : standard_exchange(w)) {
    const auto& ci = w.clocks[p.i];
    const auto& cj = w.clocks[p.j];
    EXPECT_NEAR(p.r, cj.a * ((p.s - ci.b) / ci.a + w.delays.at({p.i, p.j})) + cj.b, 1e-12 * (1.0 + std::abs(p.r)));
  }
  EXPECT_EQ(w.clocks[0].a, 1.0);
  EXPECT_EQ(w.clocks[0].b, 0.0);
}

TEST(Exchange, AsymmetricDelaysShowInStamps) {
  const auto w = two_node_world(1.0, 0.0, 1.0, 3.0);
  const auto log = simulate_exchange(w, {{0, 1, 0.0}, {1, 0, 0.0}});
  EXPECT_DOUBLE_EQ(log[0].r - log[0].s, 1.0);
  EXPECT_DOUBLE_EQ(log[1].r - log[1].s, 3.0);
}

TEST(Exchange, UnknownLinkThrows) {
  ClockWorld w = two_node_world(1.0, 0.0, 1.0, 1.0);
  w.clocks.push_back({1.0, 0.0});
  w.graph = Graph(3, {{0, 1}, {1, 0}}, true);
  EXPECT_THROW(simulate_exchange(w, {{0, 2, 1.0}}), InvalidArgument);
}

TEST(RelativeSkew, ExactAndDelayFree) {
  EXPECT_DOUBLE_EQ(skew_from(standard_exchange(two_node_world(1.0, 0.0, 1.0, 1.0)), 0, 1), 1.0);
  for (double d : {0.0, 5.0}) {
    const auto log = standard_exchange(two_node_world(2.0, 1.5, d, d));
    EXPECT_NEAR(skew_from(log, 0, 1), 2.0, 1e-12);
    EXPECT_NEAR(skew_from(log, 1, 0), 0.5, 1e-12);
  }
  const PacketRecord p{0, 1, 0, 1.0, 2.0};
  EXPECT_THROW(estimate_relative_skew(p, p), InvalidArgument);
}

TEST(RelativeSkew, RandomWorlds) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto w = random_world(Graph::complete(4), s);
    const auto log = standard_exchange(w);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        const double truth = w.clocks[j].a / w.clocks[i].a;
        EXPECT_NEAR(skew_from(log, i, j), truth, 1e-12 * truth);
      }
  }
}

TEST(DelayOffset, IdentityClocksSymmetricDelay) {
  const auto log = standard_exchange(two_node_world(1.0, 0.0, 0.7, 0.7));
  const auto est = estimate_delay_and_offset(find_pingpong(log, 0, 1), 1.0, 1.0);
  EXPECT_NEAR(est.d_hat, 0.7, 1e-12);
  EXPECT_NEAR(est.tau_hat, 0.0, 1e-12);
}

TEST(DelayOffset, OffsetRecoveredForSymmetricDelays) {
  const auto log = standard_exchange(two_node_world(1.0, 4.2, 1.3, 1.3));
  const auto est = estimate_delay_and_offset(find_pingpong(log, 0, 1), skew_from(log, 0, 1), skew_from(log, 1, 0));
  EXPECT_NEAR(est.tau_hat, 4.2, 1e-12);
  EXPECT_NEAR(est.d_hat, 1.3, 1e-12);
}

TEST(DelayOffset, AsymmetricResidual) {
  const auto log = standard_exchange(two_node_world(1.0, -2.0, 0.5, 2.5));
  const auto est = estimate_delay_and_offset(find_pingpong(log, 0, 1), 1.0, 1.0);
  EXPECT_NEAR(std::abs(est.tau_hat - (-2.0)), 1.0, 1e-12);
}

TEST(DelayOffset, SkewedSymmetricRandom) {
  // Equal skews on both ends and symmetric delays make both estimates exact.
  Pcg32 rng(66);
  for (int t = 0; t < 100; ++t) {
    ClockWorld w;
    const double a = rng.uniform(0.5, 2.0);
    const double d = rng.uniform(0.0, 2.0);
    w.clocks = {{1.0, 0.0}, {a, rng.uniform(-10.0, 10.0)}, {a, rng.uniform(-10.0, 10.0)}};
    w.graph = Graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}, true);
    w.delays = {{{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 2}, d}, {{2, 1}, d}};
    const auto log = standard_exchange(w);
    const auto est = estimate_delay_and_offset(find_pingpong(log, 1, 2), skew_from(log, 1, 2), skew_from(log, 2, 1));
    EXPECT_NEAR(est.tau_hat, w.clocks[2].b - w.clocks[1].b, 1e-9);
    EXPECT_NEAR(est.d_hat, a * d, 1e-9);
  }
}

TEST(RoundTrip, ExactSum) {
  const auto log = standard_exchange(two_node_world(1.0, 0.0, 1.0, 3.0));
  EXPECT_NEAR(roundtrip_delay(find_pingpong(log, 0, 1), 1.0, 1.0), 4.0, 1e-12);
  const auto zero = standard_exchange(two_node_world(1.7, 2.0, 0.0, 0.0));
  EXPECT_NEAR(roundtrip_delay(find_pingpong(zero, 0, 1), skew_from(zero, 0, 1), skew_from(zero, 1, 0)), 0.0, 1e-12);
}

TEST(RoundTrip, IndependentOfOffsets) {
  for (double b : {-7.0, 0.0, 3.0, 11.0}) {
    const auto log = standard_exchange(two_node_world(1.3, b, 0.4, 1.9));
    EXPECT_NEAR(roundtrip_delay(find_pingpong(log, 0, 1), skew_from(log, 0, 1), skew_from(log, 1, 0)), 2.3, 1e-12);
  }
}

TEST(RoundTrip, MissingStampsThrow) {
  const auto w = two_node_world(1.0, 0.0, 1.0, 1.0);
  const auto log = simulate_exchange(w, {{0, 1, 1.0}});
  EXPECT_THROW(find_pingpong(log, 0, 1), InsufficientData);
  EXPECT_THROW(offset_uncertainty_interval(log, 1, true), InsufficientData);
}

// min and max of b subject to the stamp equations and nonnegative delays.
std::pair<double, double> interval_oracle(const std::vector<PacketRecord>& log, double a) {
  LinearProgram lp(3);  // b (free), d01, d10
  lp.set_free(0);
  for (const auto& p : log) {
    if (p.i == 0) lp.add({1.0, a, 0.0}, RowSense::Equal, p.r - a * p.s);
    else lp.add({-1.0 / a, 0.0, 1.0}, RowSense::Equal, p.r - p.s / a);
  }
  lp.objective = {1.0, 0.0, 0.0};
  const auto lo = lp_solve(lp, Optimize::Minimize);
  const auto hi = lp_solve(lp, Optimize::Maximize);
  return {lo.value, hi.value};
}

TEST(Interval, LengthFourMatchesLp) {
  const auto log = standard_exchange(two_node_world(1.0, 2.5, 1.0, 3.0));
  const auto iv = offset_uncertainty_interval(log, 1, true);
  ASSERT_TRUE(iv.bounded);
  EXPECT_NEAR(iv.hi - iv.lo, 4.0, 1e-12);
  const auto [lo, hi] = interval_oracle(log, 1.0);
  EXPECT_NEAR(iv.lo, lo, 1e-9);
  EXPECT_NEAR(iv.hi, hi, 1e-9);
}

TEST(Interval, ZeroRoundTripIsPoint) {
  const auto log = standard_exchange(two_node_world(1.4, -3.0, 0.0, 0.0));
  const auto iv = offset_uncertainty_interval(log, 1, true);
  EXPECT_NEAR(iv.lo, -3.0, 1e-9);
  EXPECT_NEAR(iv.hi, -3.0, 1e-9);
}

TEST(Interval, ContainsTruthInRandomWorlds) {
  const Graph pair(2, {{0, 1}});
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto w = random_world(pair, 500 + s);
    const auto log = standard_exchange(w);
    const auto iv = offset_uncertainty_interval(log, 1, true);
    EXPECT_LE(iv.lo, w.clocks[1].b + 1e-9);
    EXPECT_GE(iv.hi, w.clocks[1].b - 1e-9);
    EXPECT_NEAR(iv.hi - iv.lo, w.clocks[1].a * (w.delays.at({0, 1}) + w.delays.at({1, 0})), 1e-9);
    const auto [lo, hi] = interval_oracle(log, w.clocks[1].a);
    EXPECT_NEAR(iv.lo, lo, 1e-8);
    EXPECT_NEAR(iv.hi, hi, 1e-8);
  }
}

TEST(Interval, WithoutCausalityIsALine) {
  const auto w = two_node_world(1.5, 2.0, 0.5, 1.0);
  const auto log = standard_exchange(w);
  const auto iv = offset_uncertainty_interval(log, 1, false);
  EXPECT_FALSE(iv.bounded);
  // Every point on the line reproduces the stamps.
  for (double t : {-3.0, 0.0, 2.5}) {
    const double b = iv.anchor[0] + t * iv.direction[0];
    const double d01 = iv.anchor[1] + t * iv.direction[1];
    const double d10 = iv.anchor[2] + t * iv.direction[2];
    for (const auto& p : log) {
      if (p.i == 0) EXPECT_NEAR(p.r, 1.5 * (p.s + d01) + b, 1e-9);
      else EXPECT_NEAR(p.r, (p.s - b) / 1.5 + d10, 1e-9);
    }
  }
  EXPECT_GT(std::abs(iv.direction[0]), 0.0);
}

TEST(Polyhedron, TwoNodesMatchInterval) {
  const auto w = random_world(Graph(2, {{0, 1}}), 91);
  const auto log = standard_exchange(w);
  const auto iv = offset_uncertainty_interval(log, 1, true);
  const auto poly = offset_uncertainty_polyhedron(2, log);
  const auto [lo, hi] = poly.offset_range(1);
  EXPECT_NEAR(lo, iv.lo, 1e-9);
  EXPECT_NEAR(hi, iv.hi, 1e-9);
}

TEST(Polyhedron, MembershipMatchesDirectSubstitution) {
  ClockWorld w;
  w.clocks = {{1.0, 0.0}, {1.2, 0.5}, {0.8, -0.7}};
  std::vector<Edge> links;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        links.emplace_back(i, j);
        w.delays[{i, j}] = 1.0;
      }
  w.graph = Graph(3, links, true);
  const auto log = standard_exchange(w);
  const auto poly = offset_uncertainty_polyhedron(3, log);
  EXPECT_TRUE(poly.contains({0.0, 0.5, -0.7}));
  EXPECT_TRUE(poly.has_interior());
  Pcg32 rng(5);
  int rejected = 0;
  for (int t = 0; t < 500; ++t) {
    const std::vector<double> b{0.0, rng.uniform(-4.0, 5.0), rng.uniform(-5.0, 4.0)};
    bool feasible = true;
    for (const auto& p : log) {
      const double d = (p.r - b[p.j]) / w.clocks[p.j].a - (p.s - b[p.i]) / w.clocks[p.i].a;
      feasible = feasible && d >= -1e-9;
    }
    EXPECT_EQ(poly.contains(b), feasible);
    if (!feasible) ++rejected;
  }
  EXPECT_GT(rejected, 0);
}

TEST(Polyhedron, ZeroRoundTripKillsInterior) {
  auto w = random_world(Graph::complete(4), 3);
  w.delays[{1, 2}] = 0.0;
  w.delays[{2, 1}] = 0.0;
  const auto poly = offset_uncertainty_polyhedron(4, standard_exchange(w));
  std::vector<double> b;
  for (const auto& c : w.clocks) b.push_back(c.b);
  EXPECT_TRUE(poly.contains(b));
  EXPECT_FALSE(poly.has_interior());
}

TEST(Polyhedron, NeedsStrongConnectivity) {
  ClockWorld w;
  w.clocks = {{1.0, 0.0}, {1.1, 0.2}, {0.9, 0.1}};
  w.graph = Graph(3, {{0, 1}, {1, 0}, {1, 2}}, true);
  w.delays = {{{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 2}, 1.0}};
  EXPECT_THROW(offset_uncertainty_polyhedron(3, standard_exchange(w)), InsufficientData);
}

TEST(LeastSquares, PathExample) {
  const auto v = ls_offsets(3, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}});
  EXPECT_NEAR(v[0], 0.0, 1e-12);
  EXPECT_NEAR(v[1], 1.0, 1e-12);
  EXPECT_NEAR(v[2], 2.0, 1e-12);
}

TEST(LeastSquares, InconsistentCycleMatchesNormalEquations) {
  const std::vector<OffsetMeasurement> m{{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {0, 2, 3.0, 1.0}};
  Eigen::MatrixXd a(3, 2);  // rows: o01 = v1, o12 = v2 - v1, o02 = v2
  a << 1, 0, -1, 1, 0, 1;
  const Eigen::Vector3d o(1.0, 1.0, 3.0);
  const Eigen::Vector2d ref = (a.transpose() * a).ldlt().solve(a.transpose() * o);
  const auto v = ls_offsets(3, m);
  EXPECT_NEAR(v[1], ref(0), 1e-12);
  EXPECT_NEAR(v[2], ref(1), 1e-12);
  EXPECT_NEAR(v[1], 4.0 / 3.0, 1e-12);
}

TEST(LeastSquares, ConsistentRecoveryAndDisconnected) {
  Pcg32 rng(8);
  for (int t = 0; t < 30; ++t) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const auto g = random_connected(n, 0.4, rng);
    std::vector<double> truth(n, 0.0);
    for (int i = 1; i < n; ++i) truth[i] = rng.uniform(-10.0, 10.0);
    const auto v = ls_offsets(n, exact_measurements(g, truth));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(v[i], truth[i], 1e-9);
  }
  EXPECT_THROW(ls_offsets(4, {{0, 1, 1.0, 1.0}, {2, 3, 1.0, 1.0}}), SingularSystem);
}

TEST(Variance, EqualsEffectiveResistance) {
  Pcg32 rng(19);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const auto g = random_connected(n, 0.4, rng);
    const auto m = noisy_measurements(g, rng);
    const auto var = estimator_variance(n, m);
    const auto ref = resistance_oracle(n, m);
    EXPECT_EQ(var[0], 0.0);
    for (int i = 1; i < n; ++i) EXPECT_NEAR(var[i], ref[i], 1e-9 * ref[i]);
  }
}

TEST(Variance, PathAndCompleteClosedForms) {
  for (int n : {2, 5, 10, 20}) {
    const auto path = estimator_variance(Graph::path(n), std::vector<double>(n - 1, 1.0));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(path[i], i, 1e-9 * (1 + i));
    EXPECT_NEAR(*std::max_element(path.begin(), path.end()), n - 1, 1e-9 * n);
    const auto kn = estimator_variance(Graph::complete(n), std::vector<double>(n * (n - 1) / 2, 1.0));
    for (int i = 1; i < n; ++i) EXPECT_NEAR(kn[i], 2.0 / n, 1e-9);
  }
}

TEST(Variance, RayleighMonotonicity) {
  Pcg32 rng(29);
  for (int t = 0; t < 40; ++t) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const auto g = random_connected(n, 0.35, rng);
    auto m = noisy_measurements(g, rng);
    const auto before = estimator_variance(n, m);
    const int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n - 1));
    if (j >= i) ++j;
    m.push_back({i, j, 0.0, rng.uniform(0.25, 4.0)});
    const auto after = estimator_variance(n, m);
    for (int v = 0; v < n; ++v) EXPECT_LE(after[v], before[v] * (1.0 + 1e-12));
  }
}

TEST(Variance, BoundedOnCriticalRandomGeometricGraphs) {
  // Max resistance to the node nearest the (0,0) corner on connected range
  // graphs at r = critical_range(n, 4). A pilot over six seeds gave values
  // between 1.7 and 4.7 with no growth in n; the band is frozen at 3.5 and the
  // absolute cap at 6.
  std::vector<double> maxima;
  for (int n : {250, 500, 1000, 2000}) {
    const double r = rgg::critical_range(n, 4.0);
    for (std::uint64_t attempt = 0;; ++attempt) {
      auto p = rgg::place_uniform(n, Domain::UnitSquare, 1000 + attempt);
      int ref = 0;
      for (int i = 0; i < n; ++i)
        if (p.points[i].x + p.points[i].y < p.points[ref].x + p.points[ref].y) ref = i;
      std::swap(p.points[0], p.points[ref]);
      const auto g = rgg::build_range_graph(p, r);
      if (!is_connected(g)) continue;
      const auto var = estimator_variance(g, std::vector<double>(g.edge_count(), 1.0));
      maxima.push_back(*std::max_element(var.begin(), var.end()));
      break;
    }
  }
  const auto [lo, hi] = std::minmax_element(maxima.begin(), maxima.end());
  EXPECT_LE(*hi, 6.0);
  EXPECT_LE(*hi / *lo, 3.5);
}

TEST(Async, FixedPointAtLeastSquares) {
  Pcg32 rng(31);
  const auto g = random_connected(8, 0.4, rng);
  const auto m = noisy_measurements(g, rng);
  SmoothingState st(8, m);
  st.v = ls_offsets(8, m);
  const auto start = st.v;
  const auto traj = smoothing_async(st, round_robin_order(8, 3));
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(traj.v[i], start[i], 1e-12);
}

TEST(Async, PathRecoversExactly) {
  const std::vector<double> truth{0.0, 1.5, -2.0};
  SmoothingState st(3, exact_measurements(Graph::path(3), truth));
  const auto traj = smoothing_async(st, round_robin_order(3, 60));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(traj.v[i], truth[i], 1e-12);
}

TEST(Async, ObjectiveNonincreasingAndConverges) {
  Pcg32 rng(37);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const auto g = random_connected(n, 0.4, rng);
    const auto m = noisy_measurements(g, rng);
    SmoothingState st(n, m);
    const auto traj = smoothing_async(st, round_robin_order(n, 2000));
    for (std::size_t k = 1; k < traj.objective.size(); ++k)
      EXPECT_LE(traj.objective[k], traj.objective[k - 1] * (1.0 + 1e-12) + 1e-12);
    const auto ls = ls_offsets(n, m);
    EXPECT_LE(error_norm(traj.v, ls), 1e-9);
    EXPECT_EQ(traj.v[0], 0.0);
  }
}

TEST(Async, ReferenceUpdateThrows) {
  SmoothingState st(3, exact_measurements(Graph::path(3), {0.0, 1.0, 2.0}));
  EXPECT_THROW(smoothing_async(st, {1, 0}), InvalidArgument);
}

TEST(Sync, ZeroStaysZero) {
  SmoothingState st(5, exact_measurements(Graph::cycle(5), std::vector<double>(5, 0.0)));
  const auto traj = smoothing_sync(st);
  for (double x : traj.v) EXPECT_EQ(x, 0.0);
}

TEST(Sync, StarCenteredAtReferenceOneStep) {
  const std::vector<double> truth{0.0, 1.0, -2.0, 3.0, 0.5};
  SmoothingState st(5, exact_measurements(Graph::star(5), truth));
  const auto traj = smoothing_sync(st);
  ASSERT_GE(traj.error_norm.size(), 2U);
  EXPECT_NEAR(traj.error_norm[1], 0.0, 1e-12);
}

TEST(Sync, RateMatchesSpectralRadius) {
  Pcg32 rng(41);
  const auto g = random_connected(20, 0.2, rng);
  std::vector<double> truth(20, 0.0);
  for (int i = 1; i < 20; ++i) truth[i] = rng.uniform(-5.0, 5.0);
  SmoothingState st(20, exact_measurements(g, truth));
  SyncOptions opts;
  opts.relative_tol = 1e-12;
  const auto traj = smoothing_sync(st, opts);
  const double rho = smoothing_spectral_radius(g);
  EXPECT_NEAR(traj.measured_rate, rho, 0.02 * rho);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(traj.v[i], truth[i], 1e-9);
}

TEST(Spectral, PathRadiusAgainstEigen) {
  const auto m = smoothing_matrix(Graph::path(10));
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  const double ref = e.eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(smoothing_spectral_radius(Graph::path(10)), ref, 1e-8);
}

TEST(Cheeger, BoundsContainRadius) {
  for (const auto& g : {Graph::complete(4), Graph::path(10), Graph::cycle(9), Graph::lattice(4), Graph::star(6)}) {
    const auto b = cheeger_bounds(g);
    const double rho = smoothing_spectral_radius(g);
    EXPECT_LE(b.lower, rho + 1e-12);
    EXPECT_GE(b.upper, rho - 1e-12);
    const double k = b.kappa;
    if (k * k <= 2.0 * b.d0 * static_cast<double>(b.degree_sum)) {
      EXPECT_LE(b.lower, b.upper);
    }
  }
  const auto k4 = cheeger_bounds(Graph::complete(4));
  EXPECT_EQ(k4.kappa, 3);
  EXPECT_EQ(k4.d0, 3);
  EXPECT_EQ(k4.degree_sum, 9);
}

TEST(Settling, LatticeQuadraticGrowth) {
  std::vector<int> its;
  for (int side : {4, 8, 16}) {
    const int n = side * side;
    std::vector<double> offsets(n);
    for (int i = 0; i < n; ++i) offsets[i] = std::sin(1.0 + i);
    offsets[0] = 0.0;
    its.push_back(settling_iterations(Graph::lattice(side), offsets, 1e-6));
  }
  const double c = its[0] / 256.0;
  EXPECT_LE(its[1], c * 64.0 * 64.0);
  EXPECT_LE(its[2], c * 256.0 * 256.0);
  EXPECT_LT(its[0], its[1]);
  EXPECT_LT(its[1], its[2]);
}

}  // namespace

#include "sensornet_tools/report.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sensornet/boolean_complexity.hpp"
#include "sensornet/capacity.hpp"
#include "sensornet/clocks.hpp"
#include "sensornet/dag.hpp"
#include "sensornet/errors.hpp"
#include "sensornet/function_table.hpp"
#include "sensornet/histogram.hpp"
#include "sensornet/random.hpp"
#include "sensornet/rgg.hpp"
#include "sensornet/tree_codes.hpp"

namespace sensornet::tools {
namespace {

// Pinned tolerances and budgets.
constexpr double kConnectivityGap = 0.8;
constexpr double kKnnHigh = 0.95;
constexpr double kKnnLow = 0.2;
constexpr double kConnectivitySeconds = 60.0;
constexpr double kCapacityBand = 3.0;
constexpr double kCapacityKappa = 1.5;
constexpr int kCapacityRounds = 20000;
constexpr int kCapacityWarmup = 20000;
constexpr int kSchemeAttempts = 5;
constexpr int kCapacityReplicates = 5;  // placements per n; the band uses the median
constexpr double kCapacitySeconds = 300.0;
constexpr double kSkewRelTol = 1e-12;
constexpr double kClockTol = 1e-9;
constexpr double kSmoothingTol = 1e-9;
constexpr double kMonotoneSlack = 1e-12;  // relative to F at the start
constexpr double kResistanceTol = 1e-9;
constexpr double kRateAgreement = 0.02;
constexpr double kBoundSlack = 1e-12;
constexpr double kExactTol = 1e-12;
constexpr double kAndBand = 1.05;
constexpr double kAndLimitSlack = 1e-6;
constexpr double kHistogramBand = 3.0;
constexpr int kHistogramBlocks = 20;
constexpr int kHistogramAttempts = 20;
constexpr double kHistogramSeconds = 300.0;

using Clock = std::chrono::steady_clock;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

double log2_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  double acc = 0.0;
  for (int i = 1; i <= k; ++i) acc += std::log2(static_cast<double>(n - k + i)) - std::log2(static_cast<double>(i));
  return acc;
}

std::uint64_t sub_seed(std::uint64_t base, std::uint64_t k) {
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Graph random_connected_graph(Pcg32& rng, int n, double p) {
  for (;;) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < p) edges.emplace_back(i, j);
    Graph g(n, edges);
    if (is_connected(g)) return g;
  }
}

// ---------------------------------------------------------------- 1..3

struct GridRun {
  std::vector<double> params;
  std::vector<double> p_hat;
  bool monotone = true;
};

GridRun connectivity_grid(rgg::Model model, int n, const std::vector<double>& params, int trials,
                          std::uint64_t seed, int threads) {
  GridRun run;
  rgg::ConnectivityOptions opts;
  opts.threads = threads;
  for (double prm : params) {
    const auto est = rgg::connectivity_probability(model, n, prm, trials, seed, opts);
    run.params.push_back(prm);
    run.p_hat.push_back(est.p_hat);
  }
  for (std::size_t i = 1; i < run.p_hat.size(); ++i)
    if (run.p_hat[i] < run.p_hat[i - 1]) run.monotone = false;
  return run;
}

std::vector<double> c_grid() { return {-6, -4, -2, 0, 2, 4, 6}; }

void grid_table(CriterionResult& r, const char* label, const GridRun& run) {
  r.detail.push_back(std::string("| ") + label + " | p_hat |");
  r.detail.push_back("|---|---|");
  for (std::size_t i = 0; i < run.params.size(); ++i)
    r.detail.push_back("| " + g6(run.params[i]) + " | " + fmt("%.3f", run.p_hat[i]) + " |");
}

void criterion_range(CriterionResult& r, const ReportOptions& o, std::uint64_t seed) {
  const int n = 1000;
  const auto t0 = Clock::now();
  std::vector<double> radii;
  for (double c : c_grid()) radii.push_back(rgg::critical_range(n, c));
  auto run = connectivity_grid(rgg::Model::Range, n, radii, 500, seed, o.threads);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  run.params = c_grid();
  const double gap = run.p_hat.back() - run.p_hat.front();
  r.pass = gap >= kConnectivityGap && run.monotone && secs < kConnectivitySeconds;
  r.summary = "gap " + fmt("%.3f", gap) + ", monotone " + (run.monotone ? "yes" : "no") + ", " +
              fmt("%.1f", secs) + " s";
  grid_table(r, "c", run);
}

void criterion_knn(CriterionResult& r, const ReportOptions& o, std::uint64_t seed) {
  const int n = 1000;
  const int k_hi = static_cast<int>(std::ceil(2.0 * std::log(static_cast<double>(n))));
  std::vector<double> ks;
  for (int k = 1; k <= k_hi; ++k) ks.push_back(k);
  const auto t0 = Clock::now();
  const auto run = connectivity_grid(rgg::Model::Knn, n, ks, 300, seed, o.threads);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const double lo = run.p_hat.front();
  const double hi = run.p_hat.back();
  r.pass = hi >= kKnnHigh && lo <= kKnnLow && run.monotone && secs < kConnectivitySeconds;
  r.summary = "p(k=1) " + fmt("%.3f", lo) + ", p(k=" + std::to_string(k_hi) + ") " + fmt("%.3f", hi) +
              ", monotone " + (run.monotone ? "yes" : "no") + ", " + fmt("%.1f", secs) + " s";
  grid_table(r, "k", run);
}

void criterion_er(CriterionResult& r, const ReportOptions& o, std::uint64_t seed) {
  const int n = 1000;
  std::vector<double> ps;
  for (double c : c_grid()) ps.push_back(rgg::critical_probability(n, c));
  auto run = connectivity_grid(rgg::Model::ErdosRenyi, n, ps, 500, seed, o.threads);
  run.params = c_grid();
  const double gap = run.p_hat.back() - run.p_hat.front();
  r.pass = gap >= kConnectivityGap && run.monotone;
  r.summary = "gap " + fmt("%.3f", gap) + ", monotone " + (run.monotone ? "yes" : "no");
  grid_table(r, "c", run);
}

// ---------------------------------------------------------------- 4

void criterion_capacity(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  const auto t0 = Clock::now();
  capacity::ProtocolParams params;
  params.delta = 1.0;
  params.W = 1.0;
  bool ok = true;
  std::vector<double> scaled;
  long long violations = 0;
  r.detail.push_back("| n | replicate | cells | m | lambda_hat | lambda sqrt(n ln n)/W | transport | bound |");
  r.detail.push_back("|---|---|---|---|---|---|---|---|");
  for (int n : {64, 256, 1024, 4096}) {
    std::vector<double> reps;
    for (int rep = 0; rep < kCapacityReplicates; ++rep) {
      std::optional<capacity::CellScheme> scheme;
      for (int attempt = 0; attempt < kSchemeAttempts && !scheme; ++attempt) {
        const std::uint64_t key = 64 * static_cast<std::uint64_t>(n) + 8 * rep + attempt;
        const auto placement = rgg::place_uniform(n, Domain::UnitSquare, sub_seed(seed, 2 * key));
        const auto od = capacity::random_od_pairs(n, sub_seed(seed, 2 * key + 1));
        try {
          scheme = capacity::build_cell_scheme(placement, od, kCapacityKappa, params);
        } catch (const SchemeFailure&) {
        }
      }
      if (!scheme) {
        ok = false;
        r.detail.push_back("| " + std::to_string(n) + " | " + std::to_string(rep + 1) + " | scheme failed | | | | | |");
        continue;
      }
      capacity::SimulationOptions sim;
      sim.rounds = kCapacityRounds;
      sim.warmup_rounds = kCapacityWarmup;
      const auto res = capacity::simulate_throughput(*scheme, params, sim);
      const double s = res.lambda_hat * std::sqrt(n * std::log(static_cast<double>(n))) / params.W;
      const double tc = capacity::transport_capacity(res.log);
      const double ub = capacity::protocol_upper_bound(n, 1.0, params);
      violations += res.protocol_violations;
      if (!(res.lambda_hat > 0.0) || tc > ub) ok = false;
      reps.push_back(s);
      r.detail.push_back("| " + std::to_string(n) + " | " + std::to_string(rep + 1) + " | " +
                         std::to_string(scheme->cells_per_side) + "^2 | " +
                         std::to_string(scheme->reuse_distance) + " | " + g6(res.lambda_hat) + " | " + g6(s) +
                         " | " + g6(tc) + " | " + g6(ub) + " |");
    }
    if (reps.empty()) continue;
    std::sort(reps.begin(), reps.end());
    scaled.push_back(reps[reps.size() / 2]);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  double ratio = INFINITY;
  if (scaled.size() == 4 && *std::min_element(scaled.begin(), scaled.end()) > 0.0)
    ratio = *std::max_element(scaled.begin(), scaled.end()) / *std::min_element(scaled.begin(), scaled.end());
  std::string medians;
  for (double v : scaled) medians += (medians.empty() ? "" : ", ") + fmt("%.4f", v);
  r.pass = ok && violations == 0 && ratio <= kCapacityBand && secs < kCapacitySeconds;
  r.summary = "violations " + std::to_string(violations) + ", median scaled throughput " + medians +
              ", band max/min " + fmt("%.3f", ratio) + ", " + fmt("%.1f", secs) + " s";
}

// ---------------------------------------------------------------- 5

void criterion_clock_estimators(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  double skew_err = 0.0, rt_err = 0.0, off_err = 0.0, d_err = 0.0, len_err = 0.0;
  int outside = 0;
  const Graph triangle = Graph::complete(3);
  for (int w = 0; w < 1000; ++w) {
    const auto world = clocks::random_world(triangle, sub_seed(seed, 3 * w));
    const auto log = clocks::standard_exchange(world);
    auto packet = [&](int i, int j, int k) {
      for (const auto& p : log)
        if (p.i == i && p.j == j && p.k == k) return p;
      throw InsufficientData("missing packet");
    };
    auto rel_skew = [&](int i, int j) { return clocks::estimate_relative_skew(packet(i, j, 0), packet(i, j, 1)); };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const double truth = world.clocks[j].a / world.clocks[i].a;
        skew_err = std::max(skew_err, std::abs(rel_skew(i, j) - truth) / truth);
      }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const auto pp = clocks::find_pingpong(log, i, j);
        const double rt = clocks::roundtrip_delay(pp, rel_skew(i, j), rel_skew(j, i), world.clocks[i].a);
        rt_err = std::max(rt_err, std::abs(rt - (world.delays.at({i, j}) + world.delays.at({j, i}))));
      }

    // Symmetric delays and equal skews on link (1, 2).
    auto sym = world;
    sym.clocks[2].a = sym.clocks[1].a;
    sym.delays[{2, 1}] = sym.delays.at({1, 2});
    const auto slog = clocks::standard_exchange(sym);
    auto sym_skew = [&](int i, int j) {
      const clocks::PacketRecord* first = nullptr;
      for (const auto& p : slog)
        if (p.i == i && p.j == j) {
          if (!first) first = &p;
          else return clocks::estimate_relative_skew(*first, p);
        }
      throw InsufficientData("missing packet");
    };
    const auto pp = clocks::find_pingpong(slog, 1, 2);
    const auto est = clocks::estimate_delay_and_offset(pp, sym_skew(1, 2), sym_skew(2, 1));
    off_err = std::max(off_err, std::abs(est.tau_hat - (sym.clocks[2].b - sym.clocks[1].b)));
    d_err = std::max(d_err, std::abs(est.d_hat - sym.clocks[1].a * sym.delays.at({1, 2})));

    // Causal interval for node 1 against the reference.
    const auto iv = clocks::offset_uncertainty_interval(log, 1, true);
    const double b = world.clocks[1].b;
    if (!iv.bounded || b < iv.lo - kClockTol || b > iv.hi + kClockTol) ++outside;
    const double want = iv.skew * (world.delays.at({0, 1}) + world.delays.at({1, 0}));
    len_err = std::max(len_err, std::abs((iv.hi - iv.lo) - want));
  }
  r.pass = skew_err <= kSkewRelTol && rt_err <= kClockTol && off_err <= kClockTol && d_err <= kClockTol &&
           outside == 0 && len_err <= kClockTol;
  r.summary = "max errors: skew " + g6(skew_err) + " (rel), round trip " + g6(rt_err) + ", offset " +
              g6(off_err) + ", delay " + g6(d_err) + ", interval length " + g6(len_err) +
              "; truth outside interval " + std::to_string(outside) + "/1000";
}

// ---------------------------------------------------------------- 6

void criterion_network_impossibility(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  Pcg32 rng(seed);
  int contains = 0, empty_planted = 0, restored = 0;
  const int cases = 50;
  for (int c = 0; c < cases; ++c) {
    const int n = 3 + static_cast<int>(rng.below(8));
    Graph g;
    Edge plant{};
    for (;;) {
      std::vector<Edge> edges;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && rng.uniform() < 0.4) edges.emplace_back(i, j);
      g = Graph(n, edges, true);
      if (!is_strongly_connected(g)) continue;
      std::vector<Edge> free_pairs;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (!g.has_edge(i, j) && !g.has_edge(j, i)) free_pairs.emplace_back(i, j);
      if (free_pairs.empty()) continue;
      plant = free_pairs[rng.below(static_cast<std::uint32_t>(free_pairs.size()))];
      break;
    }
    const auto world = clocks::random_world(g, sub_seed(seed, c));
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) b[v] = world.clocks[v].b;

    const auto base = clocks::offset_uncertainty_polyhedron(n, clocks::standard_exchange(world));
    if (base.contains(b)) ++contains;
    if (base.has_interior()) ++restored;

    auto planted = world;
    auto edges = g.edges();
    edges.push_back(plant);
    edges.emplace_back(plant.second, plant.first);
    planted.graph = Graph(n, edges, true);
    planted.delays[plant] = 0.0;
    planted.delays[{plant.second, plant.first}] = 0.0;
    const auto poly = clocks::offset_uncertainty_polyhedron(n, clocks::standard_exchange(planted));
    if (poly.contains(b) && !poly.has_interior()) ++empty_planted;
  }
  r.pass = contains == cases && empty_planted == cases && restored == cases;
  r.summary = "truth inside " + std::to_string(contains) + "/50, planted zero round trip -> empty interior " +
              std::to_string(empty_planted) + "/50, link removed -> interior " + std::to_string(restored) +
              "/50";
}

// ---------------------------------------------------------------- 7

// Effective resistance to node 0 from the pseudo-inverse of the full Laplacian.
std::vector<double> resistance_oracle(int n, const std::vector<clocks::OffsetMeasurement>& ms) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : ms) {
    const double w = 1.0 / m.variance;
    L(m.i, m.i) += w;
    L(m.j, m.j) += w;
    L(m.i, m.j) -= w;
    L(m.j, m.i) -= w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(n, n);
  const double cut = 1e-10 * vals.cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k)
    if (vals(k) > cut) pinv += vecs.col(k) * vecs.col(k).transpose() / vals(k);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = pinv(0, 0) + pinv(i, i) - 2.0 * pinv(0, i);
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void criterion_least_squares(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  Pcg32 rng(seed);
  double ls_err = 0.0, async_err = 0.0, sync_err = 0.0, res_err = 0.0;
  int non_monotone = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const Graph g = random_connected_graph(rng, n, 0.4);
    std::vector<double> offsets(static_cast<std::size_t>(n), 0.0);
    for (int v = 1; v < n; ++v) offsets[v] = rng.uniform(-10.0, 10.0);
    auto ms = clocks::exact_measurements(g, offsets);
    for (auto& m : ms) m.variance = rng.uniform(0.25, 4.0);

    const auto v_ls = clocks::ls_offsets(n, ms);
    ls_err = std::max(ls_err, max_abs_diff(v_ls, offsets));

    clocks::SmoothingState async_state(n, ms);
    const double f0 = clocks::objective(async_state.v, ms);
    double prev = f0;
    for (int chunk = 0; chunk < 400 && max_abs_diff(async_state.v, v_ls) > 0.1 * kSmoothingTol; ++chunk) {
      const auto tr = clocks::smoothing_async(async_state, clocks::round_robin_order(n, 50));
      for (double f : tr.objective) {
        if (f > prev + kMonotoneSlack * f0) ++non_monotone;
        prev = f;
      }
    }
    async_err = std::max(async_err, max_abs_diff(async_state.v, v_ls));

    clocks::SmoothingState sync_state(n, ms);
    clocks::smoothing_sync(sync_state);
    sync_err = std::max(sync_err, max_abs_diff(sync_state.v, v_ls));

    res_err = std::max(res_err, max_abs_diff(clocks::estimator_variance(n, ms), resistance_oracle(n, ms)));
  }
  // Closed forms.
  double closed_err = 0.0;
  for (int n : {2, 5, 10, 20}) {
    const auto path = clocks::estimator_variance(Graph::path(n), std::vector<double>(n - 1, 1.0));
    closed_err = std::max(closed_err, std::abs(path.back() - (n - 1)));
    const Graph kn = Graph::complete(n);
    const auto var = clocks::estimator_variance(kn, std::vector<double>(kn.edge_count(), 1.0));
    for (int v = 1; v < n; ++v) closed_err = std::max(closed_err, std::abs(var[v] - 2.0 / n));
  }
  r.pass = ls_err <= kSmoothingTol && async_err <= kSmoothingTol && sync_err <= kSmoothingTol &&
           non_monotone == 0 && res_err <= kResistanceTol && closed_err <= kResistanceTol;
  r.summary = "max errors: LS " + g6(ls_err) + ", async " + g6(async_err) + ", sync " + g6(sync_err) +
              ", variance vs resistance " + g6(res_err) + ", closed forms " + g6(closed_err) +
              "; F increases " + std::to_string(non_monotone);
}

// ---------------------------------------------------------------- 8

void criterion_convergence(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  Pcg32 rng(seed);
  std::vector<std::pair<std::string, Graph>> graphs = {{"P10", Graph::path(10)},
                                                        {"C12", Graph::cycle(12)},
                                                        {"K6", Graph::complete(6)},
                                                        {"4x4 lattice", Graph::lattice(4)}};
  for (int k = 0; k < 5; ++k) {
    const int n = 6 + static_cast<int>(rng.below(7));
    graphs.emplace_back("random " + std::to_string(k + 1) + " (n=" + std::to_string(n) + ")",
                        random_connected_graph(rng, n, 0.35));
  }
  bool ok = true;
  double worst_rate = 0.0;
  r.detail.push_back("| graph | lower | rho(M) | upper | measured rate | rel. diff |");
  r.detail.push_back("|---|---|---|---|---|---|");
  for (const auto& [name, g] : graphs) {
    const auto b = clocks::cheeger_bounds(g);
    const double rho = clocks::smoothing_spectral_radius(g);
    std::vector<double> offsets(static_cast<std::size_t>(g.node_count()), 0.0);
    for (int v = 1; v < g.node_count(); ++v) offsets[v] = rng.uniform(-10.0, 10.0);
    clocks::SmoothingState st(g.node_count(), clocks::exact_measurements(g, offsets));
    const auto tr = clocks::smoothing_sync(st);
    const double rel = std::abs(tr.measured_rate - rho) / rho;
    worst_rate = std::max(worst_rate, rel);
    if (!(b.lower <= rho + kBoundSlack && rho <= b.upper + kBoundSlack) || rel > kRateAgreement) ok = false;
    r.detail.push_back("| " + name + " | " + fmt("%.6f", b.lower) + " | " + fmt("%.6f", rho) + " | " +
                       fmt("%.6f", b.upper) + " | " + fmt("%.6f", tr.measured_rate) + " | " + g6(rel) + " |");
  }
  std::vector<int> iters;
  std::vector<int> sizes;
  for (int side : {4, 8, 16}) {
    const Graph g = Graph::lattice(side);
    std::vector<double> offsets(static_cast<std::size_t>(g.node_count()), 0.0);
    for (int v = 1; v < g.node_count(); ++v) offsets[v] = rng.uniform(-10.0, 10.0);
    iters.push_back(clocks::settling_iterations(g, offsets, 1e-6));
    sizes.push_back(g.node_count());
  }
  const double c = static_cast<double>(iters[0]) / (static_cast<double>(sizes[0]) * sizes[0]);
  bool quadratic = true;
  std::string growth;
  for (std::size_t i = 0; i < iters.size(); ++i) {
    if (iters[i] > c * sizes[i] * static_cast<double>(sizes[i])) quadratic = false;
    growth += (i ? ", " : "") + std::to_string(sizes[i]) + ":" + std::to_string(iters[i]);
  }
  r.pass = ok && quadratic;
  r.summary = "bounds hold " + std::string(ok ? "everywhere" : "NOT everywhere") + ", worst rate mismatch " +
              fmt("%.2e", worst_rate) + "; lattice settling (n:iterations) " + growth + " within " +
              fmt("%.4f", c) + " n^2: " + (quadratic ? "yes" : "no");
}

// ---------------------------------------------------------------- 9

void criterion_counterexample(CriterionResult& r, const ReportOptions&, std::uint64_t) {
  using compute::CodingMode;
  const auto net = compute::counterexample_network();
  const auto f = compute::counterexample_sum();
  const double log3 = std::log2(3.0);
  const std::vector<double> uniform(f.size(), 1.0 / static_cast<double>(f.size()));

  // Cut sets S as node lists, expected edges leaving S and bound.
  struct Expect {
    std::vector<NodeId> subset;
    std::vector<int> edges;
    double wc;
    double avg;
  };
  const std::vector<Expect> expect = {
      {{1}, {0}, 1.0, 1.0}, {{2}, {1, 2}, 1.0, 1.0}, {{1, 2}, {0, 1}, log3, 1.5}};
  bool cuts_ok = true;
  for (CodingMode mode : {CodingMode::WorstCase, CodingMode::AverageCase}) {
    const auto cuts = mode == CodingMode::WorstCase ? compute::dag_cut_outer_bound(net, f, mode)
                                                    : compute::dag_cut_outer_bound(net, f, mode, uniform);
    if (cuts.size() != expect.size()) cuts_ok = false;
    for (const auto& e : expect) {
      const auto it = std::find_if(cuts.begin(), cuts.end(), [&](const auto& c) { return c.subset == e.subset; });
      const double want = mode == CodingMode::WorstCase ? e.wc : e.avg;
      if (it == cuts.end() || it->edges != e.edges || std::abs(it->bound - want) > kExactTol) cuts_ok = false;
    }
  }

  // Tree points against lambda in {0, 1} of the closed form; lambda = 1/2 in the hull.
  bool trees_ok = true;
  r.detail.push_back("| case | tree | R21 | R31 | R32 |");
  r.detail.push_back("|---|---|---|---|---|");
  for (CodingMode mode : {CodingMode::WorstCase, CodingMode::AverageCase}) {
    const bool wc = mode == CodingMode::WorstCase;
    const auto region = wc ? compute::tree_achievable_region(net, f, mode)
                           : compute::tree_achievable_region(net, f, mode, uniform);
    const double top = wc ? log3 : 1.5;
    auto closed = [&](double lam) { return std::vector<double>{lam + (1 - lam) * top, lam, 1 - lam}; };
    std::vector<std::vector<double>> want = {closed(0.0), closed(1.0)};
    if (region.points.size() != 2) trees_ok = false;
    for (const auto& w : want) {
      const bool found = std::any_of(region.points.begin(), region.points.end(), [&](const auto& p) {
        return std::abs(p[0] - w[0]) <= kExactTol && std::abs(p[1] - w[1]) <= kExactTol &&
               std::abs(p[2] - w[2]) <= kExactTol;
      });
      if (!found) trees_ok = false;
    }
    if (!compute::in_tree_hull(region, closed(0.5))) trees_ok = false;
    for (std::size_t t = 0; t < region.points.size(); ++t) {
      const auto& p = region.points[t];
      r.detail.push_back(std::string("| ") + (wc ? "worst" : "average") + " | " + std::to_string(t + 1) +
                         " | " + fmt("%.6f", p[0]) + " | " + fmt("%.6f", p[1]) + " | " + fmt("%.6f", p[2]) + " |");
    }
  }

  // The outer-bound vertex (1, log3 - 1, 2 - log3) meets every cut with equality.
  const auto wc_region = compute::tree_achievable_region(net, f, CodingMode::WorstCase);
  const std::vector<double> vertex = {1.0, log3 - 1.0, 2.0 - log3};
  const bool on_bound = compute::satisfies_cuts(compute::dag_cut_outer_bound(net, f, CodingMode::WorstCase), vertex);
  const bool excluded = !compute::in_tree_hull(wc_region, vertex) && !compute::in_tree_hull(wc_region, vertex, true);
  r.pass = cuts_ok && trees_ok && on_bound && excluded;
  r.summary = std::string("cut bounds ") + (cuts_ok ? "exact" : "MISMATCH") + ", tree points " +
              (trees_ok ? "match" : "MISMATCH") + ", outer-bound vertex (1, log2 3 - 1, 2 - log2 3) " +
              (on_bound && excluded ? "outside the tree hull" : "NOT separated");
}

// ---------------------------------------------------------------- 10

void criterion_boolean(CriterionResult& r, const ReportOptions&, std::uint64_t) {
  const double t22 = compute::threshold_complexity(2, 2);
  const bool t22_ok = std::abs(t22 - std::log2(3.0)) <= kExactTol;

  int fooling_bad = 0, fooling_cases = 0;
  for (int n = 1; n <= 5; ++n)
    for (int theta = 0; theta <= n; ++theta) {
      ++fooling_cases;
      const auto f = compute::FunctionTable::builtin("threshold:" + std::to_string(theta), n, 2);
      const auto res = compute::fooling_set_lower_bound(f);
      const double want = log2_binomial(n + 1, theta);
      if (!res.exact || std::abs(res.bound - want) > kExactTol || !compute::is_fooling_set(f, res.elements))
        ++fooling_bad;
    }

  int interval_bad = 0, interval_cases = 0;
  for (int n = 1; n <= 12; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = a; b <= n; ++b) {
        ++interval_cases;
        const auto ib = compute::interval_complexity_bounds(n, a, b);
        if (!(ib.lower <= ib.upper + kExactTol)) ++interval_bad;
      }

  // AND blocks: worst case over k zeros is attained by a transcript; outputs correct.
  Pcg32 rng(7);
  bool and_ok = true;
  std::vector<double> normalized;
  for (int N : {15, 63, 255}) {
    const long long worst = compute::and_worst_case_bits(N);
    long long seen = 0;
    for (int k = 0; k <= N; ++k) {
      std::vector<bool> x1(static_cast<std::size_t>(N), true), x2(static_cast<std::size_t>(N));
      for (int i = 0; i < k; ++i) x1[rng.below(static_cast<std::uint32_t>(N))] = false;
      for (int i = 0; i < N; ++i) x2[i] = rng.below(2) == 1;
      const auto tr = compute::and_block_protocol(x1, x2);
      for (int i = 0; i < N; ++i)
        if (tr.output1[i] != (x1[i] && x2[i]) || tr.output2[i] != (x1[i] && x2[i])) and_ok = false;
      seen = std::max(seen, static_cast<long long>(tr.total_bits()));
    }
    if (seen > worst) and_ok = false;
    normalized.push_back(static_cast<double>(worst) / N);
  }
  const double log3 = std::log2(3.0);
  const bool and_band = normalized.back() <= kAndBand * log3;
  bool and_limit = true;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (normalized[i] < log3 - kAndLimitSlack) and_limit = false;
    if (i && normalized[i] >= normalized[i - 1]) and_limit = false;
  }
  r.pass = t22_ok && fooling_bad == 0 && interval_bad == 0 && and_ok && and_band && and_limit;
  r.summary = "C(2,2) = " + fmt("%.12f", t22) + "; fooling sets " +
              std::to_string(fooling_cases - fooling_bad) + "/" + std::to_string(fooling_cases) +
              "; interval lower<=upper " + std::to_string(interval_cases - interval_bad) + "/" +
              std::to_string(interval_cases) + "; AND bits/N at 15,63,255: " + fmt("%.4f", normalized[0]) + ", " +
              fmt("%.4f", normalized[1]) + ", " + fmt("%.4f", normalized[2]) + " (limit " + fmt("%.4f", log3) + ")";
}

// ---------------------------------------------------------------- 11

struct RandomTreeCase {
  compute::Network net;
  compute::FunctionTable f;
};

RandomTreeCase random_tree_case(Pcg32& rng, int kind) {
  compute::Network net;
  net.n = 2 + static_cast<int>(rng.below(4));
  net.collector = 0;
  for (int v = 0; v < net.n; ++v) net.alphabet.push_back(1 + static_cast<int>(rng.below(3)));
  for (int v = 1; v < net.n; ++v) net.edges.emplace_back(v, static_cast<int>(rng.below(static_cast<std::uint32_t>(v))));
  std::vector<int> table;
  std::size_t size = 1;
  for (int a : net.alphabet) size *= static_cast<std::size_t>(a);
  for (std::size_t i = 0; i < size; ++i) table.push_back(static_cast<int>(rng.below(3)));
  compute::FunctionTable f;
  switch (kind % 4) {
    case 0: f = compute::FunctionTable(net.alphabet, table); break;
    case 1:
      f = compute::FunctionTable::from_callable(net.alphabet, [](std::span<const int> x) {
        return std::accumulate(x.begin(), x.end(), 0);
      });
      break;
    case 2:
      f = compute::FunctionTable::from_callable(net.alphabet, [](std::span<const int> x) {
        return *std::max_element(x.begin(), x.end());
      });
      break;
    default:
      f = compute::FunctionTable::from_callable(net.alphabet, [](std::span<const int> x) {
        return std::accumulate(x.begin(), x.end(), 0) % 2;
      });
  }
  return {net, f};
}

// A block of subtree assignments may share a codeword iff f agrees on them
// under every assignment of the other nodes.
bool block_feasible(const compute::FunctionTable& f, const compute::SubsetIndexer& sub,
                    const compute::SubsetIndexer& rest, const std::vector<std::size_t>& block) {
  if (block.size() < 2) return true;
  std::vector<int> x(static_cast<std::size_t>(f.arity()), 0);
  for (std::size_t z = 0; z < rest.size(); ++z) {
    rest.fill(z, x);
    sub.fill(block[0], x);
    const int v0 = f(x);
    for (std::size_t k = 1; k < block.size(); ++k) {
      sub.fill(block[k], x);
      if (f(x) != v0) return false;
    }
  }
  return true;
}

// Visits every partition of {0..m-1} as a restricted growth string.
void for_each_partition(int m, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::function<bool(int, int)> rec = [&](int i, int used) {
    if (i == m) return visit(a);
    for (int b = 0; b <= used && b < m; ++b) {
      a[i] = b;
      if (!rec(i + 1, std::max(used, b + 1))) return false;
    }
    return true;
  };
  rec(0, 0);
}

constexpr int kMaxBrutePartition = 8;

void criterion_tree_codes(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  Pcg32 rng(seed);
  int correct = 0, minimal = 0, collector_ok = 0;
  long long inputs = 0, partitions = 0;
  const int cases = 20;
  for (int t = 0; t < cases; ++t) {
    const auto tc = random_tree_case(rng, t);
    std::vector<double> p(tc.f.size());
    double z = 0.0;
    for (auto& v : p) z += (v = 0.05 + rng.uniform());
    for (auto& v : p) v /= z;

    bool ok = true;
    const auto wc = compute::tree_zero_error_codes(tc.net, tc.f, compute::CodingMode::WorstCase);
    const auto avg = compute::tree_zero_error_codes(tc.net, tc.f, compute::CodingMode::AverageCase, p);
    for (const auto* code : {&wc, &avg}) {
      const auto v = compute::verify_tree_protocol(tc.net, tc.f, *code);
      inputs += static_cast<long long>(v.checked);
      if (!v.ok || v.checked != tc.f.size()) ok = false;
    }
    if (ok) ++correct;

    // Collector-side reconstruction from the true subtree classes.
    bool direct = true;
    std::vector<int> x(static_cast<std::size_t>(tc.net.n)), y(x.size());
    for (std::size_t idx = 0; idx < tc.f.size(); ++idx) {
      tc.f.decode(idx, x);
      y = x;
      for (int e : tc.net.in_edges(tc.net.collector)) {
        const auto& ec = wc.edges[e];
        const compute::SubsetIndexer sub(ec.subtree, tc.net.alphabet);
        sub.fill(static_cast<std::size_t>(ec.representative[ec.class_of[sub.index(x)]]), y);
      }
      if (tc.f(y) != tc.f.at(idx)) direct = false;
    }
    if (direct) ++collector_ok;

    bool is_min = true;
    for (const auto& ec : wc.edges) {
      const compute::SubsetIndexer sub(ec.subtree, tc.net.alphabet);
      std::vector<NodeId> others;
      for (int v = 0; v < tc.net.n; ++v)
        if (!std::binary_search(ec.subtree.begin(), ec.subtree.end(), v)) others.push_back(v);
      const compute::SubsetIndexer rest(others, tc.net.alphabet);
      std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(ec.class_count));
      for (std::size_t a = 0; a < sub.size(); ++a) members[ec.class_of[a]].push_back(a);
      for (const auto& m : members)
        if (!block_feasible(tc.f, sub, rest, m)) is_min = false;
      auto merged_feasible = [&](const std::vector<int>& blocks) {
        const int nb = *std::max_element(blocks.begin(), blocks.end()) + 1;
        if (nb == ec.class_count) return false;  // not coarser
        std::vector<std::vector<std::size_t>> bl(static_cast<std::size_t>(nb));
        for (int c = 0; c < ec.class_count; ++c) bl[blocks[c]].insert(bl[blocks[c]].end(), members[c].begin(), members[c].end());
        for (const auto& b : bl)
          if (!block_feasible(tc.f, sub, rest, b)) return false;
        return true;
      };
      if (ec.class_count <= kMaxBrutePartition) {
        for_each_partition(ec.class_count, [&](const std::vector<int>& blocks) {
          ++partitions;
          if (merged_feasible(blocks)) {
            is_min = false;
            return false;
          }
          return true;
        });
      } else {
        // A coarser feasible partition would contain a feasible merge of two classes.
        for (int a = 0; a < ec.class_count && is_min; ++a)
          for (int b = a + 1; b < ec.class_count && is_min; ++b) {
            ++partitions;
            std::vector<int> blocks(static_cast<std::size_t>(ec.class_count));
            for (int c = 0, next = 0; c < ec.class_count; ++c) blocks[c] = c == b ? blocks[a] : next++;
            if (merged_feasible(blocks)) is_min = false;
          }
      }
    }
    if (is_min) ++minimal;
  }
  r.pass = correct == cases && collector_ok == cases && minimal == cases;
  r.summary = "zero-error " + std::to_string(correct) + "/20 (" + std::to_string(inputs) +
              " joint inputs, both modes), collector reconstruction " + std::to_string(collector_ok) +
              "/20, minimal " + std::to_string(minimal) + "/20 (" + std::to_string(partitions) +
              " coarser partitions checked)";
}

// ---------------------------------------------------------------- 12

void criterion_histogram(CriterionResult& r, const ReportOptions&, std::uint64_t seed) {
  const auto t0 = Clock::now();
  bool ok = true;
  std::vector<double> ratios;
  r.detail.push_back("| n | placements tried | max degree | cap | depth | slots/block | slots/block / ln n |");
  r.detail.push_back("|---|---|---|---|---|---|---|");
  for (int n : {64, 256, 1024}) {
    const double range = rgg::critical_range(n, 4.0);
    const int cap = compute::histogram_degree_cap(n, range);
    std::optional<compute::HistogramResult> res;
    int attempt = 0;
    for (; attempt < kHistogramAttempts && !res; ++attempt) {
      const auto placement = rgg::place_uniform(n, Domain::UnitSquare, sub_seed(seed, n + attempt));
      if (!is_connected(rgg::build_range_graph(placement, range))) continue;
      compute::HistogramOptions opts;
      opts.blocks = kHistogramBlocks;
      opts.seed = sub_seed(seed, 7 * n + attempt);
      auto h = compute::histogram_aggregation(placement, range, opts);
      if (h.max_degree > cap) continue;
      res = h;
    }
    if (!res) {
      ok = false;
      r.detail.push_back("| " + std::to_string(n) + " | " + std::to_string(attempt) + " | no valid placement |||||");
      continue;
    }
    if (!res->all_correct) ok = false;
    const double ratio = res->slots_per_block / std::log(static_cast<double>(n));
    ratios.push_back(ratio);
    r.detail.push_back("| " + std::to_string(n) + " | " + std::to_string(attempt) + " | " +
                       std::to_string(res->max_degree) + " | " + std::to_string(cap) + " | " +
                       std::to_string(res->tree_depth) + " | " + fmt("%.2f", res->slots_per_block) + " | " +
                       fmt("%.3f", ratio) + " |");
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  double band = INFINITY;
  if (ratios.size() == 3) band = *std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end());
  r.pass = ok && band <= kHistogramBand && secs < kHistogramSeconds;
  r.summary = std::string("collector output ") + (ok ? "correct for every block" : "WRONG or missing") +
              ", band max/min " + fmt("%.3f", band) + ", " + fmt("%.1f", secs) + " s";
}

struct Entry {
  const char* title;
  void (*run)(CriterionResult&, const ReportOptions&, std::uint64_t);
};

constexpr Entry kEntries[kCriterionCount] = {
    {"Range-graph connectivity threshold", criterion_range},
    {"k-nearest-neighbor connectivity", criterion_knn},
    {"Erdos-Renyi connectivity threshold", criterion_er},
    {"Capacity scaling of the cell scheme", criterion_capacity},
    {"Pairwise clock estimators", criterion_clock_estimators},
    {"Offset uncertainty in networks", criterion_network_impossibility},
    {"Least squares and smoothing", criterion_least_squares},
    {"Smoothing convergence bounds", criterion_convergence},
    {"Arithmetic-sum rate region on a DAG", criterion_counterexample},
    {"Boolean function complexity", criterion_boolean},
    {"Zero-error tree coding", criterion_tree_codes},
    {"Histogram aggregation", criterion_histogram},
};

}  // namespace

CriterionResult run_criterion(int id, const ReportOptions& options) {
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("run_criterion: id must be in 1..12");
  const auto& entry = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = entry.title;
  const auto t0 = Clock::now();
  try {
    entry.run(r, options, options.seed + 1000ULL * static_cast<std::uint64_t>(id));
  } catch (const std::exception& e) {
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_all(const ReportOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string status_line(const CriterionResult& result) {
  return std::string(result.pass ? "PASS" : "FAIL") + " [" + std::to_string(result.id) + "] " + result.title +
         ": " + result.summary;
}

std::string to_markdown(const std::vector<CriterionResult>& results, const ReportOptions& options) {
  std::ostringstream out;
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  out << "# Acceptance report\n\n";
  out << "Seed " << options.seed << ". " << passed << " of " << results.size() << " criteria pass.\n\n";
  out << "| # | criterion | result | time (s) |\n|---|---|---|---|\n";
  for (const auto& r : results)
    out << "| " << r.id << " | " << r.title << " | " << (r.pass ? "PASS" : "FAIL") << " | " << fmt("%.1f", r.seconds)
        << " |\n";
  for (const auto& r : results) {
    out << "\n## " << r.id << ". " << r.title << " (" << (r.pass ? "PASS" : "FAIL") << ")\n\n" << r.summary << "\n";
    if (!r.detail.empty()) {
      out << "\n";
      for (const auto& line : r.detail) out << line << "\n";
    }
  }
  return out.str();
}

}  // namespace sensornet::tools

#include <benchmark/benchmark.h>

#include <cmath>

#include "sensornet/capacity.hpp"
#include "sensornet/clocks.hpp"
#include "sensornet/linalg.hpp"
#include "sensornet/lp.hpp"
#include "sensornet/random.hpp"
#include "sensornet/rgg.hpp"

using namespace sensornet;

static void BM_RangeGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pl = rgg::place_uniform(n, Domain::UnitAreaDisk, 1);
  const double r = rgg::critical_range(n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(rgg::build_range_graph(pl, r));
  state.SetComplexityN(n);
}
BENCHMARK(BM_RangeGraph)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_KnnGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pl = rgg::place_uniform(n, Domain::UnitAreaDisk, 2);
  const int k = static_cast<int>(std::ceil(2.0 * std::log(n)));
  for (auto _ : state) benchmark::DoNotOptimize(rgg::build_knn_graph(pl, k));
  state.SetComplexityN(n);
}
BENCHMARK(BM_KnnGraph)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_ConnectivityTrial(benchmark::State& state) {
  const double r = rgg::critical_range(1000, 0.0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rgg::connectivity_probability(rgg::Model::Range, 1000, r, 1, ++seed));
}
BENCHMARK(BM_ConnectivityTrial);

static void BM_Cholesky(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // Reduced Laplacian of a lattice: the matrix least-squares offsets solve.
  const int side = static_cast<int>(std::sqrt(static_cast<double>(n + 1)));
  const auto g = Graph::lattice(side);
  const auto m = clocks::reduced_laplacian(g.node_count(), clocks::exact_measurements(g, std::vector<double>(g.node_count(), 0.0)));
  for (auto _ : state) benchmark::DoNotOptimize(cholesky(m));
  state.SetComplexityN(static_cast<long long>(m.rows()));
}
BENCHMARK(BM_Cholesky)->Arg(64)->Arg(256)->Arg(1024)->Complexity(benchmark::oNCubed);

static void BM_Simplex(benchmark::State& state) {
  const int vars = static_cast<int>(state.range(0));
  Pcg32 rng(5);
  LinearProgram lp(static_cast<std::size_t>(vars));
  for (auto& c : lp.objective) c = rng.uniform(0.0, 1.0);
  for (int row = 0; row < 2 * vars; ++row) {
    std::vector<double> a(static_cast<std::size_t>(vars));
    for (auto& x : a) x = rng.uniform(0.0, 1.0);
    lp.add(std::move(a), RowSense::LessEqual, rng.uniform(1.0, 2.0));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp_solve(lp, Optimize::Maximize));
}
BENCHMARK(BM_Simplex)->Arg(10)->Arg(40)->Arg(100);

static void BM_CellScheme(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pl = rgg::place_uniform(n, Domain::UnitSquare, 3);
  const auto od = capacity::random_od_pairs(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(capacity::build_cell_scheme(pl, od, 1.5, {}));
}
BENCHMARK(BM_CellScheme)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_SimulateThroughput(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto scheme =
      capacity::build_cell_scheme(rgg::place_uniform(n, Domain::UnitSquare, 3), capacity::random_od_pairs(n, 4), 1.5, {});
  capacity::SimulationOptions opt;
  opt.rounds = 200;
  for (auto _ : state) benchmark::DoNotOptimize(capacity::simulate_throughput(scheme, {}, opt));
}
BENCHMARK(BM_SimulateThroughput)->Arg(256)->Arg(1024);
BENCHMARK_MAIN();

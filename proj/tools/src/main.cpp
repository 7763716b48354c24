#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "sensornet/errors.hpp"
#include "sensornet_tools/experiments.hpp"
#include "sensornet_tools/output.hpp"
#include "sensornet_tools/report.hpp"

namespace {

using namespace sensornet;
using namespace sensornet::tools;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  int threads = 1;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_atomic(g.out, text);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor network experiments: connectivity, capacity, clock synchronization and in-network computation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags override it");

  Globals g;
  app.add_option("--seed", g.seed, "Base seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (written atomically); stdout when omitted");
  app.add_option("--threads", g.threads, "Worker threads for independent trials")->check(CLI::Range(1, 256))->capture_default_str();

  ConnectivityConfig conn;
  auto* c_conn = app.add_subcommand("connectivity", "Monte Carlo connectivity probability over a parameter grid");
  c_conn->add_option("--model", conn.model, "range | knn | er")->check(CLI::IsMember({"range", "knn", "er"}))->capture_default_str();
  c_conn->add_option("--n", conn.n, "Nodes")->check(CLI::Range(1, 10000000))->capture_default_str();
  c_conn->add_option("--c-grid,--k-grid,--grid", conn.grid, "a:b:s or comma list; c for range/er, k for knn")->capture_default_str();
  c_conn->add_option("--param", conn.param, "Single r (range), k (knn) or p (er); overrides the grid");
  c_conn->add_option("--trials", conn.trials, "Trials per grid value")->check(CLI::Range(1, 100000000))->capture_default_str();
  c_conn->add_option("--domain", conn.domain, "disk | square")->check(CLI::IsMember({"disk", "square"}))->capture_default_str();

  CapacityConfig cap;
  auto* c_cap = app.add_subcommand("capacity", "Cell relay scheme throughput on random placements");
  c_cap->add_option("--n-grid", cap.n_grid, "Node counts")->capture_default_str();
  c_cap->add_option("--kappa", cap.kappa, "Cell area factor, side = sqrt(kappa ln n / n)")->check(CLI::Range(1.0, 1e6))->capture_default_str();
  c_cap->add_option("--delta", cap.delta, "Protocol-model guard factor")->check(CLI::PositiveNumber)->capture_default_str();
  c_cap->add_option("--W", cap.W, "Link rate, bits/s")->check(CLI::PositiveNumber)->capture_default_str();
  c_cap->add_option("--rounds", cap.rounds, "Measured frames")->check(CLI::Range(1, 100000000))->capture_default_str();
  c_cap->add_option("--warmup", cap.warmup, "Frames before measurement")->check(CLI::Range(0, 100000000))->capture_default_str();
  c_cap->add_flag("--physical", cap.physical, "Also require the SINR condition");
  c_cap->add_option("--alpha", cap.alpha, "Path-loss exponent")->capture_default_str();
  c_cap->add_option("--beta", cap.beta, "SINR threshold")->capture_default_str();
  c_cap->add_option("--noise", cap.noise, "Noise power")->capture_default_str();
  c_cap->add_option("--p-ind,--power", cap.power, "Transmit power")->capture_default_str();
  c_cap->add_flag("--literal-eq1", cap.literal_eq1, "Interference sum without the interferers' powers");

  ClocksConfig clk;
  auto* c_clk = app.add_subcommand("clocks", "Clock offset and skew estimation");
  c_clk->add_option("--op", clk.op, "estimators | polyhedron | smoothing")
      ->check(CLI::IsMember({"estimators", "polyhedron", "smoothing"}))->capture_default_str();
  c_clk->add_option("--worlds", clk.worlds, "Random worlds")->check(CLI::Range(1, 10000000))->capture_default_str();
  c_clk->add_option("--graph", clk.graph, "path | cycle | complete | lattice | random")
      ->check(CLI::IsMember({"path", "cycle", "complete", "lattice", "random"}))->capture_default_str();
  c_clk->add_option("--size", clk.size, "Nodes (side length for lattice)")->check(CLI::Range(1, 100000))->capture_default_str();
  c_clk->add_option("--eps", clk.eps, "Settling tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  ComputeConfig cmp;
  auto* c_cmp = app.add_subcommand("compute", "In-network function computation");
  c_cmp->add_option("--op", cmp.op, "Operation")
      ->check(CLI::IsMember({"classify", "tree-code", "dag-bounds", "parity", "histogram", "fooling", "threshold",
                             "interval", "and-block"}))
      ->required();
  c_cmp->add_option("--function", cmp.function, "max|min|parity|sum|and|constant|threshold:t|interval:a:b")->capture_default_str();
  c_cmp->add_option("--table", cmp.table, "Function table file (lines 'x1 x2 ... -> v')");
  c_cmp->add_option("--n", cmp.n, "Arguments")->check(CLI::Range(0, 100000))->capture_default_str();
  c_cmp->add_option("--q", cmp.q, "Alphabet size")->check(CLI::Range(1, 1000))->capture_default_str();
  c_cmp->add_option("--theta", cmp.theta, "Threshold")->capture_default_str();
  c_cmp->add_option("--a", cmp.a, "Interval start")->capture_default_str();
  c_cmp->add_option("--b", cmp.b, "Interval end")->capture_default_str();
  c_cmp->add_option("--N", cmp.N, "Block length")->capture_default_str();
  c_cmp->add_option("--gamma", cmp.gamma, "Type-sensitivity fraction")->capture_default_str();
  c_cmp->add_option("--mode", cmp.mode, "worst | average")->check(CLI::IsMember({"worst", "average"}))->capture_default_str();
  c_cmp->add_option("--edges", cmp.edges, "Network edges 'u>v,...' toward collector 0");
  c_cmp->add_option("--alphabet", cmp.alphabet, "Per-node alphabet sizes '1,2,2'");
  c_cmp->add_option("--x1", cmp.x1, "and-block: bits of node 1");
  c_cmp->add_option("--x2", cmp.x2, "and-block: bits of node 2");
  c_cmp->add_option("--n-grid", cmp.n_grid, "histogram: node counts")->capture_default_str();
  c_cmp->add_option("--blocks", cmp.blocks, "histogram: blocks")->check(CLI::Range(1, 1000000))->capture_default_str();
  c_cmp->add_option("--c", cmp.c, "histogram: range offset c in critical_range(n, c)")->capture_default_str();

  int criterion = 0;
  auto* c_rep = app.add_subcommand("report", "Run the acceptance suite and write a markdown summary");
  c_rep->add_option("--criterion", criterion, "Run a single criterion (1-12)")->check(CLI::Range(0, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_conn) {
      emit(g, run_connectivity(conn, g.seed, g.threads).str());
    } else if (*c_cap) {
      emit(g, run_capacity(cap, g.seed).str());
    } else if (*c_clk) {
      const auto out = run_clocks(clk, g.seed);
      emit(g, out.is_csv ? out.csv.str() : dump(out.json));
    } else if (*c_cmp) {
      const auto out = run_compute(cmp, g.seed);
      emit(g, out.is_csv ? out.csv.str() : dump(out.json));
    } else if (*c_rep) {
      ReportOptions ro;
      ro.seed = app.get_option("--seed")->count() ? g.seed : ReportOptions{}.seed;
      ro.threads = g.threads;
      std::vector<CriterionResult> results;
      if (criterion > 0)
        results.push_back(run_criterion(criterion, ro));
      else
        for (int id = 1; id <= kCriterionCount; ++id) {
          results.push_back(run_criterion(id, ro));
          std::cerr << status_line(results.back()) << "\n";
        }
      emit(g, to_markdown(results, ro));
      for (const auto& r : results)
        if (!r.pass) return 1;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "sensornet_tools/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "sensornet/boolean_complexity.hpp"
#include "sensornet/capacity.hpp"
#include "sensornet/clocks.hpp"
#include "sensornet/dag.hpp"
#include "sensornet/errors.hpp"
#include "sensornet/function_table.hpp"
#include "sensornet/histogram.hpp"
#include "sensornet/random.hpp"
#include "sensornet/rgg.hpp"
#include "sensornet/symmetric.hpp"
#include "sensornet/tree_codes.hpp"

namespace sensornet::tools {
namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

std::string num(double v) { return format_number(v); }
std::string num(long long v) { return format_number(v); }
std::string num(int v) { return format_number(static_cast<long long>(v)); }

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidArgument("grid must be a:b:s");
    const double a = to_double(parts[0]), b = to_double(parts[1]), s = to_double(parts[2]);
    if (!(s > 0.0) || b < a) throw InvalidArgument("grid needs s > 0 and b >= a");
    const long long steps = static_cast<long long>(std::floor((b - a) / s + 1e-9));
    if (steps > 100000) throw InvalidArgument("grid too long");
    for (long long k = 0; k <= steps; ++k) out.push_back(a + static_cast<double>(k) * s);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(to_double(p));
  }
  if (out.empty()) throw InvalidArgument("empty grid");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    if (v != std::floor(v)) throw InvalidArgument("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// ---------------------------------------------------------------- connectivity

ParameterMap ConnectivityConfig::params() const {
  ParameterMap m = {{"command", "connectivity"}, {"model", model}, {"n", num(n)},
                    {"grid", grid}, {"trials", num(trials)}, {"domain", domain}};
  if (param) m["param"] = num(*param);
  return m;
}

CsvTable run_connectivity(const ConnectivityConfig& config, std::uint64_t seed, int threads) {
  const auto model = rgg::parse_model(config.model);
  rgg::ConnectivityOptions opts;
  opts.domain = parse_domain(config.domain);
  opts.threads = threads;
  const std::string hash = config_hash(config.params());
  CsvTable table({"model", "n", "param", "c", "trials", "successes", "p_hat", "ci_low", "ci_high", "seed",
                  "config_hash"});
  auto add = [&](double x, const std::string& c) {
    const auto est = rgg::connectivity_probability(model, config.n, x, config.trials, seed, opts);
    table.add_row({config.model, num(config.n), num(x), c, num(est.trials), num(est.successes), num(est.p_hat),
                   num(est.ci_low), num(est.ci_high), std::to_string(seed), hash});
  };
  if (config.param) {
    add(*config.param, "");
    return table;
  }
  for (double g : parse_grid(config.grid)) {
    if (model == rgg::Model::Range)
      add(rgg::critical_range(config.n, g), num(g));
    else if (model == rgg::Model::ErdosRenyi)
      add(rgg::critical_probability(config.n, g), num(g));
    else
      add(g, "");
  }
  return table;
}

// ---------------------------------------------------------------- capacity

ParameterMap CapacityConfig::params() const {
  ParameterMap m = {{"command", "capacity"}, {"n_grid", n_grid},  {"kappa", num(kappa)},
                    {"delta", num(delta)},   {"W", num(W)},         {"rounds", num(rounds)},
                    {"warmup", num(warmup)}, {"physical", physical ? "1" : "0"}};
  if (physical) {
    m["alpha"] = num(alpha);
    m["beta"] = num(beta);
    m["noise"] = num(noise);
    m["power"] = num(power);
    m["literal_eq1"] = literal_eq1 ? "1" : "0";
  }
  return m;
}

CsvTable run_capacity(const CapacityConfig& config, std::uint64_t seed) {
  capacity::ProtocolParams pp;
  pp.delta = config.delta;
  pp.W = config.W;
  pp.validate();
  capacity::SimulationOptions sim;
  sim.rounds = config.rounds;
  sim.warmup_rounds = config.warmup;
  if (config.physical) {
    capacity::PhysicalParams ph;
    ph.alpha = config.alpha;
    ph.beta = config.beta;
    ph.noise = config.noise;
    ph.p_ind = config.power;
    ph.literal_unweighted = config.literal_eq1;
    ph.validate();
    sim.physical = ph;
  }
  const std::string hash = config_hash(config.params());
  CsvTable table({"n", "model", "lambda_hat", "lambda_hat_scaled", "transport_capacity", "upper_bound", "colors",
                  "kappa", "seed", "config_hash", "cells_per_side", "reuse_distance", "slots", "protocol_violations",
                  "physical_failures"});
  for (int n : parse_int_list(config.n_grid)) {
    const auto placement = rgg::place_uniform(n, Domain::UnitSquare, mix(seed, 2 * static_cast<std::uint64_t>(n)));
    const auto od = capacity::random_od_pairs(n, mix(seed, 2 * static_cast<std::uint64_t>(n) + 1));
    const auto scheme = capacity::build_cell_scheme(placement, od, config.kappa, pp);
    const auto res = capacity::simulate_throughput(scheme, pp, sim);
    const double scaled = n > 1 ? res.lambda_hat * std::sqrt(n * std::log(static_cast<double>(n))) / pp.W : 0.0;
    table.add_row({num(n), config.physical ? "physical" : "protocol", num(res.lambda_hat), num(scaled),
                   num(capacity::transport_capacity(res.log)), num(capacity::protocol_upper_bound(n, 1.0, pp)),
                   num(res.colors), num(config.kappa), std::to_string(seed), hash, num(scheme.cells_per_side),
                   num(scheme.reuse_distance), num(res.slots), num(res.protocol_violations),
                   num(res.physical_failures)});
  }
  return table;
}

// ---------------------------------------------------------------- clocks

ParameterMap ClocksConfig::params() const {
  return {{"command", "clocks"}, {"op", op},          {"worlds", num(worlds)},
          {"graph", graph},      {"size", num(size)}, {"eps", num(eps)}};
}

namespace {

Graph named_graph(const std::string& name, int size, std::uint64_t seed) {
  if (name == "path") return Graph::path(size);
  if (name == "cycle") return Graph::cycle(size);
  if (name == "complete") return Graph::complete(size);
  if (name == "lattice") return Graph::lattice(size);
  if (name == "random") {
    Pcg32 rng(seed);
    for (;;) {
      std::vector<Edge> edges;
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
          if (rng.uniform() < 0.35) edges.emplace_back(i, j);
      Graph g(size, edges);
      if (is_connected(g)) return g;
    }
  }
  throw InvalidArgument("unknown graph '" + name + "' (expected path|cycle|complete|lattice|random)");
}

}  // namespace

ClocksOutput run_clocks(const ClocksConfig& config, std::uint64_t seed) {
  detail::require(config.worlds >= 1, "clocks: worlds must be at least 1");
  const std::string hash = config_hash(config.params());
  ClocksOutput out;
  if (config.op == "estimators") {
    out.csv = CsvTable({"config_hash", "seed", "world", "skew_true", "skew_hat", "roundtrip_true", "roundtrip_hat",
                        "offset_true", "interval_lo", "interval_hi"});
    const Graph pair = Graph::path(2);
    for (int w = 0; w < config.worlds; ++w) {
      const auto world = clocks::random_world(pair, mix(seed, static_cast<std::uint64_t>(w)));
      const auto log = clocks::standard_exchange(world);
      std::vector<const clocks::PacketRecord*> fwd, back;
      for (const auto& p : log) (p.i == 0 ? fwd : back).push_back(&p);
      const double a01 = clocks::estimate_relative_skew(*fwd[0], *fwd[1]);
      const double a10 = clocks::estimate_relative_skew(*back[0], *back[1]);
      const double rt = clocks::roundtrip_delay(clocks::find_pingpong(log, 0, 1), a01, a10);
      const auto iv = clocks::offset_uncertainty_interval(log, 1, true);
      out.csv.add_row({hash, std::to_string(seed), num(w), num(world.clocks[1].a), num(a01),
                       num(world.delays.at({0, 1}) + world.delays.at({1, 0})), num(rt), num(world.clocks[1].b),
                       num(iv.lo), num(iv.hi)});
    }
  } else if (config.op == "polyhedron") {
    out.csv = CsvTable({"config_hash", "seed", "world", "n", "links", "contains_truth", "interior_margin",
                        "offset1_lo", "offset1_hi"});
    const Graph g = named_graph(config.graph, config.size, seed);
    for (int w = 0; w < config.worlds; ++w) {
      const auto world = clocks::random_world(g, mix(seed, static_cast<std::uint64_t>(w)));
      const auto poly = clocks::offset_uncertainty_polyhedron(g.node_count(), clocks::standard_exchange(world));
      std::vector<double> b;
      for (const auto& c : world.clocks) b.push_back(c.b);
      const auto [lo, hi] = g.node_count() > 1 ? poly.offset_range(1) : std::pair<double, double>{0.0, 0.0};
      out.csv.add_row({hash, std::to_string(seed), num(w), num(g.node_count()),
                       num(static_cast<long long>(poly.rows().size())), poly.contains(b) ? "1" : "0",
                       num(poly.interior_margin()), num(lo), num(hi)});
    }
  } else if (config.op == "smoothing") {
    out.is_csv = false;
    const Graph g = named_graph(config.graph, config.size, seed);
    Pcg32 rng(mix(seed, 1));
    std::vector<double> offsets(static_cast<std::size_t>(g.node_count()), 0.0);
    for (std::size_t v = 1; v < offsets.size(); ++v) offsets[v] = rng.uniform(-10.0, 10.0);
    const auto bounds = clocks::cheeger_bounds(g);
    clocks::SmoothingState st(g.node_count(), clocks::exact_measurements(g, offsets));
    const auto tr = clocks::smoothing_sync(st);
    out.json = {{"config_hash", hash},
                {"seed", seed},
                {"graph", config.graph},
                {"nodes", g.node_count()},
                {"edges", g.edge_count()},
                {"rho", clocks::smoothing_spectral_radius(g)},
                {"lower_bound", bounds.lower},
                {"upper_bound", bounds.upper},
                {"edge_connectivity", bounds.kappa},
                {"measured_rate", tr.measured_rate},
                {"iterations", tr.iterations},
                {"settling_iterations", clocks::settling_iterations(g, offsets, config.eps)},
                {"variance", clocks::estimator_variance(g, std::vector<double>(g.edge_count(), 1.0))}};
  } else {
    throw InvalidArgument("unknown clocks op '" + config.op + "' (expected estimators|polyhedron|smoothing)");
  }
  return out;
}

// ---------------------------------------------------------------- compute

ParameterMap ComputeConfig::params() const {
  return {{"command", "compute"}, {"op", op},         {"function", function}, {"table", table},
          {"n", num(n)},          {"q", num(q)},      {"theta", num(theta)},  {"a", num(a)},
          {"b", num(b)},          {"N", num(N)},      {"gamma", num(gamma)},  {"mode", mode},
          {"edges", edges},       {"alphabet", alphabet}, {"x1", x1},         {"x2", x2},
          {"n_grid", n_grid},     {"blocks", num(blocks)}, {"c", num(c)}};
}

namespace {

compute::FunctionTable load_function(const ComputeConfig& config) {
  if (!config.table.empty()) {
    std::ifstream in(config.table);
    if (!in) throw InvalidArgument("cannot open table file '" + config.table + "'");
    return compute::FunctionTable::parse(in);
  }
  return compute::FunctionTable::builtin(config.function, config.n, config.q);
}

compute::CodingMode parse_mode(const std::string& text) {
  if (text == "worst") return compute::CodingMode::WorstCase;
  if (text == "average") return compute::CodingMode::AverageCase;
  throw InvalidArgument("unknown mode '" + text + "' (expected worst|average)");
}

std::vector<int> parse_int_list_unsorted(const std::string& text) {
  std::vector<int> out;
  for (const auto& p : split(text, ',')) {
    const double v = to_double(p);
    if (v != std::floor(v)) throw InvalidArgument("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

compute::Network load_network(const ComputeConfig& config, bool tree) {
  compute::Network net;
  if (config.edges.empty()) {
    net = compute::counterexample_network();
    if (tree) net.edges = {{1, 0}, {2, 1}};
  } else {
    int n = 0;
    for (const auto& e : split(config.edges, ',')) {
      const auto pos = e.find('>');
      if (pos == std::string::npos) throw InvalidArgument("edge '" + e + "' must read u>v");
      const int u = static_cast<int>(to_double(e.substr(0, pos)));
      const int v = static_cast<int>(to_double(e.substr(pos + 1)));
      net.edges.emplace_back(u, v);
      n = std::max({n, u + 1, v + 1});
    }
    net.n = n;
    net.collector = 0;
    if (config.alphabet.empty())
      net.alphabet.assign(static_cast<std::size_t>(n), config.q);
    else
      net.alphabet = parse_int_list_unsorted(config.alphabet);
  }
  net.validate();
  return net;
}

// A builtin over mixed alphabets: the common-alphabet table restricted to the
// node alphabets.
compute::FunctionTable network_function(const ComputeConfig& config, const compute::Network& net) {
  if (!config.table.empty()) return load_function(config);
  if (config.edges.empty() && config.function == "sum") return compute::counterexample_sum();
  const int q = *std::max_element(net.alphabet.begin(), net.alphabet.end());
  const auto full = compute::FunctionTable::builtin(config.function, net.n, q);
  return compute::FunctionTable::from_callable(net.alphabet, [&](std::span<const int> x) { return full(x); });
}

std::optional<std::vector<double>> uniform_if_average(compute::CodingMode mode, const compute::FunctionTable& f) {
  if (mode == compute::CodingMode::WorstCase) return std::nullopt;
  return std::vector<double>(f.size(), 1.0 / static_cast<double>(f.size()));
}

json edges_json(const compute::Network& net) {
  json e = json::array();
  for (const auto& [u, v] : net.edges) e.push_back({u, v});
  return e;
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> out;
  for (char c : text) {
    if (c != '0' && c != '1') throw InvalidArgument("bit strings may only contain 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

std::string bits_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

json op_classify(const ComputeConfig& config) {
  const auto f = load_function(config);
  json out = {{"arity", f.arity()}, {"alphabet", f.alphabet_sizes()}, {"range", f.range()},
              {"symmetric", f.is_symmetric()}};
  if (!f.is_symmetric()) return out;
  const int n = f.arity();
  const int q = f.alphabet_sizes().empty() ? 1 : f.alphabet_sizes()[0];
  // Smallest threshold vector (by sum, then lexicographic) within {0..n}^q.
  std::size_t combos = 1;
  for (int k = 0; k < q; ++k) combos *= static_cast<std::size_t>(n + 1);
  json theta = nullptr;
  if (combos * f.size() <= 50000000) {
    std::vector<int> best;
    int best_sum = -1;
    std::vector<int> t(static_cast<std::size_t>(q), 0);
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t c = code;
      int sum = 0;
      for (int k = q - 1; k >= 0; --k) {
        t[k] = static_cast<int>(c % static_cast<std::size_t>(n + 1));
        c /= static_cast<std::size_t>(n + 1);
        sum += t[k];
      }
      if (best_sum >= 0 && sum >= best_sum) continue;
      if (compute::is_type_threshold(f, t)) {
        best = t;
        best_sum = sum;
      }
    }
    theta = best;
  }
  out["type_threshold"] = theta;
  try {
    out["type_sensitive"] = compute::is_type_sensitive(f, config.gamma);
    out["gamma"] = config.gamma;
  } catch (const ResourceLimit&) {
    out["type_sensitive"] = nullptr;
  }
  return out;
}

json op_tree_code(const ComputeConfig& config) {
  const auto net = load_network(config, true);
  const auto f = network_function(config, net);
  const auto mode = parse_mode(config.mode);
  const auto code = compute::tree_zero_error_codes(net, f, mode, uniform_if_average(mode, f));
  const auto check = compute::verify_tree_protocol(net, f, code);
  json edges = json::array();
  for (const auto& ec : code.edges)
    edges.push_back({{"edge", {ec.edge.first, ec.edge.second}},
                     {"subtree", ec.subtree},
                     {"classes", ec.class_count},
                     {"class_of", ec.class_of},
                     {"codewords", ec.codewords},
                     {"rate", ec.rate}});
  return {{"mode", config.mode}, {"edges", edges}, {"rates", code.rates},
          {"verified", check.ok}, {"inputs_checked", check.checked}};
}

json op_dag_bounds(const ComputeConfig& config) {
  const auto net = load_network(config, false);
  const auto f = network_function(config, net);
  const auto mode = parse_mode(config.mode);
  const auto p = uniform_if_average(mode, f);
  json cuts = json::array();
  for (const auto& c : compute::dag_cut_outer_bound(net, f, mode, p))
    cuts.push_back({{"subset", c.subset}, {"edges", c.edges}, {"bound", c.bound}});
  const auto region = compute::tree_achievable_region(net, f, mode, p);
  return {{"mode", config.mode}, {"network_edges", edges_json(net)}, {"cuts", cuts},
          {"tree_points", region.points}, {"trees", region.trees}};
}

json op_parity(const ComputeConfig& config, std::uint64_t seed) {
  const auto net = load_network(config, false);
  detail::require(config.N >= 1, "parity: N must be at least 1");
  Pcg32 rng(seed);
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(net.n));
  std::vector<int> expected(static_cast<std::size_t>(config.N), 0);
  for (int v = 0; v < net.n; ++v) {
    if (net.alphabet[v] <= 1) continue;
    for (int k = 0; k < config.N; ++k) {
      const int s = static_cast<int>(rng.below(static_cast<std::uint32_t>(config.q)));
      blocks[v].push_back(s);
      expected[k] = (expected[k] + s) % config.q;
    }
  }
  std::vector<std::vector<double>> split_fr(static_cast<std::size_t>(net.n));
  for (int v = 0; v < net.n; ++v) {
    const auto out = net.out_edges(v);
    split_fr[v].assign(out.size(), out.empty() ? 0.0 : 1.0 / static_cast<double>(out.size()));
  }
  const auto res = compute::dag_parity_scheme(net, blocks, split_fr, config.q);
  return {{"network_edges", edges_json(net)}, {"N", config.N}, {"q", config.q},
          {"edge_symbols", res.edge_symbols}, {"rates", res.rates}, {"correct", res.output == expected}};
}

CsvTable op_histogram(const ComputeConfig& config, std::uint64_t seed, const std::string& hash) {
  CsvTable table({"config_hash", "seed", "n", "range", "placements_tried", "max_degree", "degree_cap", "tree_depth",
                  "message_bits", "slots", "slots_per_block", "slots_per_block_over_ln_n", "all_correct"});
  constexpr int kAttempts = 20;
  for (int n : parse_int_list(config.n_grid)) {
    const double r = rgg::critical_range(n, config.c);
    const int cap = compute::histogram_degree_cap(n, r);
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      const auto pl = rgg::place_uniform(n, Domain::UnitSquare, mix(seed, static_cast<std::uint64_t>(n + attempt)));
      if (n > 1 && !is_connected(rgg::build_range_graph(pl, r))) continue;
      compute::HistogramOptions o;
      o.alphabet = config.q;
      o.blocks = config.blocks;
      o.seed = mix(seed, 7 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(attempt));
      const auto h = compute::histogram_aggregation(pl, r, o);
      if (h.max_degree > cap) continue;
      const double ratio = n > 1 ? h.slots_per_block / std::log(static_cast<double>(n)) : 0.0;
      table.add_row({hash, std::to_string(seed), num(n), num(r), num(attempt + 1), num(h.max_degree), num(cap),
                     num(h.tree_depth), num(h.message_bits), num(h.slots), num(h.slots_per_block), num(ratio),
                     h.all_correct ? "1" : "0"});
      break;
    }
  }
  return table;
}

json op_fooling(const ComputeConfig& config) {
  const auto f = load_function(config);
  const auto res = compute::fooling_set_lower_bound(f);
  return {{"size", res.elements.size()}, {"bound_bits", res.bound}, {"exact", res.exact}, {"elements", res.elements}};
}

json op_and_block(const ComputeConfig& config) {
  json out = {{"N", config.N}};
  if (!config.x1.empty() || !config.x2.empty()) {
    const auto tr = compute::and_block_protocol(parse_bits(config.x1), parse_bits(config.x2));
    out["N"] = config.x1.size();
    out["zeros"] = tr.zeros;
    out["message1"] = bits_string(tr.message1);
    out["message2"] = bits_string(tr.message2);
    out["output"] = bits_string(tr.output1);
    out["outputs_agree"] = tr.output1 == tr.output2;
    out["total_bits"] = tr.total_bits();
    return out;
  }
  const long long worst = compute::and_worst_case_bits(config.N);
  out["worst_case_bits"] = worst;
  out["bits_per_instance"] = static_cast<double>(worst) / config.N;
  out["limit"] = std::log2(3.0);
  return out;
}

}  // namespace

ComputeOutput run_compute(const ComputeConfig& config, std::uint64_t seed) {
  const std::string hash = config_hash(config.params());
  ComputeOutput out;
  const auto& op = config.op;
  if (op == "classify") {
    out.json = op_classify(config);
  } else if (op == "tree-code") {
    out.json = op_tree_code(config);
  } else if (op == "dag-bounds") {
    out.json = op_dag_bounds(config);
  } else if (op == "parity") {
    out.json = op_parity(config, seed);
  } else if (op == "histogram") {
    out.is_csv = true;
    out.csv = op_histogram(config, seed, hash);
    return out;
  } else if (op == "fooling") {
    out.json = op_fooling(config);
  } else if (op == "threshold") {
    out.json = {{"n", config.n}, {"theta", config.theta},
                {"complexity_bits", compute::threshold_complexity(config.n, config.theta)}};
  } else if (op == "interval") {
    const auto ib = compute::interval_complexity_bounds(config.n, config.a, config.b);
    out.json = {{"n", config.n}, {"a", config.a}, {"b", config.b}, {"lower_bits", ib.lower},
                {"upper_bits", ib.upper}, {"low_branch", ib.low_branch}};
  } else if (op == "and-block") {
    out.json = op_and_block(config);
  } else {
    throw InvalidArgument("unknown compute op '" + op + "'");
  }
  out.json["op"] = op;
  out.json["config_hash"] = hash;
  out.json["seed"] = seed;
  return out;
}

}  // namespace sensornet::tools

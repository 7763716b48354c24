#include "sensornet/dag.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sensornet/errors.hpp"
#include "sensornet/lp.hpp"

namespace sensornet::compute {

using detail::require;

std::vector<CutInequality> dag_cut_outer_bound(const Network& network, const FunctionTable& f,
                                               CodingMode mode, const std::optional<std::vector<double>>& p) {
  check_function(network, f);
  if (mode == CodingMode::AverageCase) {
    require(p.has_value() && p->size() == f.size(), "average-case bound needs a distribution over the inputs");
    for (double v : *p) require(v >= 0.0 && std::isfinite(v), "probabilities must be >= 0");
  }
  std::vector<NodeId> others;
  for (int v = 0; v < network.n; ++v)
    if (v != network.collector) others.push_back(v);
  require(static_cast<int>(others.size()) <= kMaxCutNodes, "cut enumeration is capped at 20 nodes");

  std::vector<CutInequality> cuts;
  std::vector<int> x(static_cast<std::size_t>(network.n));
  const std::size_t subsets = std::size_t{1} << others.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    CutInequality cut;
    std::vector<char> in_s(static_cast<std::size_t>(network.n), 0);
    for (std::size_t b = 0; b < others.size(); ++b)
      if (mask >> b & 1) {
        cut.subset.push_back(others[b]);
        in_s[others[b]] = 1;
      }
    for (std::size_t e = 0; e < network.edges.size(); ++e)
      if (in_s[network.edges[e].first] && !in_s[network.edges[e].second]) cut.edges.push_back(static_cast<int>(e));
    const auto classes = subset_classes(f, network.alphabet, cut.subset);
    if (mode == CodingMode::WorstCase) {
      cut.bound = std::log2(static_cast<double>(classes.count));
    } else {
      std::vector<NodeId> rest;
      for (int v = 0; v < network.n; ++v)
        if (!in_s[v]) rest.push_back(v);
      const SubsetIndexer s_idx(cut.subset, network.alphabet), w_idx(rest, network.alphabet);
      std::map<std::pair<std::size_t, int>, double> joint;
      std::vector<double> marginal(w_idx.size(), 0.0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f.decode(i, x);
        const auto w = w_idx.index(x);
        joint[{w, classes.class_of[s_idx.index(x)]}] += (*p)[i];
        marginal[w] += (*p)[i];
      }
      double h = 0.0;
      for (const auto& [key, pj] : joint)
        if (pj > 0.0) h -= pj * std::log2(pj / marginal[key.first]);
      cut.bound = std::max(0.0, h);
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

bool satisfies_cuts(const std::vector<CutInequality>& cuts, const std::vector<double>& rates, double tol) {
  for (const auto& c : cuts) {
    double sum = 0.0;
    for (int e : c.edges) {
      require(e >= 0 && e < static_cast<int>(rates.size()), "satisfies_cuts: rate vector too short");
      sum += rates[e];
    }
    if (sum < c.bound - tol) return false;
  }
  return true;
}

TreeRegion tree_achievable_region(const Network& network, const FunctionTable& f, CodingMode mode,
                                  const std::optional<std::vector<double>>& p) {
  check_function(network, f);
  std::vector<NodeId> others;
  std::vector<std::vector<int>> choices;
  for (int v = 0; v < network.n; ++v) {
    if (v == network.collector) continue;
    auto out = network.out_edges(v);
    if (out.empty())
      throw Infeasible("node " + std::to_string(v) + " has no path toward the collector");
    others.push_back(v);
    choices.push_back(std::move(out));
  }
  TreeRegion region;
  std::vector<std::size_t> pick(others.size(), 0);
  for (;;) {
    Network tree = network;
    tree.edges.clear();
    std::vector<int> chosen(static_cast<std::size_t>(network.n), -1);
    for (std::size_t k = 0; k < others.size(); ++k) {
      chosen[others[k]] = choices[k][pick[k]];
      tree.edges.push_back(network.edges[chosen[others[k]]]);
    }
    // Acyclic input with one out-edge per node gives an in-tree at the only sink.
    if (tree.is_in_tree()) {
      const auto code = tree_zero_error_codes(tree, f, mode, p);
      std::vector<double> point(network.edges.size(), 0.0);
      for (std::size_t k = 0; k < others.size(); ++k) point[chosen[others[k]]] = code.rates[k];
      if (std::find(region.points.begin(), region.points.end(), point) == region.points.end()) {
        region.points.push_back(std::move(point));
        region.trees.push_back(chosen);
      }
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  if (region.points.empty()) throw Infeasible("no tree reaches the collector");
  return region;
}

bool in_tree_hull(const TreeRegion& region, const std::vector<double>& rates, bool allow_excess) {
  require(!region.points.empty(), "in_tree_hull: empty region");
  const std::size_t k = region.points.size();
  const std::size_t m = region.points[0].size();
  require(rates.size() == m, "in_tree_hull: rate vector size");
  LinearProgram lp(k);
  lp.add(std::vector<double>(k, 1.0), RowSense::Equal, 1.0);
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<double> row(k);
    for (std::size_t t = 0; t < k; ++t) row[t] = region.points[t][e];
    lp.add(std::move(row), allow_excess ? RowSense::LessEqual : RowSense::Equal, rates[e]);
  }
  return lp_solve(lp, Optimize::Minimize).status == LpStatus::Optimal;
}

ParityResult dag_parity_scheme(const Network& network, const std::vector<std::vector<int>>& blocks,
                               const std::vector<std::vector<double>>& split, int q, Aggregate aggregate) {
  network.validate();
  require(q >= 2, "dag_parity_scheme: alphabet size must be >= 2");
  require(static_cast<int>(blocks.size()) == network.n, "dag_parity_scheme: one block per node");
  require(static_cast<int>(split.size()) == network.n, "dag_parity_scheme: one split per node");
  std::size_t N = 0;
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    require(N == 0 || b.size() == N, "dag_parity_scheme: blocks must share a length");
    N = b.size();
    for (int s : b) require(s >= 0 && s < q, "dag_parity_scheme: symbol outside the alphabet");
  }
  require(N > 0, "dag_parity_scheme: no measurements");

  const int identity = aggregate == Aggregate::Min ? q - 1 : 0;
  auto fold = [&](int a, int b) {
    switch (aggregate) {
      case Aggregate::Parity: return (a + b) % q;
      case Aggregate::Max: return std::max(a, b);
      case Aggregate::Min: return std::min(a, b);
    }
    return a;
  };

  std::vector<std::vector<int>> state(static_cast<std::size_t>(network.n));
  for (int v = 0; v < network.n; ++v)
    state[v] = blocks[v].empty() ? std::vector<int>(N, identity) : blocks[v];

  ParityResult result;
  result.edge_symbols.assign(network.edges.size(), 0);
  for (NodeId v : network.topological_order()) {
    if (v == network.collector) continue;
    const auto out = network.out_edges(v);
    require(!out.empty(), "dag_parity_scheme: node " + std::to_string(v) + " has no out-edge");
    require(split[v].size() == out.size(), "dag_parity_scheme: split of node " + std::to_string(v) +
                                               " needs one fraction per out-edge");
    double total = 0.0;
    for (double fr : split[v]) {
      require(fr >= 0.0, "dag_parity_scheme: negative fraction");
      total += fr;
    }
    require(std::abs(total - 1.0) <= 1e-9, "dag_parity_scheme: fractions must sum to 1");
    std::size_t pos = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double len = split[v][k] * static_cast<double>(N);
      const auto seg = static_cast<std::size_t>(std::llround(len));
      require(std::abs(len - static_cast<double>(seg)) <= 1e-9, "dag_parity_scheme: segment length is not integral");
      require(pos + seg <= N, "dag_parity_scheme: segments exceed the block");
      auto& target = state[network.edges[out[k]].second];
      for (std::size_t l = pos; l < pos + seg; ++l) target[l] = fold(target[l], state[v][l]);
      result.edge_symbols[out[k]] += static_cast<long long>(seg);
      pos += seg;
    }
    require(pos == N, "dag_parity_scheme: segments do not cover the block");
  }
  result.output = state[network.collector];
  const double bits = std::log2(static_cast<double>(q));
  for (long long s : result.edge_symbols) result.rates.push_back(static_cast<double>(s) * bits / static_cast<double>(N));
  return result;
}

Network counterexample_network() {
  Network net;
  net.n = 3;
  net.collector = 0;
  net.alphabet = {1, 2, 2};
  net.edges = {{1, 0}, {2, 0}, {2, 1}};
  return net;
}

FunctionTable counterexample_sum() {
  return FunctionTable::from_callable({1, 2, 2}, [](std::span<const int> x) { return x[1] + x[2]; });
}

}  // namespace sensornet::compute

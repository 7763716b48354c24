#include "sensornet/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sensornet/errors.hpp"
#include "sensornet/random.hpp"

namespace sensornet::compute {

using detail::require;

int histogram_degree_cap(int n, double r) {
  return static_cast<int>(std::floor(3.0 * n * std::numbers::pi * r * r));
}

namespace {

int bits_for(int n) {
  int b = 0;
  while ((1LL << b) < static_cast<long long>(n) + 1) ++b;
  return b;
}

std::vector<bool> encode(const std::vector<int>& counts, int width) {
  std::vector<bool> bits;
  bits.reserve(counts.size() * static_cast<std::size_t>(width));
  for (int c : counts)
    for (int b = width - 1; b >= 0; --b) bits.push_back(((c >> b) & 1) != 0);
  return bits;
}

std::vector<int> decode(const std::vector<bool>& bits, int q, int width) {
  std::vector<int> counts(static_cast<std::size_t>(q), 0);
  std::size_t pos = 0;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < width; ++b) counts[a] = (counts[a] << 1) | (bits[pos++] ? 1 : 0);
  return counts;
}

}  // namespace

HistogramResult histogram_aggregation(const NodePlacement& placement, double r, const HistogramOptions& options) {
  const int n = placement.size();
  require(n >= 1, "histogram_aggregation: empty placement");
  require(options.alphabet >= 1, "histogram_aggregation: alphabet must be >= 1");
  require(options.blocks >= 1, "histogram_aggregation: blocks must be >= 1");
  require(options.delta > 0.0, "histogram_aggregation: delta must be > 0");
  const int q = options.alphabet;
  const int blocks = options.blocks;

  HistogramResult result;
  result.n = n;
  result.blocks = blocks;
  const int width = bits_for(n);
  result.message_bits = q * width;

  Pcg32 rng(options.seed);
  std::vector<std::vector<int>> x(static_cast<std::size_t>(blocks), std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& block : x)
    for (auto& v : block) v = static_cast<int>(rng.below(static_cast<std::uint32_t>(q)));

  const Graph g = rgg::build_range_graph(placement, r);
  require(is_connected(g), "histogram_aggregation: range graph is disconnected");
  for (int d : g.degrees()) result.max_degree = std::max(result.max_degree, d);

  if (n == 1) {
    result.applicable = false;
    result.throughput = std::numeric_limits<double>::infinity();
    return result;
  }

  // BFS tree toward node 0; parents are the smallest-index neighbor one level up.
  const auto depth = bfs_distances(g, 0);
  const auto adj = g.undirected_adjacency();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> child_count(static_cast<std::size_t>(n), 0);
  for (int v = 1; v < n; ++v) {
    for (int u : adj[v])
      if (depth[u] == depth[v] - 1 && (parent[v] < 0 || u < parent[v])) parent[v] = u;
    ++child_count[parent[v]];
    result.tree_depth = std::max(result.tree_depth, depth[v]);
  }

  std::vector<std::vector<std::vector<int>>> partial(
      static_cast<std::size_t>(n),
      std::vector<std::vector<int>>(static_cast<std::size_t>(blocks), std::vector<int>(static_cast<std::size_t>(q), 0)));
  for (int b = 0; b < blocks; ++b)
    for (int v = 0; v < n; ++v) partial[v][b][x[b][v]] += 1;
  std::vector<std::vector<int>> received(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(blocks), 0));
  std::vector<int> next_block(static_cast<std::size_t>(n), 0);
  next_block[0] = blocks;
  int remaining = (n - 1) * blocks;

  const auto& pts = placement.points;
  const double guard = 1.0 + options.delta;
  std::vector<int> candidates;
  std::vector<int> chosen;
  std::vector<char> busy(static_cast<std::size_t>(n), 0);
  while (remaining > 0) {
    candidates.clear();
    for (int v = 1; v < n; ++v)
      if (next_block[v] < blocks && received[v][next_block[v]] == child_count[v]) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      if (next_block[a] != next_block[b]) return next_block[a] < next_block[b];
      if (depth[a] != depth[b]) return depth[a] > depth[b];
      return a < b;
    });
    chosen.clear();
    for (int v : candidates) {
      const int p = parent[v];
      if (busy[v] || busy[p]) continue;
      const double reach_v = guard * distance(pts[v], pts[p]);
      bool ok = true;
      for (int k : chosen) {
        const int l = parent[k];
        if (distance(pts[k], pts[p]) <= guard * distance(pts[k], pts[l]) || distance(pts[v], pts[l]) <= reach_v) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(v);
      busy[v] = busy[p] = 1;
    }
    if (chosen.empty()) throw NumericFailure("histogram_aggregation: scheduler stalled");
    for (int v : chosen) {
      const int b = next_block[v]++;
      const int p = parent[v];
      const auto counts = decode(encode(partial[v][b], width), q, width);
      for (int a = 0; a < q; ++a) partial[p][b][a] += counts[a];
      ++received[p][b];
      busy[v] = busy[p] = 0;
      --remaining;
    }
    ++result.macro_slots;
  }

  for (int b = 0; b < blocks; ++b) {
    std::vector<int> direct(static_cast<std::size_t>(q), 0);
    for (int v = 0; v < n; ++v) ++direct[x[b][v]];
    if (received[0][b] != child_count[0] || partial[0][b] != direct) result.all_correct = false;
  }
  result.slots = result.macro_slots * result.message_bits;
  result.slots_per_block = static_cast<double>(result.slots) / blocks;
  result.throughput = static_cast<double>(blocks) / static_cast<double>(result.slots);
  return result;
}

}  // namespace sensornet::compute

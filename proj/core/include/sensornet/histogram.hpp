#pragma once

#include <cstdint>
#include <vector>

#include "sensornet/graph.hpp"
#include "sensornet/rgg.hpp"

namespace sensornet::compute {

struct HistogramOptions {
  int alphabet = 2;         ///< |X|
  int blocks = 1;           ///< instances aggregated back to back
  double delta = 1.0;       ///< protocol-model guard factor for spatial reuse
  std::uint64_t seed = 0;   ///< measurement stream
};

struct HistogramResult {
  int n = 0;
  int blocks = 0;
  int message_bits = 0;     ///< |X| * ceil(log2(n+1))
  int tree_depth = 0;
  int max_degree = 0;
  long long macro_slots = 0;  ///< message-length slots used
  long long slots = 0;        ///< one bit per slot
  double slots_per_block = 0.0;
  double throughput = 0.0;    ///< blocks per slot; +inf when no transmission is needed
  bool applicable = true;     ///< false for n == 1
  bool all_correct = true;    ///< collector histograms equal the direct count for every block
};

/// Degree cap used to accept a placement: 3 n pi r^2.
int histogram_degree_cap(int n, double r);

/// Range-graph tree aggregation toward node 0. Partial histograms travel up a
/// BFS tree, each message encoded in |X| * ceil(log2(n+1)) bits and decoded
/// by the parent. Messages are scheduled greedily per message-length slot:
/// ready (node, block) pairs, lower block first then deeper node, join the
/// slot when the set stays protocol-feasible; blocks pipeline freely.
/// Throws InvalidArgument when the range graph is disconnected.
HistogramResult histogram_aggregation(const NodePlacement& placement, double r,
                                      const HistogramOptions& options);

}  // namespace sensornet::compute

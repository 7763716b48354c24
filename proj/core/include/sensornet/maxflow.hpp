#pragma once

#include <vector>

#include "sensornet/graph.hpp"

namespace sensornet {

/// Dinic max-flow on an integer-capacity network.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n);

  void add_arc(int from, int to, long long capacity);
  /// Adds a pair of opposing arcs of equal capacity (an undirected edge).
  void add_undirected(int a, int b, long long capacity);

  /// Maximum s-t flow. Resets any previous flow first.
  long long max_flow(int source, int sink);

  int node_count() const noexcept { return static_cast<int>(adj_.size()); }

 private:
  struct Arc {
    int to;
    int rev;
    long long cap;
    long long initial;
  };
  bool build_levels(int source, int sink);
  long long augment(int u, int sink, long long pushed);

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

/// Edge connectivity: minimum over t != 0 of the unit-capacity max-flow
/// between node 0 and t (orientation ignored). Returns 0 for disconnected
/// graphs and for graphs with fewer than two nodes.
int edge_connectivity(const Graph& graph);

}  // namespace sensornet

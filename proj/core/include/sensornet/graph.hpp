#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace sensornet {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

/// Simple graph over nodes 0..n-1 with a sorted, duplicate-free edge list.
/// Undirected graphs store each edge once as (i, j) with i < j.
class Graph {
 public:
  Graph() = default;

  /// Normalizes (orients i < j when undirected, sorts, removes duplicates).
  /// Throws InvalidArgument on self-loops or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges, bool directed = false);

  static Graph empty(int n, bool directed = false) { return Graph(n, {}, directed); }
  static Graph complete(int n);
  static Graph path(int n);
  static Graph cycle(int n);
  static Graph star(int n, NodeId center = 0);
  /// side x side grid, node id = row * side + col.
  static Graph lattice(int side);

  int node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(NodeId i, NodeId j) const;

  /// Neighbor lists ignoring orientation; a neighbor appears once per incident
  /// edge, so a bidirectional pair in a directed graph counts twice.
  std::vector<std::vector<NodeId>> undirected_adjacency() const;

  /// Out-neighbor lists (same as undirected_adjacency for undirected graphs).
  std::vector<std::vector<NodeId>> out_adjacency() const;

  /// Degree ignoring orientation, counting every incident edge.
  std::vector<int> degrees() const;

  /// Same node set and edges, orientation dropped.
  Graph as_undirected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  bool directed_ = false;
};

/// True iff the graph has a single connected component (orientation ignored).
/// A graph with no nodes is reported as not connected.
bool is_connected(const Graph& graph);

/// True iff every node reaches every other along directed edges. Undirected
/// graphs defer to is_connected.
bool is_strongly_connected(const Graph& graph);

/// Hop distance from `source` ignoring orientation; -1 when unreachable.
std::vector<int> bfs_distances(const Graph& graph, NodeId source);

}  // namespace sensornet

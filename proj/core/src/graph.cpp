#include "sensornet/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "sensornet/errors.hpp"
#include "sensornet/union_find.hpp"

namespace sensornet {

Graph::Graph(int n, std::vector<Edge> edges, bool directed)
    : n_(n), edges_(std::move(edges)), directed_(directed) {
  detail::require(n >= 0, "graph node count must be non-negative");
  for (auto& [i, j] : edges_) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw InvalidArgument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range for n=" + std::to_string(n));
    }
    if (i == j) throw InvalidArgument("self-loop at node " + std::to_string(i));
    if (!directed_ && i > j) std::swap(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Graph Graph::complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph Graph::path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph Graph::cycle(int n) {
  detail::require(n >= 3, "cycle needs at least 3 nodes");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph Graph::star(int n, NodeId center) {
  detail::require(center >= 0 && center < n, "star center out of range");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    if (i != center) e.emplace_back(center, i);
  return Graph(n, std::move(e));
}

Graph Graph::lattice(int side) {
  detail::require(side >= 1, "lattice side must be positive");
  std::vector<Edge> e;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int id = r * side + c;
      if (c + 1 < side) e.emplace_back(id, id + 1);
      if (r + 1 < side) e.emplace_back(id, id + side);
    }
  }
  return Graph(side * side, std::move(e));
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  if (!directed_ && i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

std::vector<std::vector<NodeId>> Graph::undirected_adjacency() const {
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n_));
  for (const auto& [i, j] : edges_) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return adj;
}

std::vector<std::vector<NodeId>> Graph::out_adjacency() const {
  if (!directed_) return undirected_adjacency();
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n_));
  for (const auto& [i, j] : edges_) adj[i].push_back(j);
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& [i, j] : edges_) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

Graph Graph::as_undirected() const {
  if (!directed_) return *this;
  return Graph(n_, edges_, false);
}

bool is_connected(const Graph& graph) {
  const int n = graph.node_count();
  if (n == 0) return false;
  DisjointSets sets(n);
  for (const auto& [i, j] : graph.edges()) sets.unite(i, j);
  return sets.component_count() == 1;
}

namespace {

int reach_count(const std::vector<std::vector<NodeId>>& adj, NodeId source) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<NodeId> stack{source};
  seen[source] = 1;
  int count = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count;
}

}  // namespace

bool is_strongly_connected(const Graph& graph) {
  if (!graph.directed()) return is_connected(graph);
  const int n = graph.node_count();
  if (n == 0) return false;
  std::vector<std::vector<NodeId>> fwd(n), rev(n);
  for (const auto& [i, j] : graph.edges()) {
    fwd[i].push_back(j);
    rev[j].push_back(i);
  }
  return reach_count(fwd, 0) == n && reach_count(rev, 0) == n;
}

std::vector<int> bfs_distances(const Graph& graph, NodeId source) {
  const auto adj = graph.undirected_adjacency();
  std::vector<int> dist(adj.size(), -1);
  std::queue<NodeId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace sensornet

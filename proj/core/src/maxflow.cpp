#include "sensornet/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "sensornet/errors.hpp"

namespace sensornet {

FlowNetwork::FlowNetwork(int n) : adj_(static_cast<std::size_t>(n)) {
  detail::require(n >= 0, "flow network size must be non-negative");
}

void FlowNetwork::add_arc(int from, int to, long long capacity) {
  detail::require(from >= 0 && to >= 0 && from < node_count() && to < node_count(),
                  "arc endpoint out of range");
  detail::require(capacity >= 0, "arc capacity must be non-negative");
  adj_[from].push_back({to, static_cast<int>(adj_[to].size()), capacity, capacity});
  adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, 0, 0});
}

void FlowNetwork::add_undirected(int a, int b, long long capacity) {
  detail::require(a >= 0 && b >= 0 && a < node_count() && b < node_count(),
                  "edge endpoint out of range");
  adj_[a].push_back({b, static_cast<int>(adj_[b].size()), capacity, capacity});
  adj_[b].push_back({a, static_cast<int>(adj_[a].size()) - 1, capacity, capacity});
}

bool FlowNetwork::build_levels(int source, int sink) {
  level_.assign(adj_.size(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : adj_[u]) {
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

long long FlowNetwork::augment(int u, int sink, long long pushed) {
  if (u == sink) return pushed;
  for (std::size_t& i = next_[u]; i < adj_[u].size(); ++i) {
    Arc& a = adj_[u][i];
    if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
    const long long got = augment(a.to, sink, std::min(pushed, a.cap));
    if (got > 0) {
      a.cap -= got;
      adj_[a.to][a.rev].cap += got;
      return got;
    }
  }
  return 0;
}

long long FlowNetwork::max_flow(int source, int sink) {
  detail::require(source != sink, "source and sink must differ");
  for (auto& arcs : adj_)
    for (auto& a : arcs) a.cap = a.initial;
  long long flow = 0;
  while (build_levels(source, sink)) {
    next_.assign(adj_.size(), 0);
    while (long long f = augment(source, sink, std::numeric_limits<long long>::max())) flow += f;
  }
  return flow;
}

int edge_connectivity(const Graph& graph) {
  const int n = graph.node_count();
  if (n < 2) return 0;
  FlowNetwork net(n);
  for (const auto& [i, j] : graph.edges()) net.add_undirected(i, j, 1);
  long long best = std::numeric_limits<long long>::max();
  for (int t = 1; t < n; ++t) {
    best = std::min(best, net.max_flow(0, t));
    if (best == 0) break;
  }
  return static_cast<int>(best);
}

}  // namespace sensornet

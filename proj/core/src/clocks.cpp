#include "sensornet/clocks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "sensornet/errors.hpp"
#include "sensornet/lp.hpp"
#include "sensornet/maxflow.hpp"
#include "sensornet/random.hpp"
#include "sensornet/union_find.hpp"

namespace sensornet::clocks {

using detail::require;

void ClockWorld::validate() const {
  const int n = size();
  require(n >= 1, "clock world: no clocks");
  require(graph.node_count() == n, "clock world: graph size differs from clock count");
  require(clocks[0].a == 1.0 && clocks[0].b == 0.0, "clock world: node 0 must be the identity clock");
  for (const auto& c : clocks)
    require(c.a > 0.0 && std::isfinite(c.a) && std::isfinite(c.b), "clock world: skews must be > 0");
  for (const auto& [link, d] : delays) {
    require(d >= 0.0 && std::isfinite(d), "clock world: delays must be >= 0");
    require(graph.has_edge(link.first, link.second) ||
                (!graph.directed() && graph.has_edge(link.second, link.first)),
            "clock world: delay on a link outside the graph");
  }
}

namespace {

std::vector<Edge> directed_links(const Graph& graph) {
  std::vector<Edge> links;
  for (const auto& [i, j] : graph.edges()) {
    links.emplace_back(i, j);
    if (!graph.directed()) links.emplace_back(j, i);
  }
  std::sort(links.begin(), links.end());
  return links;
}

bool has_link(const ClockWorld& world, NodeId i, NodeId j) {
  if (world.graph.directed()) return world.graph.has_edge(i, j);
  return world.graph.has_edge(std::min(i, j), std::max(i, j));
}

}  // namespace

ClockWorld random_world(const Graph& graph, std::uint64_t seed, const WorldOptions& options) {
  require(graph.node_count() >= 1, "random_world: empty graph");
  require(options.skew_lo > 0.0 && options.skew_lo <= options.skew_hi, "random_world: bad skew range");
  require(options.delay_lo >= 0.0 && options.delay_lo <= options.delay_hi, "random_world: bad delay range");
  Pcg32 rng(seed);
  ClockWorld world;
  world.graph = graph;
  world.clocks.resize(static_cast<std::size_t>(graph.node_count()));
  for (std::size_t v = 1; v < world.clocks.size(); ++v) {
    world.clocks[v].a = rng.uniform(options.skew_lo, options.skew_hi);
    world.clocks[v].b = rng.uniform(-options.offset_span, options.offset_span);
  }
  for (const auto& link : directed_links(graph))
    world.delays[link] = rng.uniform(options.delay_lo, options.delay_hi);
  return world;
}

std::vector<PacketRecord> simulate_exchange(const ClockWorld& world,
                                            const std::vector<SendEvent>& sends,
                                            const JitterModel* jitter) {
  world.validate();
  const int n = world.size();
  std::map<Edge, int> counter;
  std::vector<double> last_send(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  std::optional<Pcg32> rng;
  if (jitter) rng.emplace(jitter->seed);
  std::vector<PacketRecord> log;
  log.reserve(sends.size());
  for (const auto& e : sends) {
    require(e.i >= 0 && e.i < n && e.j >= 0 && e.j < n, "simulate_exchange: node out of range");
    require(has_link(world, e.i, e.j),
            "simulate_exchange: no link " + std::to_string(e.i) + "->" + std::to_string(e.j));
    require(e.s > last_send[e.i], "simulate_exchange: send stamps must increase per sender");
    last_send[e.i] = e.s;
    const auto it = world.delays.find({e.i, e.j});
    const double d = it == world.delays.end() ? 0.0 : it->second;
    const auto& ci = world.clocks[e.i];
    const auto& cj = world.clocks[e.j];
    double r = cj.a * ((e.s - ci.b) / ci.a + d) + cj.b;
    if (jitter) {
      const auto lv = jitter->link_variance.find({e.i, e.j});
      const double var = lv == jitter->link_variance.end() ? jitter->variance : lv->second;
      require(var >= 0.0, "simulate_exchange: negative jitter variance");
      if (var > 0.0) r += std::sqrt(var) * rng->normal();
    }
    log.push_back({e.i, e.j, counter[{e.i, e.j}]++, e.s, r});
  }
  return log;
}

std::vector<PacketRecord> standard_exchange(const ClockWorld& world) {
  std::vector<SendEvent> sends;
  const auto links = directed_links(world.graph);
  for (double s : {10.0, 20.0})
    for (const auto& [i, j] : links) sends.push_back({i, j, s});
  // Stamps must increase per sender.
  std::vector<int> seq(static_cast<std::size_t>(world.size()), 0);
  for (auto& e : sends) e.s += 1e-3 * seq[e.i]++;
  return simulate_exchange(world, sends);
}

double estimate_relative_skew(const PacketRecord& p1, const PacketRecord& p2) {
  require(p1.i == p2.i && p1.j == p2.j, "estimate_relative_skew: packets on different links");
  require(p1.k != p2.k, "estimate_relative_skew: same packet twice");
  require(p1.s != p2.s, "estimate_relative_skew: equal send stamps");
  return (p2.r - p1.r) / (p2.s - p1.s);
}

PingPong find_pingpong(const std::vector<PacketRecord>& log, NodeId i, NodeId j, int k) {
  const PacketRecord* fwd = nullptr;
  const PacketRecord* back = nullptr;
  for (const auto& p : log) {
    if (p.k != k) continue;
    if (p.i == i && p.j == j) fwd = &p;
    if (p.i == j && p.j == i) back = &p;
  }
  if (!fwd || !back)
    throw InsufficientData("no round " + std::to_string(k) + " between nodes " + std::to_string(i) +
                           " and " + std::to_string(j));
  return {fwd->s, fwd->r, back->s, back->r};
}

DelayOffset estimate_delay_and_offset(const PingPong& p, double a_ij, double a_ji) {
  require(a_ij > 0.0 && a_ji > 0.0, "estimate_delay_and_offset: skews must be > 0");
  DelayOffset out;
  out.d_hat = 0.5 * ((p.r_ji - p.s_j) + (p.r_ij - p.s_i) + (p.s_j - p.r_ij) * (1.0 - a_ji));
  out.tau_hat = p.s_j - p.r_ji + a_ij * out.d_hat;
  return out;
}

double roundtrip_delay(const PingPong& stamps, double a_ij, double a_ji, double a_i) {
  require(a_i > 0.0, "roundtrip_delay: a_i must be > 0");
  return 2.0 * estimate_delay_and_offset(stamps, a_ij, a_ji).d_hat / a_i;
}

namespace {

// a_j / a_i from two packets on (i, j) with distinct send stamps.
std::optional<double> link_skew(const std::vector<const PacketRecord*>& packets) {
  for (std::size_t x = 0; x < packets.size(); ++x)
    for (std::size_t y = x + 1; y < packets.size(); ++y)
      if (packets[x]->s != packets[y]->s && packets[x]->k != packets[y]->k)
        return estimate_relative_skew(*packets[x], *packets[y]);
  return std::nullopt;
}

}  // namespace

UncertaintyInterval offset_uncertainty_interval(const std::vector<PacketRecord>& log, NodeId j,
                                                bool causality, std::optional<double> skew) {
  require(j != 0, "offset_uncertainty_interval: j must differ from the reference");
  std::vector<const PacketRecord*> out, in;
  for (const auto& p : log) {
    if (p.i == 0 && p.j == j) out.push_back(&p);
    if (p.i == j && p.j == 0) in.push_back(&p);
  }
  if (out.empty() || in.empty())
    throw InsufficientData("offset_uncertainty_interval: need packets in both directions");
  double a = 0.0;
  if (skew) {
    a = *skew;
  } else if (auto s = link_skew(out)) {
    a = *s;
  } else if (auto s2 = link_skew(in)) {
    a = 1.0 / *s2;
  } else {
    throw InsufficientData("offset_uncertainty_interval: skew not estimable from the log");
  }
  require(a > 0.0 && std::isfinite(a), "offset_uncertainty_interval: skew must be > 0");

  UncertaintyInterval result;
  result.skew = a;
  result.anchor = {0.0, out[0]->r / a - out[0]->s, in[0]->r - in[0]->s / a};
  result.direction = {1.0, -1.0 / a, 1.0 / a};
  if (!causality) {
    result.bounded = false;
    result.lo = -std::numeric_limits<double>::infinity();
    result.hi = std::numeric_limits<double>::infinity();
    return result;
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto* p : out) hi = std::min(hi, p->r - a * p->s);
  for (const auto* p : in) lo = std::max(lo, p->s - a * p->r);
  result.bounded = true;
  result.lo = lo;
  result.hi = hi;
  return result;
}

OffsetPolyhedron::OffsetPolyhedron(std::vector<double> skews, std::vector<Row> rows)
    : skews_(std::move(skews)), rows_(std::move(rows)) {
  const int n = size();
  require(n >= 1, "offset polyhedron: no nodes");
  for (double a : skews_) require(a > 0.0, "offset polyhedron: skews must be > 0");
  for (const auto& r : rows_)
    require(r.i >= 0 && r.i < n && r.j >= 0 && r.j < n && r.i != r.j, "offset polyhedron: bad row");
}

std::vector<double> OffsetPolyhedron::delays(const std::vector<double>& b) const {
  require(static_cast<int>(b.size()) == size(), "offset polyhedron: offset vector size");
  std::vector<double> d;
  d.reserve(rows_.size());
  for (const auto& r : rows_) {
    const double bi = r.i == 0 ? 0.0 : b[r.i];
    const double bj = r.j == 0 ? 0.0 : b[r.j];
    d.push_back(r.h - bj / skews_[r.j] + bi / skews_[r.i]);
  }
  return d;
}

bool OffsetPolyhedron::contains(const std::vector<double>& b, double tol) const {
  for (double d : delays(b))
    if (d < -tol) return false;
  return true;
}

namespace {

// Variables b_1..b_{n-1} (free), optionally followed by t.
LinearProgram polyhedron_program(const OffsetPolyhedron& poly, bool with_margin) {
  const int n = poly.size();
  const std::size_t vars = static_cast<std::size_t>(n - 1) + (with_margin ? 1 : 0);
  LinearProgram lp(vars);
  lp.set_all_free();
  for (const auto& r : poly.rows()) {
    std::vector<double> row(vars, 0.0);
    if (r.j != 0) row[r.j - 1] += 1.0 / poly.skews()[r.j];
    if (r.i != 0) row[r.i - 1] -= 1.0 / poly.skews()[r.i];
    if (with_margin) row.back() = 1.0;
    lp.add(std::move(row), RowSense::LessEqual, r.h);
  }
  if (with_margin) {
    std::vector<double> cap(vars, 0.0);
    cap.back() = 1.0;
    lp.add(std::move(cap), RowSense::LessEqual, 1.0);
  }
  return lp;
}

}  // namespace

double OffsetPolyhedron::interior_margin() const {
  auto lp = polyhedron_program(*this, true);
  lp.objective.back() = 1.0;
  const auto res = lp_solve(lp, Optimize::Maximize);
  if (res.status != LpStatus::Optimal)
    throw NumericFailure("offset polyhedron: margin program " + to_string(res.status));
  return res.value;
}

std::pair<double, double> OffsetPolyhedron::offset_range(NodeId j) const {
  require(j >= 0 && j < size(), "offset polyhedron: node out of range");
  if (j == 0) return {0.0, 0.0};
  auto lp = polyhedron_program(*this, false);
  lp.objective[j - 1] = 1.0;
  const double inf = std::numeric_limits<double>::infinity();
  const auto lo = lp_solve(lp, Optimize::Minimize);
  if (lo.status == LpStatus::Infeasible) throw Infeasible("offset polyhedron is empty");
  const auto hi = lp_solve(lp, Optimize::Maximize);
  return {lo.status == LpStatus::Optimal ? lo.value : -inf,
          hi.status == LpStatus::Optimal ? hi.value : inf};
}

OffsetPolyhedron offset_uncertainty_polyhedron(int n, const std::vector<PacketRecord>& log) {
  require(n >= 1, "offset_uncertainty_polyhedron: n must be >= 1");
  std::map<Edge, std::vector<const PacketRecord*>> by_link;
  for (const auto& p : log) {
    require(p.i >= 0 && p.i < n && p.j >= 0 && p.j < n && p.i != p.j,
            "offset_uncertainty_polyhedron: bad packet endpoints");
    by_link[{p.i, p.j}].push_back(&p);
  }
  std::vector<Edge> links;
  for (const auto& [link, packets] : by_link) links.push_back(link);
  if (!is_strongly_connected(Graph(n, links, true)))
    throw InsufficientData("offset_uncertainty_polyhedron: link graph is not strongly connected");

  // Skews relative to node 0 by BFS over links with an estimable ratio.
  std::vector<std::vector<std::pair<NodeId, double>>> ratio(static_cast<std::size_t>(n));
  for (const auto& [link, packets] : by_link) {
    if (auto s = link_skew(packets)) {
      ratio[link.first].emplace_back(link.second, *s);
      ratio[link.second].emplace_back(link.first, 1.0 / *s);
    }
  }
  std::vector<double> skews(static_cast<std::size_t>(n), 0.0);
  skews[0] = 1.0;
  std::deque<NodeId> queue{0};
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (const auto& [v, rr] : ratio[u]) {
      if (skews[v] > 0.0) continue;
      skews[v] = skews[u] * rr;
      queue.push_back(v);
    }
  }
  for (int v = 0; v < n; ++v)
    if (!(skews[v] > 0.0))
      throw InsufficientData("offset_uncertainty_polyhedron: skew of node " + std::to_string(v) +
                             " is unrecoverable");

  std::vector<OffsetPolyhedron::Row> rows;
  for (const auto& [link, packets] : by_link) {
    double h = std::numeric_limits<double>::infinity();
    for (const auto* p : packets) h = std::min(h, p->r / skews[p->j] - p->s / skews[p->i]);
    rows.push_back({link.first, link.second, h});
  }
  return OffsetPolyhedron(std::move(skews), std::move(rows));
}

std::vector<OffsetMeasurement> exact_measurements(const Graph& graph,
                                                  const std::vector<double>& offsets) {
  require(static_cast<int>(offsets.size()) == graph.node_count(), "exact_measurements: size mismatch");
  std::vector<OffsetMeasurement> m;
  for (const auto& [i, j] : graph.edges()) m.push_back({i, j, offsets[j] - offsets[i], 1.0});
  return m;
}

namespace {

void check_measurements(int n, const std::vector<OffsetMeasurement>& measurements) {
  require(n >= 1, "clocks: n must be >= 1");
  for (const auto& m : measurements) {
    require(m.i >= 0 && m.i < n && m.j >= 0 && m.j < n && m.i != m.j,
            "clocks: measurement endpoints invalid");
    require(m.variance > 0.0 && std::isfinite(m.variance), "clocks: variance must be > 0");
    require(std::isfinite(m.o_hat), "clocks: measurement must be finite");
  }
}

void require_connected(int n, const std::vector<OffsetMeasurement>& measurements) {
  DisjointSets sets(n);
  for (const auto& m : measurements) sets.unite(m.i, m.j);
  if (sets.component_count() != 1) throw SingularSystem("measurement graph is disconnected");
}

}  // namespace

DenseMatrix reduced_laplacian(int n, const std::vector<OffsetMeasurement>& measurements) {
  check_measurements(n, measurements);
  require(n >= 2, "reduced_laplacian: need at least two nodes");
  DenseMatrix L(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1));
  for (const auto& m : measurements) {
    const double w = 1.0 / m.variance;
    if (m.i > 0) L(m.i - 1, m.i - 1) += w;
    if (m.j > 0) L(m.j - 1, m.j - 1) += w;
    if (m.i > 0 && m.j > 0) {
      L(m.i - 1, m.j - 1) -= w;
      L(m.j - 1, m.i - 1) -= w;
    }
  }
  return L;
}

std::vector<double> ls_offsets(int n, const std::vector<OffsetMeasurement>& measurements) {
  check_measurements(n, measurements);
  if (n == 1) return {0.0};
  require_connected(n, measurements);
  const auto L = reduced_laplacian(n, measurements);
  std::vector<double> rhs(static_cast<std::size_t>(n - 1), 0.0);
  for (const auto& m : measurements) {
    const double w = 1.0 / m.variance;
    if (m.j > 0) rhs[m.j - 1] += w * m.o_hat;
    if (m.i > 0) rhs[m.i - 1] -= w * m.o_hat;
  }
  const auto x = solve_spd(L, rhs);
  std::vector<double> v{0.0};
  v.insert(v.end(), x.begin(), x.end());
  return v;
}

std::vector<double> estimator_variance(int n, const std::vector<OffsetMeasurement>& measurements) {
  check_measurements(n, measurements);
  if (n == 1) return {0.0};
  require_connected(n, measurements);
  const auto diag = spd_inverse_diagonal(reduced_laplacian(n, measurements));
  std::vector<double> v{0.0};
  v.insert(v.end(), diag.begin(), diag.end());
  return v;
}

std::vector<double> estimator_variance(const Graph& graph, const std::vector<double>& variances) {
  require(variances.size() == graph.edge_count(), "estimator_variance: one variance per edge");
  std::vector<OffsetMeasurement> m;
  for (std::size_t e = 0; e < graph.edge_count(); ++e)
    m.push_back({graph.edges()[e].first, graph.edges()[e].second, 0.0, variances[e]});
  return estimator_variance(graph.node_count(), m);
}

double objective(const std::vector<double>& v, const std::vector<OffsetMeasurement>& measurements) {
  double f = 0.0;
  for (const auto& m : measurements) {
    const double r = m.o_hat - (v[m.j] - v[m.i]);
    f += r * r / m.variance;
  }
  return f;
}

SmoothingState::SmoothingState(int n, std::vector<OffsetMeasurement> ms)
    : v(static_cast<std::size_t>(n), 0.0), measurements(std::move(ms)) {
  check_measurements(n, measurements);
}

namespace {

struct Term {
  NodeId j;
  double w;
  double shift;  // contribution is w * (v_j + shift)
};

std::vector<std::vector<Term>> neighbor_terms(int n, const std::vector<OffsetMeasurement>& ms) {
  std::vector<std::vector<Term>> terms(static_cast<std::size_t>(n));
  for (const auto& m : ms) {
    const double w = 1.0 / m.variance;
    terms[m.i].push_back({m.j, w, -m.o_hat});
    terms[m.j].push_back({m.i, w, m.o_hat});
  }
  return terms;
}

double update_value(const std::vector<Term>& terms, const std::vector<double>& v) {
  double num = 0.0, den = 0.0;
  for (const auto& t : terms) {
    num += t.w * (v[t.j] + t.shift);
    den += t.w;
  }
  return num / den;
}

double distance_to(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

AsyncTrajectory smoothing_async(SmoothingState& state, const std::vector<NodeId>& order) {
  const int n = state.size();
  require(n >= 1 && state.v[0] == 0.0, "smoothing_async: v[0] must be pinned to 0");
  for (NodeId i : order) {
    require(i != 0, "smoothing_async: the reference node is never updated");
    require(i > 0 && i < n, "smoothing_async: node out of range");
  }
  const auto v_ls = ls_offsets(n, state.measurements);
  const auto terms = neighbor_terms(n, state.measurements);
  AsyncTrajectory traj;
  traj.objective.reserve(order.size() + 1);
  traj.error_norm.reserve(order.size() + 1);
  traj.objective.push_back(objective(state.v, state.measurements));
  traj.error_norm.push_back(distance_to(state.v, v_ls));
  for (NodeId i : order) {
    state.v[i] = update_value(terms[i], state.v);
    traj.objective.push_back(objective(state.v, state.measurements));
    traj.error_norm.push_back(distance_to(state.v, v_ls));
  }
  traj.v = state.v;
  return traj;
}

std::vector<NodeId> round_robin_order(int n, int sweeps) {
  require(n >= 1 && sweeps >= 0, "round_robin_order: bad arguments");
  std::vector<NodeId> order;
  for (int s = 0; s < sweeps; ++s)
    for (int i = 1; i < n; ++i) order.push_back(i);
  return order;
}

SyncTrajectory smoothing_sync(SmoothingState& state, const SyncOptions& options) {
  const int n = state.size();
  require(n >= 1 && state.v[0] == 0.0, "smoothing_sync: v[0] must be pinned to 0");
  require(options.max_iterations >= 0 && options.relative_tol >= 0.0, "smoothing_sync: bad options");
  const auto v_ls = ls_offsets(n, state.measurements);
  const auto terms = neighbor_terms(n, state.measurements);
  SyncTrajectory traj;
  const double e0 = distance_to(state.v, v_ls);
  traj.error_norm.push_back(e0);
  traj.objective.push_back(objective(state.v, state.measurements));
  std::vector<double> next = state.v;
  int k = 0;
  while (k < options.max_iterations) {
    if (k >= options.min_iterations && traj.error_norm.back() <= options.relative_tol * e0) break;
    for (int i = 1; i < n; ++i) next[i] = update_value(terms[i], state.v);
    state.v.swap(next);
    ++k;
    traj.error_norm.push_back(distance_to(state.v, v_ls));
    traj.objective.push_back(objective(state.v, state.measurements));
  }
  traj.iterations = k;
  traj.v = state.v;

  // Contraction rate from the part of the trajectory above the rounding floor.
  int last = 0;
  for (int i = 1; i <= k; ++i)
    if (traj.error_norm[i] > 1e-11 * e0) last = i;
  if (e0 > 0.0 && last >= 2) {
    const int first = std::min(last - 1, (3 * last) / 4);
    traj.measured_rate =
        std::pow(traj.error_norm[last] / traj.error_norm[first], 1.0 / (last - first));
  }
  return traj;
}

DenseMatrix smoothing_matrix(int n, const std::vector<OffsetMeasurement>& measurements) {
  auto M = reduced_laplacian(n, measurements);
  const std::size_t m = M.rows();
  for (std::size_t r = 0; r < m; ++r) {
    const double d = M(r, r);
    require(d > 0.0, "smoothing_matrix: node without links");
    for (std::size_t c = 0; c < m; ++c) M(r, c) = (r == c ? 1.0 : 0.0) - M(r, c) / d;
  }
  return M;
}

namespace {

std::vector<OffsetMeasurement> unit_links(const Graph& graph) {
  std::vector<OffsetMeasurement> ms;
  for (const auto& [i, j] : graph.edges()) ms.push_back({i, j, 0.0, 1.0});
  return ms;
}

}  // namespace

DenseMatrix smoothing_matrix(const Graph& graph) {
  return smoothing_matrix(graph.node_count(), unit_links(graph));
}

double smoothing_spectral_radius(int n, const std::vector<OffsetMeasurement>& measurements) {
  require_connected(n, measurements);
  auto S = reduced_laplacian(n, measurements);
  const std::size_t m = S.rows();
  std::vector<double> scale(m);
  for (std::size_t r = 0; r < m; ++r) scale[r] = 1.0 / std::sqrt(S(r, r));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      S(r, c) = (r == c ? 1.0 : 0.0) - scale[r] * S(r, c) * scale[c];
  if (m <= 500) {
    const auto eig = symmetric_eigenvalues(S);
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
  }
  return spectral_radius(S);
}

double smoothing_spectral_radius(const Graph& graph) {
  return smoothing_spectral_radius(graph.node_count(), unit_links(graph));
}

CheegerBounds cheeger_bounds(const Graph& graph, std::optional<int> kappa) {
  const Graph g = graph.as_undirected();
  require(g.node_count() >= 2, "cheeger_bounds: need at least two nodes");
  require(is_connected(g), "cheeger_bounds: graph is disconnected");
  CheegerBounds b;
  const auto deg = g.degrees();
  b.d0 = deg[0];
  for (std::size_t i = 1; i < deg.size(); ++i) b.degree_sum += deg[i];
  if (kappa) {
    require(*kappa >= 1, "cheeger_bounds: kappa must be >= 1");
    b.kappa = *kappa;
  } else {
    require(g.edge_count() <= 1000, "cheeger_bounds: supply kappa for graphs above 1000 edges");
    b.kappa = edge_connectivity(g);
  }
  const double sum = static_cast<double>(b.degree_sum);
  b.lower = 1.0 - 2.0 * b.d0 / sum;
  b.upper = 1.0 - (b.kappa / sum) * (b.kappa / sum);
  return b;
}

int settling_iterations(const Graph& graph, const std::vector<double>& offsets, double eps) {
  require(eps > 0.0 && eps < 1.0, "settling_iterations: eps must be in (0, 1)");
  require(static_cast<int>(offsets.size()) == graph.node_count(), "settling_iterations: size mismatch");
  std::vector<double> shifted = offsets;
  for (auto& x : shifted) x -= offsets[0];
  SmoothingState state(graph.node_count(), exact_measurements(graph.as_undirected(), shifted));
  SyncOptions opt;
  opt.relative_tol = eps;
  opt.max_iterations = 10000000;
  return smoothing_sync(state, opt).iterations;
}

}  // namespace sensornet::clocks

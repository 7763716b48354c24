#include "sensornet/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "sensornet/errors.hpp"
#include "sensornet/random.hpp"

namespace sensornet::capacity {

using detail::require;

void Slot::validate(int node_count) const {
  std::vector<NodeId> src, dst;
  src.reserve(transmissions.size());
  dst.reserve(transmissions.size());
  for (const auto& t : transmissions) {
    require(t.src >= 0 && t.src < node_count && t.dst >= 0 && t.dst < node_count,
            "slot: node index out of range");
    require(t.src != t.dst, "slot: transmission with src == dst");
    require(t.power > 0.0, "slot: transmission power must be positive");
    src.push_back(t.src);
    dst.push_back(t.dst);
  }
  std::sort(src.begin(), src.end());
  std::sort(dst.begin(), dst.end());
  if (std::adjacent_find(src.begin(), src.end()) != src.end())
    throw InvalidArgument("slot: a node transmits twice");
  for (NodeId v : src)
    if (std::binary_search(dst.begin(), dst.end(), v))
      throw InvalidArgument("slot: node " + std::to_string(v) + " both transmits and receives");
}

void ProtocolParams::validate() const {
  require(delta > 0.0 && std::isfinite(delta), "protocol params: delta must be > 0");
  require(W > 0.0 && std::isfinite(W), "protocol params: W must be > 0");
  if (common_range) require(*common_range >= 0.0, "protocol params: common_range must be >= 0");
}

void PhysicalParams::validate() const {
  require(alpha > 2.0, "physical params: alpha must be > 2");
  require(beta > 0.0, "physical params: beta must be > 0");
  require(noise >= 0.0, "physical params: noise must be >= 0");
  require(p_ind > 0.0, "physical params: p_ind must be > 0");
}

ProtocolReport protocol_feasible(const Slot& slot, const NodePlacement& placement,
                                 const ProtocolParams& params) {
  params.validate();
  slot.validate(placement.size());
  const auto& pts = placement.points;
  const auto& tx = slot.transmissions;
  ProtocolReport report;
  for (std::size_t a = 0; a < tx.size(); ++a) {
    const double rho = distance(pts[tx[a].src], pts[tx[a].dst]);
    if (params.common_range && rho > *params.common_range)
      report.violations.push_back(
          {static_cast<int>(a), static_cast<int>(a), ProtocolViolation::Kind::OutOfRange});
    for (std::size_t b = 0; b < tx.size(); ++b) {
      if (a == b) continue;
      const double radius = (1.0 + params.delta) * distance(pts[tx[b].src], pts[tx[b].dst]);
      if (distance(pts[tx[b].src], pts[tx[a].dst]) <= radius)
        report.violations.push_back(
            {static_cast<int>(a), static_cast<int>(b), ProtocolViolation::Kind::Interference});
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

namespace {

double checked_distance(const NodePlacement& placement, NodeId a, NodeId b) {
  const double d = distance(placement.points[a], placement.points[b]);
  if (d <= 0.0)
    throw DegenerateGeometry("nodes " + std::to_string(a) + " and " + std::to_string(b) +
                             " share a position");
  return d;
}

}  // namespace

PhysicalReport physical_feasible(const Slot& slot, const NodePlacement& placement,
                                 const PhysicalParams& params) {
  params.validate();
  slot.validate(placement.size());
  const auto& tx = slot.transmissions;
  for (const auto& t : tx)
    require(t.power <= params.p_ind, "physical: transmission power exceeds p_ind");
  PhysicalReport report;
  report.sinr.resize(tx.size());
  for (std::size_t a = 0; a < tx.size(); ++a) {
    const double signal =
        tx[a].power * std::pow(checked_distance(placement, tx[a].src, tx[a].dst), -params.alpha);
    double interference = 0.0;
    for (std::size_t b = 0; b < tx.size(); ++b) {
      if (a == b) continue;
      const double gain = std::pow(checked_distance(placement, tx[b].src, tx[a].dst), -params.alpha);
      interference += params.literal_unweighted ? gain : tx[b].power * gain;
    }
    const double denom = params.noise + interference;
    report.sinr[a] = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
    if (!(report.sinr[a] >= params.beta)) report.feasible = false;
  }
  return report;
}

std::vector<OdPair> random_od_pairs(int n, std::uint64_t seed) {
  require(n >= 2, "random_od_pairs: n must be >= 2");
  Pcg32 rng(seed);
  std::vector<OdPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto j = static_cast<int>(rng.below(static_cast<std::uint32_t>(n - 1)));
    if (j >= i) ++j;
    pairs.emplace_back(i, j);
  }
  return pairs;
}

int CellScheme::color_of(int cell) const noexcept {
  const int m = reuse_distance;
  return (cell_y(cell) % m) * m + cell_x(cell) % m;
}

namespace {

int cell_coord(double v, int g) {
  const int c = static_cast<int>(std::floor(v * g));
  return std::clamp(c, 0, g - 1);
}

// Cells met by the segment a->b, in order (grid traversal). Corner crossings
// step diagonally.
std::vector<int> trace_cells(const Point& a, const Point& b, int g) {
  int cx = cell_coord(a.x, g), cy = cell_coord(a.y, g);
  const int ex = cell_coord(b.x, g), ey = cell_coord(b.y, g);
  std::vector<int> cells{cy * g + cx};
  const double h = 1.0 / g;
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double inf = std::numeric_limits<double>::infinity();
  const int sx = ex > cx ? 1 : (ex < cx ? -1 : 0);
  const int sy = ey > cy ? 1 : (ey < cy ? -1 : 0);
  double tmx = inf, tmy = inf, tdx = inf, tdy = inf;
  if (sx != 0) {
    tmx = ((cx + (sx > 0 ? 1 : 0)) * h - a.x) / dx;
    tdx = h / std::abs(dx);
  }
  if (sy != 0) {
    tmy = ((cy + (sy > 0 ? 1 : 0)) * h - a.y) / dy;
    tdy = h / std::abs(dy);
  }
  while (cx != ex || cy != ey) {
    const bool step_x = cx != ex && (cy == ey || tmx <= tmy);
    const bool step_y = cy != ey && (cx == ex || tmy <= tmx);
    if (step_x) {
      cx += sx;
      tmx += tdx;
    }
    if (step_y) {
      cy += sy;
      tmy += tdy;
    }
    cells.push_back(cy * g + cx);
  }
  return cells;
}

// Pairwise protocol check of two hops that may share a slot.
bool compatible(const NodePlacement& placement, const Hop& h1, const Hop& h2, double delta) {
  if (h1.tx == h2.tx || h1.tx == h2.rx || h1.rx == h2.tx) return false;
  const auto& p = placement.points;
  const double r1 = (1.0 + delta) * distance(p[h1.tx], p[h1.rx]);
  const double r2 = (1.0 + delta) * distance(p[h2.tx], p[h2.rx]);
  return distance(p[h2.tx], p[h1.rx]) > r2 && distance(p[h1.tx], p[h2.rx]) > r1;
}

}  // namespace

CellScheme build_cell_scheme(const NodePlacement& placement, const std::vector<OdPair>& od_pairs,
                             double kappa, const ProtocolParams& params) {
  params.validate();
  require(placement.domain == Domain::UnitSquare, "cell scheme: placement must be on the unit square");
  const int n = placement.size();
  require(n >= 1, "cell scheme: empty placement");
  require(kappa >= 1.0 && std::isfinite(kappa), "cell scheme: kappa must be >= 1");
  for (const auto& [s, d] : od_pairs)
    require(s >= 0 && s < n && d >= 0 && d < n, "cell scheme: OD pair index out of range");

  CellScheme scheme;
  scheme.placement = placement;
  scheme.od_pairs = od_pairs;
  int g = 1;
  if (n > 1) {
    const double side = std::sqrt(kappa * std::log(static_cast<double>(n)) / n);
    g = std::max(1, static_cast<int>(std::floor(1.0 / side)));
  }
  scheme.cells_per_side = g;
  scheme.cell_side = 1.0 / g;
  scheme.cell_of.resize(static_cast<std::size_t>(n));
  scheme.relay.assign(static_cast<std::size_t>(g) * g, -1);
  for (int v = 0; v < n; ++v) {
    const auto& p = placement.points[v];
    const int c = cell_coord(p.y, g) * g + cell_coord(p.x, g);
    scheme.cell_of[v] = c;
    if (scheme.relay[c] < 0) scheme.relay[c] = v;
  }

  std::vector<std::vector<Hop>> cell_hops(scheme.relay.size());
  std::set<std::pair<int, int>> seen;
  double longest_hop = 0.0;
  for (const auto& [s, d] : od_pairs) {
    auto route = trace_cells(placement.points[s], placement.points[d], g);
    std::vector<Hop> hops;
    if (s != d) {
      std::vector<NodeId> nodes{s};
      for (std::size_t t = 1; t + 1 < route.size(); ++t) {
        if (scheme.relay[route[t]] < 0)
          throw SchemeFailure("cell scheme: empty cell " + std::to_string(route[t]) +
                              " on route " + std::to_string(s) + "->" + std::to_string(d));
        nodes.push_back(scheme.relay[route[t]]);
      }
      nodes.push_back(d);
      for (std::size_t t = 0; t + 1 < nodes.size(); ++t) {
        const Hop hop{nodes[t], nodes[t + 1]};
        hops.push_back(hop);
        if (seen.insert({hop.tx, hop.rx}).second) {
          cell_hops[scheme.cell_of[hop.tx]].push_back(hop);
          longest_hop = std::max(longest_hop, distance(placement.points[hop.tx], placement.points[hop.rx]));
        }
      }
    }
    scheme.routes.push_back(std::move(route));
    scheme.hops.push_back(std::move(hops));
  }

  // Cells farther apart than this (L-inf, in cells) cannot interfere: a
  // receiver is at most one cell from its transmitter's cell.
  const double reach = (1.0 + params.delta) * longest_hop / scheme.cell_side;
  const int far = static_cast<int>(std::ceil(reach)) + 3;

  int m = static_cast<int>(std::ceil(2.0 * (1.0 + params.delta))) + 1;
  for (;; ++m) {
    if (m >= g || m > far) break;
    bool ok = true;
    for (int a = 0; a < g * g && ok; ++a) {
      if (cell_hops[a].empty()) continue;
      const int ax = a % g, ay = a / g;
      for (int by = ay % m; by < g && ok; by += m) {
        for (int bx = ax % m; bx < g && ok; bx += m) {
          const int b = by * g + bx;
          if (b <= a || cell_hops[b].empty()) continue;
          if (std::max(std::abs(ax - bx), std::abs(ay - by)) > far) continue;
          for (const auto& h1 : cell_hops[a]) {
            for (const auto& h2 : cell_hops[b]) {
              if (!compatible(placement, h1, h2, params.delta)) {
                ok = false;
                break;
              }
            }
            if (!ok) break;
          }
        }
      }
    }
    if (ok) break;
  }
  scheme.reuse_distance = m;
  return scheme;
}

double transport_capacity(const DeliveryLog& log) {
  require(log.duration > 0.0, "transport_capacity: duration must be > 0");
  double total = 0.0;
  for (const auto& e : log.entries) {
    require(e.bits >= 0.0 && e.distance >= 0.0, "transport_capacity: negative bits or distance");
    total += e.bits * e.distance;
  }
  return total / log.duration;
}

double protocol_upper_bound(int n, double area, const ProtocolParams& params) {
  params.validate();
  require(n >= 1, "protocol_upper_bound: n must be >= 1");
  require(area > 0.0, "protocol_upper_bound: area must be > 0");
  const double d = params.delta;
  return std::sqrt(8.0 / std::numbers::pi) * params.W * std::sqrt(area) * std::sqrt(static_cast<double>(n)) /
         std::sqrt((1.0 + d) * std::sqrt(d) * std::sqrt(2.0 + d));
}

ThroughputResult simulate_throughput(const CellScheme& scheme, const ProtocolParams& params,
                                     const SimulationOptions& options) {
  params.validate();
  require(options.rounds >= 1, "simulate_throughput: rounds must be >= 1");
  require(options.warmup_rounds >= 0, "simulate_throughput: warmup_rounds must be >= 0");
  const PhysicalParams* physical = options.physical ? &*options.physical : nullptr;
  if (physical) physical->validate();
  const int cells = scheme.cell_count();
  const int colors = scheme.colors();
  const std::size_t routes = scheme.hops.size();

  std::vector<std::vector<int>> by_color(static_cast<std::size_t>(colors));
  for (int c = 0; c < cells; ++c) by_color[scheme.color_of(c)].push_back(c);

  // queue[r][t]: packets of route r waiting for hop t (hop 0 is backlogged).
  std::vector<std::vector<long long>> queue(routes);
  std::vector<std::deque<std::pair<int, int>>> active(static_cast<std::size_t>(cells));
  for (std::size_t r = 0; r < routes; ++r) {
    queue[r].assign(scheme.hops[r].size(), 0);
    if (!scheme.hops[r].empty())
      active[scheme.cell_of[scheme.hops[r][0].tx]].emplace_back(static_cast<int>(r), 0);
  }

  ThroughputResult result;
  result.colors = colors;
  result.delivered.assign(routes, 0);
  Slot slot;
  std::vector<std::pair<int, int>> picked;
  const int total_rounds = options.warmup_rounds + options.rounds;
  for (int round = 0; round < total_rounds; ++round) {
    const bool measured = round >= options.warmup_rounds;
    for (int color = 0; color < colors; ++color) {
      slot.transmissions.clear();
      picked.clear();
      for (int c : by_color[color]) {
        if (active[c].empty()) continue;
        const auto item = active[c].front();
        active[c].pop_front();
        const Hop& hop = scheme.hops[item.first][item.second];
        slot.transmissions.push_back({hop.tx, hop.rx, physical ? physical->p_ind : 1.0});
        picked.push_back(item);
      }
      if (measured) ++result.slots;
      if (slot.transmissions.empty()) continue;
      result.transmissions += static_cast<long long>(slot.transmissions.size());
      const auto protocol = protocol_feasible(slot, scheme.placement, params);
      result.protocol_violations += static_cast<long long>(protocol.violations.size());
      std::vector<char> received(picked.size(), 1);
      if (physical) {
        const auto phys = physical_feasible(slot, scheme.placement, *physical);
        for (std::size_t q = 0; q < picked.size(); ++q) {
          if (!(phys.sinr[q] >= physical->beta)) {
            received[q] = 0;
            ++result.physical_failures;
          }
        }
      }
      for (std::size_t q = 0; q < picked.size(); ++q) {
        const auto [r, t] = picked[q];
        const auto& hops = scheme.hops[r];
        const int cell = scheme.cell_of[hops[t].tx];
        if (received[q]) {
          if (t > 0) --queue[r][t];
          if (t + 1 == static_cast<int>(hops.size())) {
            if (measured) ++result.delivered[r];
          } else if (++queue[r][t + 1] == 1) {
            active[scheme.cell_of[hops[t + 1].tx]].emplace_back(r, t + 1);
          }
        }
        if (t == 0 || queue[r][t] > 0) active[cell].emplace_back(r, t);
      }
    }
  }

  const double duration = static_cast<double>(result.slots) / params.W;
  result.per_pair.assign(routes, 0.0);
  double lambda = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t r = 0; r < routes; ++r) {
    if (scheme.hops[r].empty()) continue;
    result.per_pair[r] = static_cast<double>(result.delivered[r]) / duration;
    lambda = std::min(lambda, result.per_pair[r]);
    any = true;
    const auto [s, d] = scheme.od_pairs[r];
    result.log.entries.push_back({s, d, static_cast<double>(result.delivered[r]),
                                  distance(scheme.placement.points[s], scheme.placement.points[d])});
  }
  result.lambda_hat = any ? lambda : 0.0;
  result.log.duration = duration;
  return result;
}

}  // namespace sensornet::capacity

#include "sensornet/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sensornet/errors.hpp"
#include "sensornet/parallel.hpp"
#include "sensornet/random.hpp"

namespace sensornet {

double distance_squared(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const Point& a, const Point& b) noexcept {
  return std::sqrt(distance_squared(a, b));
}

std::string to_string(Domain domain) {
  return domain == Domain::UnitAreaDisk ? "disk" : "square";
}

Domain parse_domain(const std::string& text) {
  if (text == "disk") return Domain::UnitAreaDisk;
  if (text == "square") return Domain::UnitSquare;
  throw InvalidArgument("unknown domain '" + text + "' (expected disk|square)");
}

double unit_disk_radius() noexcept { return 1.0 / std::sqrt(std::numbers::pi); }

double domain_diameter(Domain domain) noexcept {
  return domain == Domain::UnitAreaDisk ? 2.0 * unit_disk_radius() : std::numbers::sqrt2;
}

bool contains(Domain domain, const Point& p) noexcept {
  if (domain == Domain::UnitSquare) return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
  const double r = unit_disk_radius();
  return p.x * p.x + p.y * p.y <= r * r;
}

namespace rgg {
namespace {

// Uniform bucket grid over the bounding box of a placement.
class BucketGrid {
 public:
  BucketGrid(const NodePlacement& placement, int cells_per_side)
      : points_(placement.points), side_(std::max(cells_per_side, 1)) {
    if (placement.domain == Domain::UnitSquare) {
      origin_ = 0.0;
      extent_ = 1.0;
    } else {
      origin_ = -unit_disk_radius();
      extent_ = 2.0 * unit_disk_radius();
    }
    cell_ = extent_ / side_;
    start_.assign(static_cast<std::size_t>(side_ * side_) + 1, 0);
    std::vector<int> cell_of(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      cell_of[i] = index(coord(points_[i].x), coord(points_[i].y));
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    members_.resize(points_.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i) members_[fill[cell_of[i]]++] = static_cast<int>(i);
  }

  int side() const { return side_; }
  double cell() const { return cell_; }
  int coord(double v) const {
    return std::clamp(static_cast<int>(std::floor((v - origin_) / cell_)), 0, side_ - 1);
  }
  int index(int cx, int cy) const { return cy * side_ + cx; }

  template <typename Fn>
  void for_each_in(int cx, int cy, Fn&& fn) const {
    if (cx < 0 || cy < 0 || cx >= side_ || cy >= side_) return;
    const int c = index(cx, cy);
    for (int m = start_[c]; m < start_[c + 1]; ++m) fn(members_[m]);
  }

 private:
  const std::vector<Point>& points_;
  int side_;
  double origin_ = 0.0;
  double extent_ = 1.0;
  double cell_ = 1.0;
  std::vector<int> start_;
  std::vector<int> members_;
};

int grid_side_for(double extent, double cell_size, int n) {
  const int cap = std::max(1, static_cast<int>(2.0 * std::sqrt(static_cast<double>(n))) + 1);
  if (!(cell_size > 0.0)) return cap;
  const double cells = std::floor(extent / cell_size);
  if (cells < 1.0) return 1;
  return static_cast<int>(std::min<double>(cells, cap));
}

double bounding_extent(Domain domain) {
  return domain == Domain::UnitSquare ? 1.0 : 2.0 * unit_disk_radius();
}

}  // namespace

NodePlacement place_uniform(int n, Domain domain, std::uint64_t seed) {
  detail::require(n >= 1, "place_uniform: n must be at least 1");
  NodePlacement placement;
  placement.domain = domain;
  placement.seed = seed;
  placement.points.reserve(static_cast<std::size_t>(n));
  Pcg32 rng(seed);
  if (domain == Domain::UnitSquare) {
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      placement.points.push_back({x, y});
    }
  } else {
    const double r = unit_disk_radius();
    while (placement.size() < n) {
      const double x = rng.uniform(-r, r);
      const double y = rng.uniform(-r, r);
      if (x * x + y * y <= r * r) placement.points.push_back({x, y});
    }
  }
  return placement;
}

Graph build_range_graph(const NodePlacement& placement, double r) {
  detail::require(r >= 0.0, "build_range_graph: range must be non-negative");
  const int n = placement.size();
  std::vector<Edge> edges;
  if (r == 0.0 || n < 2) return Graph(n, {});
  const BucketGrid grid(placement, grid_side_for(bounding_extent(placement.domain), r, n));
  const double r2 = r * r;
  const auto& pts = placement.points;
  for (int cy = 0; cy < grid.side(); ++cy) {
    for (int cx = 0; cx < grid.side(); ++cx) {
      grid.for_each_in(cx, cy, [&](int i) {
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx)
            grid.for_each_in(cx + dx, cy + dy, [&](int j) {
              if (j > i && distance_squared(pts[i], pts[j]) < r2) edges.emplace_back(i, j);
            });
      });
    }
  }
  return Graph(n, std::move(edges));
}

Graph build_knn_graph(const NodePlacement& placement, int k) {
  const int n = placement.size();
  detail::require(k >= 1 && k <= n - 1, "build_knn_graph: k must lie in [1, n-1]");
  const double extent = bounding_extent(placement.domain);
  const double target_cell = extent * std::sqrt(static_cast<double>(k + 1) / n);
  const BucketGrid grid(placement, grid_side_for(extent, target_cell, n));
  const auto& pts = placement.points;

  struct Candidate {
    double d2;
    int idx;
    bool operator<(const Candidate& o) const { return d2 < o.d2 || (d2 == o.d2 && idx < o.idx); }
  };

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  std::vector<Candidate> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    const int cx = grid.coord(pts[i].x);
    const int cy = grid.coord(pts[i].y);
    const auto visit = [&](int j) {
      if (j != i) cand.push_back({distance_squared(pts[i], pts[j]), j});
    };
    for (int ring = 0;; ++ring) {
      if (ring == 0) {
        grid.for_each_in(cx, cy, visit);
      } else {
        for (int d = -ring; d <= ring; ++d) {
          grid.for_each_in(cx + d, cy - ring, visit);
          grid.for_each_in(cx + d, cy + ring, visit);
        }
        for (int d = -ring + 1; d <= ring - 1; ++d) {
          grid.for_each_in(cx - ring, cy + d, visit);
          grid.for_each_in(cx + ring, cy + d, visit);
        }
      }
      const bool exhausted = ring >= grid.side();
      if (static_cast<int>(cand.size()) >= k) {
        std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
        // Unvisited points are at least ring * cell away.
        const double reach = ring * grid.cell();
        if (exhausted || cand[k - 1].d2 < reach * reach) break;
      } else if (exhausted) {
        break;
      }
    }
    for (int m = 0; m < k; ++m) edges.emplace_back(i, cand[m].idx);
  }
  return Graph(n, std::move(edges));
}

Graph build_er_graph(int n, double p, std::uint64_t seed) {
  detail::require(n >= 1, "build_er_graph: n must be at least 1");
  detail::require(p >= 0.0 && p <= 1.0, "build_er_graph: p must lie in [0, 1]");
  Pcg32 rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

double critical_range(int n, double c) {
  detail::require(n >= 1, "critical_range: n must be at least 1");
  const double num = std::log(static_cast<double>(n)) + c;
  detail::require(num > 0.0, "critical_range: ln n + c must be positive");
  return std::sqrt(num / (std::numbers::pi * n));
}

double critical_probability(int n, double c) {
  detail::require(n >= 1, "critical_probability: n must be at least 1");
  return (std::log(static_cast<double>(n)) + c) / n;
}

std::string to_string(Model model) {
  switch (model) {
    case Model::Range: return "range";
    case Model::Knn: return "knn";
    case Model::ErdosRenyi: return "er";
  }
  return "unknown";
}

Model parse_model(const std::string& text) {
  if (text == "range") return Model::Range;
  if (text == "knn") return Model::Knn;
  if (text == "er") return Model::ErdosRenyi;
  throw InvalidArgument("unknown model '" + text + "' (expected range|knn|er)");
}

ConnectivityEstimate wilson_estimate(int successes, int trials) {
  detail::require(trials >= 1, "wilson_estimate: trials must be at least 1");
  detail::require(successes >= 0 && successes <= trials, "wilson_estimate: successes out of range");
  constexpr double z = 1.959963984540054;
  const double nt = trials;
  const double p = successes / nt;
  const double z2n = z * z / nt;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / nt + z2n / (4.0 * nt));
  ConnectivityEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.p_hat = p;
  e.ci_low = std::clamp(std::min(center - half, p), 0.0, 1.0);
  e.ci_high = std::clamp(std::max(center + half, p), 0.0, 1.0);
  if (successes == 0) e.ci_low = 0.0;
  if (successes == trials) e.ci_high = 1.0;
  return e;
}

std::vector<bool> connectivity_outcomes(Model model, int n, double param, int trials,
                                        std::uint64_t seed, const ConnectivityOptions& options) {
  detail::require(n >= 1, "connectivity: n must be at least 1");
  detail::require(trials >= 1, "connectivity: trials must be at least 1");
  switch (model) {
    case Model::Range:
      detail::require(param >= 0.0, "connectivity: range must be non-negative");
      break;
    case Model::Knn:
      detail::require(param == std::floor(param) && param >= 1.0 && param <= n - 1,
                      "connectivity: k must be an integer in [1, n-1]");
      break;
    case Model::ErdosRenyi:
      detail::require(param >= 0.0 && param <= 1.0, "connectivity: p must lie in [0, 1]");
      break;
  }
  std::vector<char> connected(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), options.threads, [&](std::size_t t) {
    const std::uint64_t sub = seed ^ static_cast<std::uint64_t>(t);
    Graph g;
    switch (model) {
      case Model::Range:
        g = build_range_graph(place_uniform(n, options.domain, sub), param);
        break;
      case Model::Knn:
        g = build_knn_graph(place_uniform(n, options.domain, sub), static_cast<int>(param));
        break;
      case Model::ErdosRenyi:
        g = build_er_graph(n, param, sub);
        break;
    }
    connected[t] = is_connected(g) ? 1 : 0;
  });
  return {connected.begin(), connected.end()};
}

ConnectivityEstimate connectivity_probability(Model model, int n, double param, int trials,
                                              std::uint64_t seed,
                                              const ConnectivityOptions& options) {
  const auto outcomes = connectivity_outcomes(model, n, param, trials, seed, options);
  const int successes = static_cast<int>(std::count(outcomes.begin(), outcomes.end(), true));
  return wilson_estimate(successes, trials);
}

}  // namespace rgg
}  // namespace sensornet

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sensornet/graph.hpp"

namespace sensornet {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b) noexcept;
double distance_squared(const Point& a, const Point& b) noexcept;

/// Deployment regions of unit area.
enum class Domain {
  UnitAreaDisk,  ///< disk of radius 1/sqrt(pi) centered at the origin
  UnitSquare,    ///< [0,1]^2
};

std::string to_string(Domain domain);
Domain parse_domain(const std::string& text);

/// Radius of the unit-area disk.
double unit_disk_radius() noexcept;
/// Largest distance between two points of the domain.
double domain_diameter(Domain domain) noexcept;
bool contains(Domain domain, const Point& p) noexcept;

struct NodePlacement {
  std::vector<Point> points;
  Domain domain = Domain::UnitAreaDisk;
  std::uint64_t seed = 0;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

namespace rgg {

/// n i.i.d. uniform points; the disk is sampled by rejection from its
/// bounding square. Bit-identical for identical (n, domain, seed).
NodePlacement place_uniform(int n, Domain domain, std::uint64_t seed);

/// Edge (i, j) iff distance(i, j) < r.
Graph build_range_graph(const NodePlacement& placement, double r);

/// Undirected union of the directed k-nearest-neighbor relations; distance
/// ties are broken by the smaller node index.
Graph build_knn_graph(const NodePlacement& placement, int k);

/// Each of the C(n,2) pairs present independently with probability p. Pairs
/// are visited in lexicographic order and consume one uniform each, so graphs
/// for p1 <= p2 with a common seed are nested.
Graph build_er_graph(int n, double p, std::uint64_t seed);

/// r = sqrt((ln n + c) / (pi n)), the range at which pi r^2 = (ln n + c)/n.
double critical_range(int n, double c);

/// ER edge probability p = (ln n + c)/n.
double critical_probability(int n, double c);

enum class Model { Range, Knn, ErdosRenyi };
std::string to_string(Model model);
Model parse_model(const std::string& text);

struct ConnectivityEstimate {
  int trials = 0;
  int successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   ///< 95% Wilson interval
  double ci_high = 0.0;
};

/// 95% Wilson score interval for `successes` out of `trials`.
ConnectivityEstimate wilson_estimate(int successes, int trials);

struct ConnectivityOptions {
  Domain domain = Domain::UnitAreaDisk;
  int threads = 1;
};

/// Monte Carlo estimate of P(connected). Trial t uses the sub-seed
/// seed ^ t for a fresh placement (or ER draw), so calls that share a seed
/// see common random numbers across parameter values.
ConnectivityEstimate connectivity_probability(Model model, int n, double param, int trials,
                                              std::uint64_t seed,
                                              const ConnectivityOptions& options = {});

/// Per-trial connectivity outcomes behind connectivity_probability.
std::vector<bool> connectivity_outcomes(Model model, int n, double param, int trials,
                                        std::uint64_t seed,
                                        const ConnectivityOptions& options = {});

}  // namespace rgg
}  // namespace sensornet

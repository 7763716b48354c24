#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sensornet/graph.hpp"
#include "sensornet/linalg.hpp"

namespace sensornet::clocks {

/// tau(t) = a t + b of reference time t.
struct AffineClock {
  double a = 1.0;  ///< skew, > 0
  double b = 0.0;  ///< offset
};

/// Node 0 is the reference clock (a = 1, b = 0). Delays are fixed, in
/// reference-time units, one per directed link of `graph`.
struct ClockWorld {
  std::vector<AffineClock> clocks;
  std::map<Edge, double> delays;
  Graph graph{0, {}, true};

  int size() const noexcept { return static_cast<int>(clocks.size()); }
  /// Throws InvalidArgument if an invariant is broken.
  void validate() const;
};

struct WorldOptions {
  double skew_lo = 0.5;
  double skew_hi = 2.0;
  double offset_span = 10.0;  ///< offsets uniform in [-span, span]
  double delay_lo = 0.0;
  double delay_hi = 2.0;
};

/// Random clocks and delays over the directed links of `graph` (an undirected
/// graph contributes both orientations). Node 0 stays the identity clock.
ClockWorld random_world(const Graph& graph, std::uint64_t seed, const WorldOptions& options = {});

struct SendEvent {
  NodeId i = 0;    ///< sender
  NodeId j = 0;    ///< receiver
  double s = 0.0;  ///< send stamp, sender clock
};

struct PacketRecord {
  NodeId i = 0;
  NodeId j = 0;
  int k = 0;       ///< index of the packet on link (i, j)
  double s = 0.0;  ///< send stamp, sender clock
  double r = 0.0;  ///< receive stamp, receiver clock
};

/// Optional zero-mean Gaussian jitter on receive stamps.
struct JitterModel {
  double variance = 0.0;                ///< default per-link variance
  std::map<Edge, double> link_variance;  ///< overrides per directed link
  std::uint64_t seed = 0;
};

/// r = a_j ((s - b_i)/a_i + d_ij) + b_j (plus jitter when given).
std::vector<PacketRecord> simulate_exchange(const ClockWorld& world,
                                            const std::vector<SendEvent>& sends,
                                            const JitterModel* jitter = nullptr);

/// Two packets on every directed link, sent near sender stamps 10 and 20.
std::vector<PacketRecord> standard_exchange(const ClockWorld& world);

/// (r2 - r1) / (s2 - s1): the skew ratio a_j / a_i of link (i, j).
double estimate_relative_skew(const PacketRecord& p1, const PacketRecord& p2);

/// One round trip: i stamps s_i, j receives at r_ij; j stamps s_j, i receives
/// at r_ji.
struct PingPong {
  double s_i = 0.0;
  double r_ij = 0.0;
  double s_j = 0.0;
  double r_ji = 0.0;
};

/// Extracts round k of link pair (i, j) from a log. Throws InsufficientData.
PingPong find_pingpong(const std::vector<PacketRecord>& log, NodeId i, NodeId j, int k = 0);

struct DelayOffset {
  double d_hat = 0.0;    ///< a_i (d_ij + d_ji) / 2, i.e. in node i's clock units
  double tau_hat = 0.0;  ///< estimate of tau_j - tau_i at the receipt of the j->i packet
};

/// d_hat = ((r_ji - s_j) + (r_ij - s_i) + (s_j - r_ij)(1 - a_ji)) / 2 and
/// tau_hat = s_j - r_ji + a_ij d_hat, with a_ij = a_j/a_i and a_ji = a_i/a_j.
/// tau_hat is off by a_j (d_ij - d_ji)/2, so it is exact for symmetric delays.
DelayOffset estimate_delay_and_offset(const PingPong& stamps, double a_ij, double a_ji);

/// d_ij + d_ji in reference units: 2 d_hat / a_i (a_i = 1 when i is the reference).
double roundtrip_delay(const PingPong& stamps, double a_ij, double a_ji, double a_i = 1.0);

/// Offset b of node j relative to the reference node 0.
struct UncertaintyInterval {
  bool bounded = false;
  double lo = 0.0;
  double hi = 0.0;
  double skew = 1.0;  ///< a_j used for the constraints
  /// Without causality: the consistent set is the line anchor + t * direction
  /// in (b, d_0j, d_j0) space.
  std::array<double, 3> anchor{};
  std::array<double, 3> direction{};
};

/// Every (b, d_0j, d_j0) consistent with the stamps. With causality (delays
/// >= 0) b is confined to [max(s' - a r'), min(r - a s)] over packets 0->j
/// (s, r) and j->0 (s', r'); the length is a (d_0j + d_j0). The skew is
/// estimated from the log unless given. Throws InsufficientData when a
/// direction is missing or the skew cannot be estimated.
UncertaintyInterval offset_uncertainty_interval(const std::vector<PacketRecord>& log, NodeId j,
                                                bool causality,
                                                std::optional<double> skew = std::nullopt);

/// Offsets b (b_0 = 0) consistent with a network log under causality:
/// d_ij(b) = h_ij - b_j/a_j + b_i/a_i >= 0 for every link.
class OffsetPolyhedron {
 public:
  struct Row {
    NodeId i = 0;
    NodeId j = 0;
    double h = 0.0;
  };

  OffsetPolyhedron(std::vector<double> skews, std::vector<Row> rows);

  int size() const noexcept { return static_cast<int>(skews_.size()); }
  const std::vector<double>& skews() const noexcept { return skews_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  /// The affine map b -> per-row delay (b has all n entries, b[0] ignored).
  std::vector<double> delays(const std::vector<double>& b) const;
  bool contains(const std::vector<double>& b, double tol = 1e-9) const;
  /// Largest t with every d_ij(b) >= t (capped at 1), over b.
  double interior_margin() const;
  /// Nonempty interior iff the margin exceeds eps.
  bool has_interior(double eps = 1e-9) const { return interior_margin() > eps; }
  /// min and max of b_j over the polyhedron.
  std::pair<double, double> offset_range(NodeId j) const;

 private:
  std::vector<double> skews_;
  std::vector<Row> rows_;
};

/// Skews are recovered along links carrying two packets with distinct send
/// stamps, starting from the reference. Throws InsufficientData when the link
/// graph is not strongly connected or a skew is unrecoverable.
OffsetPolyhedron offset_uncertainty_polyhedron(int n, const std::vector<PacketRecord>& log);

/// o_hat estimates tau_j - tau_i for link (i, j).
struct OffsetMeasurement {
  NodeId i = 0;
  NodeId j = 0;
  double o_hat = 0.0;
  double variance = 1.0;
};

/// Consistent measurements o_ij = v_j - v_i for every edge of `graph`.
std::vector<OffsetMeasurement> exact_measurements(const Graph& graph,
                                                  const std::vector<double>& offsets);

/// Weighted Laplacian (weights 1/variance) with node 0 removed.
DenseMatrix reduced_laplacian(int n, const std::vector<OffsetMeasurement>& measurements);

/// argmin sum (o_ij - (v_j - v_i))^2 / var_ij with v_0 = 0.
/// Throws SingularSystem when the measurement graph is disconnected.
std::vector<double> ls_offsets(int n, const std::vector<OffsetMeasurement>& measurements);

/// Var(v_hat_i) per node (0 at the reference): the diagonal of the inverse
/// reduced Laplacian, equal to the effective resistance to node 0 when each
/// link is a resistor of its variance.
std::vector<double> estimator_variance(int n, const std::vector<OffsetMeasurement>& measurements);
/// Same, with one link per graph edge carrying variances[e].
std::vector<double> estimator_variance(const Graph& graph, const std::vector<double>& variances);

/// F(v) = sum (o_ij - (v_j - v_i))^2 / var_ij.
double objective(const std::vector<double>& v, const std::vector<OffsetMeasurement>& measurements);

struct SmoothingState {
  std::vector<double> v;  ///< v[0] is pinned to 0
  std::vector<OffsetMeasurement> measurements;

  SmoothingState(int n, std::vector<OffsetMeasurement> measurements);
  int size() const noexcept { return static_cast<int>(v.size()); }
};

struct AsyncTrajectory {
  std::vector<double> objective;   ///< F before any update, then after each update
  std::vector<double> error_norm;  ///< ||v - v_ls|| at the same points
  std::vector<double> v;           ///< final estimates
};

/// Node i sets v_i to the variance-weighted mean of v_j - o_ij (stored as
/// (i, j)) and v_j + o_ji (stored as (j, i)) over its links; with unit
/// variances this is the plain neighbor average. Updating node 0 throws.
AsyncTrajectory smoothing_async(SmoothingState& state, const std::vector<NodeId>& order);

/// Round-robin order 1..n-1 repeated `sweeps` times.
std::vector<NodeId> round_robin_order(int n, int sweeps);

struct SyncOptions {
  int max_iterations = 200000;
  int min_iterations = 0;
  double relative_tol = 1e-13;  ///< stop when ||v_k - v_ls|| <= tol * ||v_0 - v_ls||
};

struct SyncTrajectory {
  std::vector<double> error_norm;  ///< ||v_k - v_ls||, k = 0..iterations
  std::vector<double> objective;
  std::vector<double> v;
  int iterations = 0;
  /// Geometric mean of successive error ratios over the last quartile of the
  /// iterations (0 when the error vanishes within one step).
  double measured_rate = 0.0;
};

/// v_{k+1} = v_k + D^{-1}(b - L v_k) on non-reference nodes, i.e. every node
/// performs the async update simultaneously.
SyncTrajectory smoothing_sync(SmoothingState& state, const SyncOptions& options = {});

/// M = I - D^{-1} L restricted to the non-reference nodes (weights 1/variance).
DenseMatrix smoothing_matrix(int n, const std::vector<OffsetMeasurement>& measurements);
/// Unit weights, one link per edge.
DenseMatrix smoothing_matrix(const Graph& graph);

/// rho(M) through the symmetric similar matrix I - D^{-1/2} L D^{-1/2}.
double smoothing_spectral_radius(int n, const std::vector<OffsetMeasurement>& measurements);
double smoothing_spectral_radius(const Graph& graph);

struct CheegerBounds {
  double lower = 0.0;
  double upper = 0.0;
  int kappa = 0;
  int d0 = 0;
  long long degree_sum = 0;  ///< over the non-reference nodes
};

/// 1 - 2 d_0 / sum_{i>0} d_i <= rho(M) <= 1 - (kappa / sum_{i>0} d_i)^2.
/// kappa is computed by max-flow unless supplied (required above 1000 edges).
CheegerBounds cheeger_bounds(const Graph& graph, std::optional<int> kappa = std::nullopt);

/// Synchronous iterations from v = 0 until the error falls to eps of its
/// initial value, with consistent measurements of the given offsets.
int settling_iterations(const Graph& graph, const std::vector<double>& offsets, double eps);

}  // namespace sensornet::clocks

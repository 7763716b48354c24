#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sensornet/graph.hpp"
#include "sensornet/rgg.hpp"

namespace sensornet::capacity {

struct Transmission {
  NodeId src = 0;
  NodeId dst = 0;
  double power = 1.0;  ///< watts; only the physical model reads it
};

/// Concurrently active transmissions. No node may transmit twice, and no node
/// may both transmit and receive within one slot.
struct Slot {
  std::vector<Transmission> transmissions;

  /// Throws InvalidArgument on bad indices or a violated slot invariant.
  void validate(int node_count) const;
};

struct ProtocolParams {
  double delta = 1.0;  ///< guard factor: interference disk radius is (1+delta) * link length
  double W = 1.0;      ///< per-node link rate, bits/sec
  std::optional<double> common_range;

  void validate() const;
};

struct PhysicalParams {
  double alpha = 4.0;  ///< path-loss exponent, > 2
  double beta = 1.0;   ///< SINR threshold
  double noise = 0.0;  ///< ambient noise power N
  double p_ind = 1.0;  ///< per-node power cap
  /// Interference term without the interferers' powers (sum of rho^-alpha).
  bool literal_unweighted = false;

  void validate() const;
};

struct ProtocolViolation {
  enum class Kind { Interference, OutOfRange };
  int victim = 0;      ///< index into slot.transmissions whose reception fails
  int interferer = 0;  ///< offending transmission (== victim for OutOfRange)
  Kind kind = Kind::Interference;
};

struct ProtocolReport {
  bool feasible = true;
  std::vector<ProtocolViolation> violations;
};

/// Reception i->j fails if dist(k, j) <= (1+delta) * dist(k, l) for some other
/// active k->l (closed interference disk centered at the transmitter k), or if
/// dist(i, j) exceeds the configured common range.
ProtocolReport protocol_feasible(const Slot& slot, const NodePlacement& placement,
                                 const ProtocolParams& params);

struct PhysicalReport {
  bool feasible = true;
  std::vector<double> sinr;  ///< per transmission, +inf when noise and interference vanish
};

/// SINR(j) = P_i rho_ij^-alpha / (N + sum_{k != i} P_k rho_kj^-alpha) >= beta.
/// Throws DegenerateGeometry when a needed distance is zero.
PhysicalReport physical_feasible(const Slot& slot, const NodePlacement& placement,
                                 const PhysicalParams& params);

using OdPair = std::pair<NodeId, NodeId>;

/// Each node picks a uniformly random destination other than itself.
std::vector<OdPair> random_od_pairs(int n, std::uint64_t seed);

struct Hop {
  NodeId tx = 0;
  NodeId rx = 0;
};

/// Square cells over the unit square with one relay per cell, straight-line
/// cell routes and a lattice TDMA coloring with reuse distance m.
struct CellScheme {
  NodePlacement placement;
  int cells_per_side = 1;
  double cell_side = 1.0;
  int reuse_distance = 1;  ///< m: same-colored cells are >= m apart in L-inf cell distance
  std::vector<int> cell_of;        ///< per node
  std::vector<NodeId> relay;       ///< per cell, -1 when empty
  std::vector<OdPair> od_pairs;
  std::vector<std::vector<int>> routes;  ///< per pair: cells met by the src->dst segment
  std::vector<std::vector<Hop>> hops;    ///< per pair: node-level transmissions

  int cell_count() const noexcept { return cells_per_side * cells_per_side; }
  /// The frame has m^2 slots; color c activates every cell with
  /// (cx mod m, cy mod m) == (c / m, c % m).
  int colors() const noexcept { return reuse_distance * reuse_distance; }
  int color_of(int cell) const noexcept;
  int cell_x(int cell) const noexcept { return cell % cells_per_side; }
  int cell_y(int cell) const noexcept { return cell / cells_per_side; }
};

/// Cell side s = sqrt(kappa ln n / n), rounded so cells tile the square. The
/// reuse distance starts at ceil(2(1+delta)) + 1 and grows until every pair
/// of possible hops from two same-colored cells is protocol-feasible, which
/// makes every slot the scheduler can emit feasible.
/// Throws SchemeFailure when a route meets an empty cell.
CellScheme build_cell_scheme(const NodePlacement& placement, const std::vector<OdPair>& od_pairs,
                             double kappa, const ProtocolParams& params);

struct DeliveryEntry {
  NodeId source = 0;
  NodeId destination = 0;
  double bits = 0.0;
  double distance = 0.0;
};

struct DeliveryLog {
  std::vector<DeliveryEntry> entries;
  double duration = 1.0;  ///< seconds
};

/// Sum of bits x distance over the log, divided by its duration.
double transport_capacity(const DeliveryLog& log);

/// sqrt(8/pi) W sqrt(A n) / sqrt((1+delta) sqrt(delta) sqrt(2+delta)).
double protocol_upper_bound(int n, double area, const ProtocolParams& params);

struct SimulationOptions {
  int rounds = 100;         ///< frames of colors() slots after the warm-up
  int warmup_rounds = 0;    ///< frames run before counting deliveries
  std::optional<PhysicalParams> physical;
};

struct ThroughputResult {
  double lambda_hat = 0.0;            ///< min over OD pairs, bits/sec
  std::vector<double> per_pair;       ///< bits/sec (0 for self pairs)
  std::vector<long long> delivered;   ///< packets (bits) per pair in the measured window
  long long slots = 0;                ///< measured slots
  int colors = 0;
  long long transmissions = 0;        ///< over all slots, warm-up included
  long long protocol_violations = 0;  ///< receptions that failed the protocol check
  long long physical_failures = 0;    ///< receptions below the SINR threshold
  DeliveryLog log;                    ///< measured window
};

/// Slotted simulation: frames of colors() slots, each slot activating one
/// color class. An active cell forwards one packet, serving its non-empty
/// per-route FIFO queues round robin; sources are backlogged. One slot moves
/// one bit one hop and lasts 1/W seconds. Every emitted slot is checked with
/// protocol_feasible. With physical parameters, a reception below the SINR
/// threshold (all transmitters at p_ind) is not delivered and is retried.
/// Deliveries count only after the warm-up frames, so that lambda_hat
/// reflects the filled pipeline.
ThroughputResult simulate_throughput(const CellScheme& scheme, const ProtocolParams& params,
                                     const SimulationOptions& options);

}  // namespace sensornet::capacity

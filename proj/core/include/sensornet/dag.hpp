#pragma once

#include <optional>
#include <vector>

#include "sensornet/function_table.hpp"
#include "sensornet/tree_codes.hpp"

namespace sensornet::compute {

/// Sum of the rates on `edges` must be at least `bound`.
struct CutInequality {
  std::vector<NodeId> subset;  ///< the source side S (collector excluded)
  std::vector<int> edges;      ///< edges leaving S
  double bound = 0.0;
};

/// Largest number of non-collector nodes for cut enumeration.
inline constexpr int kMaxCutNodes = 20;

/// One inequality per nonempty node set S without the collector: the rates
/// leaving S carry at least log2(#classes of S's joint input relative to the
/// rest) in the worst case, or H(class of S's input | rest's input) in the
/// average case.
std::vector<CutInequality> dag_cut_outer_bound(const Network& network, const FunctionTable& f,
                                               CodingMode mode,
                                               const std::optional<std::vector<double>>& p = std::nullopt);

/// Every inequality holds up to tol.
bool satisfies_cuts(const std::vector<CutInequality>& cuts, const std::vector<double>& rates,
                    double tol = 1e-9);

struct TreeRegion {
  std::vector<std::vector<double>> points;  ///< per tree, one rate per network edge
  std::vector<std::vector<int>> trees;      ///< out-edge chosen per node (-1 at the collector)
};

/// Rate points of the in-trees obtained by letting each non-collector node
/// keep one out-edge, coded with tree_zero_error_codes; duplicates removed.
/// Throws Infeasible when some node has no path to the collector.
TreeRegion tree_achievable_region(const Network& network, const FunctionTable& f, CodingMode mode,
                                  const std::optional<std::vector<double>>& p = std::nullopt);

/// Whether `rates` is a convex combination of the tree points (or dominates
/// one when allow_excess is set).
bool in_tree_hull(const TreeRegion& region, const std::vector<double>& rates, bool allow_excess = false);

enum class Aggregate { Parity, Max, Min };

struct ParityResult {
  std::vector<long long> edge_symbols;  ///< symbols sent per edge
  std::vector<double> rates;            ///< bits per instance per edge
  std::vector<int> output;              ///< the collector's block
};

/// Block aggregation on a DAG: in topological order every node folds its own
/// block with the partial results received for each position, then sends
/// contiguous segments of the N positions along its out-edges in proportion
/// split[v][k] (k-th out-edge in edge order). Blocks hold symbols of
/// {0..q-1}; an empty block means the node has no measurement. Parity is the
/// sum mod q. Throws InvalidArgument for fractions that do not sum to 1 or
/// give non-integral segments.
ParityResult dag_parity_scheme(const Network& network, const std::vector<std::vector<int>>& blocks,
                               const std::vector<std::vector<double>>& split, int q,
                               Aggregate aggregate = Aggregate::Parity);

/// Three nodes v1 (collector, index 0, no measurement), v2 (index 1) and v3
/// (index 2) with binary inputs; edges v2->v1, v3->v1, v3->v2 in that order,
/// so rate vectors read (R21, R31, R32).
Network counterexample_network();

/// f = x2 + x3 on counterexample_network().
FunctionTable counterexample_sum();

}  // namespace sensornet::compute

#pragma once

#include <cstddef>
#include <vector>

#include "sensornet/function_table.hpp"

namespace sensornet::compute {

/// log2 C(n+1, theta), 0 <= theta <= n+1.
double threshold_complexity(int n, int theta);

struct IntervalBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool low_branch = true;  ///< a + b <= n
};

/// For a + b <= n: log2[C(n+1,b+1) + C(n,a-1)] and
/// log2[C(n+1,b+1) + (b-a+1) C(n,a-1)]; otherwise log2[C(n+1,a) + C(n,b+1)]
/// and log2[C(n+1,a) + (b-a+1) C(n,b+1)]. Binomials outside 0..n are 0.
IntervalBounds interval_complexity_bounds(int n, int a, int b);

struct FoolingSetOptions {
  std::size_t max_inputs = 4096;          ///< larger tables raise ResourceLimit
  std::size_t node_budget = 20000000;     ///< branch-and-bound nodes before falling back to greedy
};

struct FoolingSetResult {
  std::vector<std::vector<int>> elements;  ///< lexicographically least among the maximum sets when exact
  double bound = 0.0;                      ///< log2 |E|
  bool exact = true;                       ///< false: greedy set, a lower bound on the maximum
};

/// Distinct u, v may share a fooling set iff f(u) != f(v) or some
/// coordinate-wise mix w (w_i in {u_i, v_i}) has f(w) != f(u). Returns a
/// maximum such set (include-first branch and bound).
FoolingSetResult fooling_set_lower_bound(const FunctionTable& f, const FoolingSetOptions& options = {});

/// Whether `set` satisfies the multiparty fooling condition.
bool is_fooling_set(const FunctionTable& f, const std::vector<std::vector<int>>& set);

struct AndTranscript {
  int zeros = 0;                   ///< k, the zeros in node 1's block
  std::vector<bool> message1;      ///< k, then the rank of the zero positions
  std::vector<bool> message2;      ///< node 2's bits where node 1 holds a 1
  std::vector<bool> output1;       ///< AND block as computed by node 1
  std::vector<bool> output2;       ///< AND block as computed by node 2
  std::size_t total_bits() const noexcept { return message1.size() + message2.size(); }
};

/// Node 1 sends k in ceil(log2(N+1)) bits and the combinatorial-number-system
/// rank of its zero positions in ceil(log2 C(N,k)) bits; node 2 answers with
/// its N-k bits at node 1's one positions.
AndTranscript and_block_protocol(const std::vector<bool>& x1, const std::vector<bool>& x2);

/// max_k [ceil(log2 C(N,k)) + N - k] + ceil(log2(N+1)).
long long and_worst_case_bits(int N);

}  // namespace sensornet::compute

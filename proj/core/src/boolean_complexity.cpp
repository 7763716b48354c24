#include "sensornet/boolean_complexity.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "sensornet/errors.hpp"

namespace sensornet::compute {

using boost::multiprecision::cpp_int;
using detail::require;

namespace {

cpp_int binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double log2_of(const cpp_int& x) {
  require(x > 0, "log2 of a non-positive integer");
  const auto msb = static_cast<long>(boost::multiprecision::msb(x));
  if (msb < 52) return std::log2(x.convert_to<double>());
  const long shift = msb - 52;
  const cpp_int top = x >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

// Bits to write any value in [0, count).
int index_bits(const cpp_int& count) {
  if (count <= 1) return 0;
  return static_cast<int>(boost::multiprecision::msb(cpp_int(count - 1))) + 1;
}

void put_bits(std::vector<bool>& out, const cpp_int& value, int width) {
  for (int b = width - 1; b >= 0; --b) out.push_back(boost::multiprecision::bit_test(value, static_cast<unsigned>(b)));
}

cpp_int get_bits(const std::vector<bool>& in, std::size_t& pos, int width) {
  cpp_int v = 0;
  for (int b = 0; b < width; ++b) {
    v <<= 1;
    if (in.at(pos++)) v += 1;
  }
  return v;
}

}  // namespace

double threshold_complexity(int n, int theta) {
  require(n >= 1, "threshold_complexity: n must be >= 1");
  require(theta >= 0 && theta <= n + 1, "threshold_complexity: theta must lie in [0, n+1]");
  return log2_of(binomial(n + 1, theta));
}

IntervalBounds interval_complexity_bounds(int n, int a, int b) {
  require(n >= 1, "interval_complexity_bounds: n must be >= 1");
  require(0 <= a && a <= b && b <= n, "interval_complexity_bounds: need 0 <= a <= b <= n");
  IntervalBounds out;
  out.low_branch = a + b <= n;
  cpp_int head, tail;
  if (out.low_branch) {
    head = binomial(n + 1, b + 1);
    tail = binomial(n, a - 1);
  } else {
    head = binomial(n + 1, a);
    tail = binomial(n, b + 1);
  }
  out.lower = log2_of(head + tail);
  out.upper = log2_of(head + (b - a + 1) * tail);
  return out;
}

namespace {

bool compatible(const FunctionTable& f, const std::vector<int>& u, const std::vector<int>& v, int fu, int fv) {
  if (fu != fv) return true;
  std::vector<int> diff;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) diff.push_back(static_cast<int>(i));
  std::vector<int> w = u;
  const std::size_t mixes = std::size_t{1} << diff.size();
  for (std::size_t m = 1; m + 1 < mixes; ++m) {
    for (std::size_t b = 0; b < diff.size(); ++b) w[diff[b]] = (m >> b & 1) ? v[diff[b]] : u[diff[b]];
    if (f(w) != fu) return true;
  }
  return false;
}

struct CliqueSearch {
  const std::vector<std::vector<char>>& adj;
  std::size_t budget;
  std::size_t nodes = 0;
  bool exhausted = false;
  std::vector<int> best;
  std::vector<int> clique;

  int color_bound(const std::vector<int>& cand, std::size_t from) const {
    std::vector<std::vector<int>> classes;
    for (std::size_t i = from; i < cand.size(); ++i) {
      bool placed = false;
      for (auto& cls : classes) {
        bool ok = true;
        for (int w : cls)
          if (adj[cand[i]][w]) {
            ok = false;
            break;
          }
        if (ok) {
          cls.push_back(cand[i]);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({cand[i]});
    }
    return static_cast<int>(classes.size());
  }

  void expand(const std::vector<int>& cand) {
    if (exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (clique.size() > best.size()) best = clique;
    if (clique.size() + static_cast<std::size_t>(color_bound(cand, 0)) <= best.size()) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (clique.size() + (cand.size() - i) <= best.size()) return;
      const int v = cand[i];
      std::vector<int> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (adj[v][cand[j]]) next.push_back(cand[j]);
      clique.push_back(v);
      expand(next);
      clique.pop_back();
      if (exhausted) return;
    }
  }
};

}  // namespace

bool is_fooling_set(const FunctionTable& f, const std::vector<std::vector<int>>& set) {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b]) return false;
      if (!compatible(f, set[a], set[b], f(set[a]), f(set[b]))) return false;
    }
  return true;
}

FoolingSetResult fooling_set_lower_bound(const FunctionTable& f, const FoolingSetOptions& options) {
  const std::size_t m = f.size();
  if (m > options.max_inputs)
    throw ResourceLimit("fooling_set_lower_bound: " + std::to_string(m) + " inputs exceed the budget of " +
                        std::to_string(options.max_inputs));
  std::vector<std::vector<int>> inputs(m);
  for (std::size_t i = 0; i < m; ++i) inputs[i] = f.decode(i);
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      adj[a][b] = adj[b][a] = compatible(f, inputs[a], inputs[b], f.at(a), f.at(b)) ? 1 : 0;

  CliqueSearch search{adj, options.node_budget, 0, false, {}, {}};
  std::vector<int> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = static_cast<int>(i);
  search.expand(all);

  FoolingSetResult result;
  std::vector<int> chosen = search.best;
  if (search.exhausted) {
    result.exact = false;
    std::vector<int> greedy;
    for (int v : all) {
      bool ok = true;
      for (int w : greedy)
        if (!adj[v][w]) {
          ok = false;
          break;
        }
      if (ok) greedy.push_back(v);
    }
    if (greedy.size() > chosen.size()) chosen = greedy;
  }
  for (int v : chosen) result.elements.push_back(inputs[v]);
  result.bound = std::log2(static_cast<double>(result.elements.size()));
  return result;
}

AndTranscript and_block_protocol(const std::vector<bool>& x1, const std::vector<bool>& x2) {
  require(x1.size() == x2.size(), "and_block_protocol: blocks differ in length");
  const int N = static_cast<int>(x1.size());
  AndTranscript t;

  // Node 1.
  std::vector<int> zero_pos;
  for (int i = 0; i < N; ++i)
    if (!x1[i]) zero_pos.push_back(i);
  const int k = static_cast<int>(zero_pos.size());
  t.zeros = k;
  const int k_bits = index_bits(cpp_int(N + 1));
  put_bits(t.message1, k, k_bits);
  cpp_int rank = 0;
  for (int i = 0; i < k; ++i) rank += binomial(zero_pos[i], i + 1);
  put_bits(t.message1, rank, index_bits(binomial(N, k)));

  // Node 2 decodes the zero set of node 1 and answers on the rest.
  std::size_t pos = 0;
  const int k2 = static_cast<int>(get_bits(t.message1, pos, k_bits));
  cpp_int r2 = get_bits(t.message1, pos, index_bits(binomial(N, k2)));
  std::vector<bool> x1_seen(static_cast<std::size_t>(N), true);
  int upper = N - 1;
  for (int i = k2; i >= 1; --i) {
    int c = upper;
    while (binomial(c, i) > r2) --c;
    r2 -= binomial(c, i);
    x1_seen[c] = false;
    upper = c - 1;
  }
  for (int i = 0; i < N; ++i)
    if (x1_seen[i]) t.message2.push_back(x2[i]);
  t.output2.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) t.output2[i] = x1_seen[i] && x2[i];

  // Node 1 reads the answer.
  t.output1.assign(static_cast<std::size_t>(N), false);
  std::size_t p2 = 0;
  for (int i = 0; i < N; ++i)
    if (x1[i]) t.output1[i] = t.message2.at(p2++);
  return t;
}

long long and_worst_case_bits(int N) {
  require(N >= 1, "and_worst_case_bits: N must be >= 1");
  long long best = 0;
  for (int k = 0; k <= N; ++k) best = std::max(best, static_cast<long long>(index_bits(binomial(N, k))) + N - k);
  return best + index_bits(cpp_int(N + 1));
}

}  // namespace sensornet::compute

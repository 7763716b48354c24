#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sensornet/boolean_complexity.hpp"
#include "sensornet/dag.hpp"
#include "sensornet/errors.hpp"
#include "sensornet/function_table.hpp"
#include "sensornet/histogram.hpp"
#include "sensornet/random.hpp"
#include "sensornet/symmetric.hpp"
#include "sensornet/tree_codes.hpp"

namespace {

using namespace sensornet;
using namespace sensornet::compute;

FunctionTable random_table(std::vector<int> alphabet, int values, Pcg32& rng) {
  const std::size_t size = product_size(alphabet);
  std::vector<int> v(size);
  for (auto& x : v) x = static_cast<int>(rng.below(static_cast<std::uint32_t>(values)));
  return FunctionTable(std::move(alphabet), std::move(v));
}

// Multiparty fooling condition, checked pair by pair over every mix.
bool fooling_oracle(const FunctionTable& f, const std::vector<std::vector<int>>& set) {
  const int n = f.arity();
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b]) return false;
      const int fa = f(set[a]);
      if (fa != f(set[b])) continue;
      bool fooled = false;
      std::vector<int> w(n);
      for (std::uint32_t mask = 0; mask < (1U << n) && !fooled; ++mask) {
        for (int i = 0; i < n; ++i) w[i] = (mask >> i & 1U) ? set[b][i] : set[a][i];
        fooled = f(w) != fa;
      }
      if (!fooled) return false;
    }
  return true;
}

double log2_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  double s = 0.0;
  for (int i = 1; i <= k; ++i) s += std::log2(static_cast<double>(n - k + i) / i);
  return s;
}

long long ceil_log2_binomial(int n, int k) {
  using boost::multiprecision::cpp_int;
  cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  if (c <= 1) return 0;
  return static_cast<long long>(boost::multiprecision::msb(cpp_int(c - 1))) + 1;
}

TEST(FunctionTable, BuiltinsAndParse) {
  const auto mx = FunctionTable::builtin("max", 3, 3);
  EXPECT_EQ(mx(std::vector<int>{0, 2, 1}), 2);
  EXPECT_TRUE(mx.is_symmetric());
  const auto th = FunctionTable::builtin("threshold:2", 3, 2);
  EXPECT_EQ(th(std::vector<int>{1, 0, 1}), 1);
  EXPECT_EQ(th(std::vector<int>{1, 0, 0}), 0);
  const auto iv = FunctionTable::builtin("interval:1:2", 3, 2);
  EXPECT_EQ(iv(std::vector<int>{1, 1, 1}), 0);
  EXPECT_EQ(iv(std::vector<int>{0, 1, 0}), 1);
  std::istringstream in("# and\n0 0 -> 0\n0 1 -> 0\n\n1 0 -> 0\n1 1 -> 1\n");
  const auto parsed = FunctionTable::parse(in);
  EXPECT_EQ(parsed.values(), FunctionTable::builtin("and", 2, 2).values());
  std::istringstream missing("0 0 -> 0\n1 1 -> 1\n");
  EXPECT_THROW(FunctionTable::parse(missing), InvalidArgument);
  EXPECT_THROW(FunctionTable::builtin("nope", 2, 2), InvalidArgument);
}

TEST(TypeVector, Examples) {
  EXPECT_EQ(type_vector(std::vector<int>{0, 0, 0}, 2), (TypeVector{3, 0}));
  EXPECT_EQ(type_vector(std::vector<int>{1, 0, 1, 1}, 2), (TypeVector{1, 3}));
  EXPECT_EQ(type_vector(std::vector<int>{1, 1, 0, 1}, 2), (TypeVector{1, 3}));
  EXPECT_THROW(type_vector(std::vector<int>{0, 2}, 2), InvalidArgument);
}

TEST(TypeThreshold, Examples) {
  EXPECT_TRUE(is_type_threshold(FunctionTable::builtin("max", 4, 2), {0, 1}));
  // The sum is c1 for type (c0, c1) with c0 + c1 = 4; it is a function of
  // (min(c0, t0), min(c1, t1)) iff no two types collide with different sums.
  const auto sum = FunctionTable::builtin("sum", 4, 2);
  for (int t0 = 0; t0 <= 4; ++t0)
    for (int t1 = 0; t1 <= 4; ++t1) {
      bool oracle = true;
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
          if (a != b && std::min(4 - a, t0) == std::min(4 - b, t0) && std::min(a, t1) == std::min(b, t1)) oracle = false;
      EXPECT_EQ(is_type_threshold(sum, {t0, t1}), oracle) << t0 << " " << t1;
      if (t0 + t1 < 4) {
        EXPECT_FALSE(oracle);
      }
    }
  EXPECT_TRUE(is_type_threshold(FunctionTable::builtin("constant", 4, 2), {0, 0}));
  Pcg32 rng(2);
  EXPECT_THROW(is_type_threshold(random_table({2, 2, 2}, 2, rng), {1, 1}), InvalidArgument);
}

TEST(TypeSensitive, Examples) {
  EXPECT_TRUE(is_type_sensitive(FunctionTable::builtin("sum", 6, 2), 0.5));
  for (double g : {0.2, 0.5, 0.8}) {
    EXPECT_FALSE(is_type_sensitive(FunctionTable::builtin("constant", 6, 2), g));
    EXPECT_FALSE(is_type_sensitive(FunctionTable::builtin("max", 6, 2), g));
  }
  EXPECT_THROW(is_type_sensitive(FunctionTable::builtin("sum", 6, 2), 1.5), InvalidArgument);
}

TEST(GreedyReduce, Examples) {
  const auto conj = FunctionTable::builtin("and", 2, 2);
  EXPECT_EQ(greedy_reduce(conj, Side::First).size(), 2);
  EXPECT_EQ(greedy_reduce(FunctionTable::builtin("constant", 2, 3), Side::First).size(), 1);
  const auto proj = FunctionTable::from_callable({3, 3}, [](std::span<const int> x) { return x[1]; });
  EXPECT_EQ(greedy_reduce(proj, Side::First).size(), 1);
  EXPECT_EQ(greedy_reduce(proj, Side::Second).size(), 3);
}

TEST(GreedyReduce, CoarsestZeroErrorPartition) {
  Pcg32 rng(14);
  for (int t = 0; t < 200; ++t) {
    const int nx = 1 + static_cast<int>(rng.below(4));
    const int ny = 1 + static_cast<int>(rng.below(4));
    const auto f = random_table({nx, ny}, 2 + static_cast<int>(rng.below(2)), rng);
    auto row = [&](int x) {
      std::vector<int> r;
      for (int y = 0; y < ny; ++y) r.push_back(f(std::vector<int>{x, y}));
      return r;
    };
    const auto part = greedy_reduce(f, Side::First);
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < nx; ++b) EXPECT_EQ(part.class_of[a] == part.class_of[b], row(a) == row(b));
  }
}

TEST(GreedyReduce, AverageCaseIgnoresImpossibleInputs) {
  // f(x, y) = x & y, but (1, 1) never occurs: x = 0 and x = 1 need no separation.
  const auto conj = FunctionTable::builtin("and", 2, 2);
  const std::vector<double> p{0.4, 0.3, 0.3, 0.0};
  EXPECT_EQ(greedy_reduce(conj, Side::First, p).size(), 1);
  EXPECT_EQ(greedy_reduce(conj, Side::First, std::vector<double>(4, 0.25)).size(), 2);
}

TEST(Huffman, PrefixFreeAndOptimalLengths) {
  const auto code = huffman_code({0.5, 0.25, 0.125, 0.125});
  EXPECT_EQ(code[0].size(), 1U);
  EXPECT_EQ(code[1].size(), 2U);
  EXPECT_EQ(code[2].size(), 3U);
  EXPECT_EQ(code[3].size(), 3U);
  for (std::size_t a = 0; a < code.size(); ++a)
    for (std::size_t b = 0; b < code.size(); ++b)
      if (a != b) {
        EXPECT_NE(code[b].rfind(code[a], 0), 0U);
      }
  EXPECT_EQ(huffman_code({1.0}), (std::vector<std::string>{""}));
}

Network make_network(int n, std::vector<Edge> edges, std::vector<int> alphabet) {
  Network net;
  net.n = n;
  net.edges = std::move(edges);
  net.alphabet = std::move(alphabet);
  return net;
}

TEST(TreeCodes, TwoNodeAnd) {
  const auto net = make_network(2, {{1, 0}}, {2, 2});
  const auto code = tree_zero_error_codes(net, FunctionTable::builtin("and", 2, 2), CodingMode::WorstCase);
  EXPECT_EQ(code.edges[0].class_count, 2);
  EXPECT_DOUBLE_EQ(code.rates[0], 1.0);
  EXPECT_TRUE(verify_tree_protocol(net, FunctionTable::builtin("and", 2, 2), code).ok);
}

TEST(TreeCodes, StarParityAndConstant) {
  const auto net = make_network(4, {{1, 0}, {2, 0}, {3, 0}}, {1, 2, 2, 2});
  const auto parity = FunctionTable::from_callable({1, 2, 2, 2}, [](std::span<const int> x) {
    return (x[1] + x[2] + x[3]) % 2;
  });
  const auto code = tree_zero_error_codes(net, parity, CodingMode::WorstCase);
  for (const auto& e : code.edges) EXPECT_EQ(e.class_count, 2);
  for (double r : code.rates) EXPECT_DOUBLE_EQ(r, 1.0);
  EXPECT_TRUE(verify_tree_protocol(net, parity, code).ok);
  const auto constant = FunctionTable::from_callable({1, 2, 2, 2}, [](std::span<const int>) { return 7; });
  const auto zero = tree_zero_error_codes(net, constant, CodingMode::WorstCase);
  for (double r : zero.rates) EXPECT_DOUBLE_EQ(r, 0.0);
  EXPECT_TRUE(verify_tree_protocol(net, constant, zero).ok);
}

TEST(TreeCodes, RejectsNonTree) {
  const auto net = counterexample_network();
  EXPECT_THROW(tree_zero_error_codes(net, counterexample_sum(), CodingMode::WorstCase), InvalidArgument);
}

// Every restricted growth string over `count` classes, i.e. every partition.
void for_each_partition(int count, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> rgs(static_cast<std::size_t>(count), 0);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == count) {
      visit(rgs);
      return;
    }
    for (int b = 0; b <= used && b < count; ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(used, b + 1));
    }
  };
  if (count > 0) rec(1, 1);
}

TEST(TreeCodes, MinimalOnRandomTrees) {
  Pcg32 rng(55);
  for (int t = 0; t < 25; ++t) {
    const int n = 2 + static_cast<int>(rng.below(4));
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v, static_cast<int>(rng.below(v)));
    std::vector<int> alphabet(n);
    for (auto& a : alphabet) a = 1 + static_cast<int>(rng.below(3));
    const auto net = make_network(n, edges, alphabet);
    const auto f = random_table(alphabet, 2 + static_cast<int>(rng.below(2)), rng);
    for (auto mode : {CodingMode::WorstCase, CodingMode::AverageCase}) {
      std::optional<std::vector<double>> p;
      if (mode == CodingMode::AverageCase) p = std::vector<double>(f.size(), 1.0 / static_cast<double>(f.size()));
      const auto code = tree_zero_error_codes(net, f, mode, p);
      ASSERT_TRUE(verify_tree_protocol(net, f, code).ok) << "trial " << t;
      for (std::size_t e = 0; e < code.edges.size(); ++e) {
        const double expected = mode == CodingMode::WorstCase ? std::log2(code.edges[e].class_count) : code.rates[e];
        EXPECT_NEAR(code.rates[e], expected, 1e-12);
      }
    }
    const auto code = tree_zero_error_codes(net, f, CodingMode::WorstCase);
    for (std::size_t e = 0; e < code.edges.size(); ++e) {
      const int classes = code.edges[e].class_count;
      if (classes > 6) continue;
      for_each_partition(classes, [&](const std::vector<int>& blocks) {
        const int used = *std::max_element(blocks.begin(), blocks.end()) + 1;
        if (used == classes) return;
        TreeCode coarse = code;
        coarse.edges[e] = coarsen(code.edges[e], blocks);
        EXPECT_FALSE(verify_tree_protocol(net, f, coarse).ok) << "trial " << t << " edge " << e;
      });
    }
  }
}

TEST(Counterexample, WorstCaseCuts) {
  const auto cuts = dag_cut_outer_bound(counterexample_network(), counterexample_sum(), CodingMode::WorstCase);
  ASSERT_EQ(cuts.size(), 3U);
  std::map<std::vector<NodeId>, std::pair<std::vector<int>, double>> by_subset;
  for (const auto& c : cuts) by_subset[c.subset] = {c.edges, c.bound};
  EXPECT_EQ(by_subset.at({1}).first, (std::vector<int>{0}));
  EXPECT_NEAR(by_subset.at({1}).second, 1.0, 1e-12);
  EXPECT_EQ(by_subset.at({2}).first, (std::vector<int>{1, 2}));
  EXPECT_NEAR(by_subset.at({2}).second, 1.0, 1e-12);
  EXPECT_EQ(by_subset.at({1, 2}).first, (std::vector<int>{0, 1}));
  EXPECT_NEAR(by_subset.at({1, 2}).second, std::log2(3.0), 1e-12);
}

TEST(Counterexample, AverageCaseCuts) {
  const auto cuts = dag_cut_outer_bound(counterexample_network(), counterexample_sum(), CodingMode::AverageCase,
                                        std::vector<double>(4, 0.25));
  for (const auto& c : cuts) {
    const double want = c.subset.size() == 2 ? 1.5 : 1.0;
    EXPECT_NEAR(c.bound, want, 1e-12);
  }
}

TEST(Counterexample, TreeRegionSegment) {
  const auto net = counterexample_network();
  const auto f = counterexample_sum();
  const auto region = tree_achievable_region(net, f, CodingMode::WorstCase);
  ASSERT_EQ(region.points.size(), 2U);
  const double l3 = std::log2(3.0);
  std::set<std::vector<double>> pts;
  for (auto p : region.points) {
    for (auto& x : p) x = std::round(x * 1e9) / 1e9;
    pts.insert(p);
  }
  auto rounded = [](std::vector<double> p) {
    for (auto& x : p) x = std::round(x * 1e9) / 1e9;
    return p;
  };
  EXPECT_TRUE(pts.count(rounded({1.0, 1.0, 0.0})));
  EXPECT_TRUE(pts.count(rounded({l3, 0.0, 1.0})));
  const auto cuts = dag_cut_outer_bound(net, f, CodingMode::WorstCase);
  for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
    const std::vector<double> r{lambda + (1.0 - lambda) * l3, lambda, 1.0 - lambda};
    EXPECT_TRUE(in_tree_hull(region, r));
    EXPECT_TRUE(satisfies_cuts(cuts, r));
  }
  // Meets every cut yet no tree mixture reaches it.
  const std::vector<double> vertex{1.0, l3 - 1.0, 2.0 - l3};
  EXPECT_TRUE(satisfies_cuts(cuts, vertex));
  EXPECT_FALSE(in_tree_hull(region, vertex));
  EXPECT_FALSE(in_tree_hull(region, vertex, true));
}

TEST(Achievability, TreePointsInsideOuterBound) {
  Pcg32 rng(71);
  for (int t = 0; t < 40; ++t) {
    const int n = 3 + static_cast<int>(rng.below(2));
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
      const int first = static_cast<int>(rng.below(v));
      edges.emplace_back(v, first);
      for (int u = 0; u < v; ++u)
        if (u != first && rng.uniform() < 0.4) edges.emplace_back(v, u);
    }
    std::vector<int> alphabet(n, 1);
    for (int v = 1; v < n; ++v) alphabet[v] = 1 + static_cast<int>(rng.below(2));
    const auto net = make_network(n, edges, alphabet);
    const auto f = random_table(alphabet, 3, rng);
    for (auto mode : {CodingMode::WorstCase, CodingMode::AverageCase}) {
      std::optional<std::vector<double>> p;
      if (mode == CodingMode::AverageCase) p = std::vector<double>(f.size(), 1.0 / static_cast<double>(f.size()));
      const auto cuts = dag_cut_outer_bound(net, f, mode, p);
      const auto region = tree_achievable_region(net, f, mode, p);
      for (const auto& pt : region.points) EXPECT_TRUE(satisfies_cuts(cuts, pt)) << "trial " << t;
      for (int k = 0; k < 10; ++k) {
        std::vector<double> w(region.points.size());
        double total = 0.0;
        for (auto& x : w) total += (x = rng.uniform());
        std::vector<double> mix(edges.size(), 0.0);
        for (std::size_t i = 0; i < w.size(); ++i)
          for (std::size_t e = 0; e < mix.size(); ++e) mix[e] += w[i] / total * region.points[i][e];
        EXPECT_TRUE(satisfies_cuts(cuts, mix)) << "trial " << t;
        EXPECT_TRUE(in_tree_hull(region, mix)) << "trial " << t;
      }
    }
  }
}

TEST(DagParity, SingleEdge) {
  const auto net = make_network(2, {{1, 0}}, {1, 2});
  const std::vector<std::vector<int>> blocks{{}, {1, 0, 1, 1}};
  const auto res = dag_parity_scheme(net, blocks, {{}, {1.0}}, 2);
  EXPECT_EQ(res.edge_symbols, (std::vector<long long>{4}));
  EXPECT_EQ(res.output, (std::vector<int>{1, 0, 1, 1}));
}

TEST(DagParity, SplitsAgainstCutBound) {
  const auto net = counterexample_network();
  const auto parity = FunctionTable::from_callable({1, 2, 2}, [](std::span<const int> x) { return (x[1] + x[2]) % 2; });
  const auto cuts = dag_cut_outer_bound(net, parity, CodingMode::WorstCase);
  Pcg32 rng(3);
  const int N = 16;
  std::vector<std::vector<int>> blocks(3);
  for (int v = 1; v < 3; ++v)
    for (int k = 0; k < N; ++k) blocks[v].push_back(static_cast<int>(rng.below(2)));
  std::vector<int> direct(N);
  for (int k = 0; k < N; ++k) direct[k] = (blocks[1][k] + blocks[2][k]) % 2;

  const auto half = dag_parity_scheme(net, blocks, {{}, {1.0}, {0.5, 0.5}}, 2);
  EXPECT_EQ(half.output, direct);
  EXPECT_EQ(half.edge_symbols, (std::vector<long long>{N, N / 2, N / 2}));
  EXPECT_TRUE(satisfies_cuts(cuts, half.rates));

  const auto relay = dag_parity_scheme(net, blocks, {{}, {1.0}, {0.0, 1.0}}, 2);
  EXPECT_EQ(relay.output, direct);
  for (const auto& c : cuts) {
    double sum = 0.0;
    for (int e : c.edges) sum += relay.rates[e];
    EXPECT_NEAR(sum, c.bound, 1e-12);
  }

  const std::vector<std::vector<int>> zeros{{}, std::vector<int>(N, 0), std::vector<int>(N, 0)};
  EXPECT_EQ(dag_parity_scheme(net, zeros, {{}, {1.0}, {0.25, 0.75}}, 2).output, std::vector<int>(N, 0));
  EXPECT_THROW(dag_parity_scheme(net, blocks, {{}, {1.0}, {0.5, 0.4}}, 2), InvalidArgument);
}

TEST(Histogram, SingleNode) {
  NodePlacement p;
  p.domain = Domain::UnitSquare;
  p.points = {{0.5, 0.5}};
  const auto res = histogram_aggregation(p, 0.1, {});
  EXPECT_FALSE(res.applicable);
  EXPECT_EQ(res.slots, 0);
  EXPECT_TRUE(std::isinf(res.throughput));
}

TEST(Histogram, ThreeNodePathHandCount) {
  // Collector 0, then 1, then 2 on a line. Each block needs 2 -> 1 and then
  // 1 -> 0, which share node 1, so no two messages overlap: two messages of
  // 2 * ceil(log2 4) = 4 bits per block.
  NodePlacement p;
  p.domain = Domain::UnitSquare;
  p.points = {{0.1, 0.5}, {0.2, 0.5}, {0.3, 0.5}};
  HistogramOptions o;
  o.alphabet = 2;
  o.blocks = 5;
  const auto res = histogram_aggregation(p, 0.15, o);
  EXPECT_EQ(res.message_bits, 4);
  EXPECT_EQ(res.tree_depth, 2);
  EXPECT_DOUBLE_EQ(res.slots_per_block, 2.0 * 2.0 * 2.0);
  EXPECT_TRUE(res.all_correct);
}

TEST(Histogram, DisconnectedThrows) {
  NodePlacement p;
  p.domain = Domain::UnitSquare;
  p.points = {{0.1, 0.5}, {0.9, 0.5}};
  EXPECT_THROW(histogram_aggregation(p, 0.1, {}), InvalidArgument);
}

TEST(Fooling, TwoPartyAnd) {
  const auto f = FunctionTable::builtin("and", 2, 2);
  const auto res = fooling_set_lower_bound(f);
  EXPECT_TRUE(res.exact);
  EXPECT_EQ(res.elements, (std::vector<std::vector<int>>{{0, 1}, {1, 0}, {1, 1}}));
  EXPECT_NEAR(res.bound, std::log2(3.0), 1e-12);
  EXPECT_TRUE(fooling_oracle(f, res.elements));
}

TEST(Fooling, FourPartyAnd) {
  const auto f = FunctionTable::builtin("and", 4, 2);
  const auto res = fooling_set_lower_bound(f);
  EXPECT_EQ(res.elements.size(), 5U);
  EXPECT_TRUE(fooling_oracle(f, res.elements));
  EXPECT_TRUE(is_fooling_set(f, {{1, 1, 1, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}}));
  EXPECT_FALSE(is_fooling_set(f, {{0, 1, 1, 1}, {0, 0, 1, 1}}));
}

TEST(Fooling, ThresholdMatchesBinomial) {
  for (int n = 1; n <= 5; ++n)
    for (int theta = 0; theta <= n + 1; ++theta) {
      const auto f = FunctionTable::builtin("threshold:" + std::to_string(theta), n, 2);
      const auto res = fooling_set_lower_bound(f);
      EXPECT_TRUE(res.exact);
      EXPECT_TRUE(fooling_oracle(f, res.elements)) << n << " " << theta;
      EXPECT_NEAR(res.bound, log2_binomial(n + 1, theta), 1e-9) << n << " " << theta;
      EXPECT_NEAR(threshold_complexity(n, theta), log2_binomial(n + 1, theta), 1e-12);
    }
  EXPECT_EQ(fooling_set_lower_bound(FunctionTable::builtin("threshold:2", 4, 2)).elements.size(), 10U);
}

TEST(Fooling, InvariantUnderArgumentRelabeling) {
  Pcg32 rng(81);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_table({2, 3, 2}, 2, rng);
    const auto g = FunctionTable::from_callable({2, 2, 3}, [&](std::span<const int> x) {
      return f(std::vector<int>{x[0], x[2], x[1]});
    });
    EXPECT_EQ(fooling_set_lower_bound(f).elements.size(), fooling_set_lower_bound(g).elements.size());
  }
}

TEST(Fooling, BudgetExceeded) {
  FoolingSetOptions o;
  o.max_inputs = 16;
  EXPECT_THROW(fooling_set_lower_bound(FunctionTable::builtin("and", 5, 2), o), ResourceLimit);
}

TEST(Threshold, Examples) {
  EXPECT_DOUBLE_EQ(threshold_complexity(1, 1), 1.0);
  EXPECT_NEAR(threshold_complexity(2, 2), 1.584962500721156, 1e-12);
  EXPECT_NEAR(threshold_complexity(4, 2), std::log2(10.0), 1e-12);
  EXPECT_THROW(threshold_complexity(4, 6), InvalidArgument);
  EXPECT_THROW(threshold_complexity(4, -1), InvalidArgument);
}

TEST(Interval, Examples) {
  const auto b = interval_complexity_bounds(4, 1, 2);
  EXPECT_TRUE(b.low_branch);
  EXPECT_NEAR(b.lower, std::log2(11.0), 1e-12);
  EXPECT_NEAR(b.upper, std::log2(12.0), 1e-12);
  const auto point = interval_complexity_bounds(6, 2, 2);
  EXPECT_NEAR(point.lower, std::log2(std::exp2(log2_binomial(7, 3)) + std::exp2(log2_binomial(6, 1))), 1e-12);
  EXPECT_NEAR(point.lower, point.upper, 1e-12);
  EXPECT_THROW(interval_complexity_bounds(4, 3, 2), InvalidArgument);
  EXPECT_THROW(interval_complexity_bounds(4, 0, 5), InvalidArgument);
  int cases = 0;
  EXPECT_THROW(interval_complexity_bounds(0, 0, 0), InvalidArgument);
  for (int n = 1; n <= 12; ++n)
    for (int a = 0; a <= n; ++a)
      for (int bb = a; bb <= n; ++bb) {
        const auto r = interval_complexity_bounds(n, a, bb);
        EXPECT_LE(r.lower, r.upper + 1e-12);
        ++cases;
      }
  EXPECT_EQ(cases, 454);
}

TEST(AndBlock, AllZerosNeedNoReply) {
  const std::vector<bool> zeros(10, false);
  const std::vector<bool> ones(10, true);
  const auto tr = and_block_protocol(zeros, ones);
  EXPECT_TRUE(tr.message2.empty());
  EXPECT_EQ(tr.output1, zeros);
  EXPECT_EQ(tr.output2, zeros);
  EXPECT_THROW(and_block_protocol(zeros, std::vector<bool>(9, true)), InvalidArgument);
}

TEST(AndBlock, RandomBlocksCorrectAndWithinWorstCase) {
  Pcg32 rng(90);
  for (int N : {1, 7, 15, 63}) {
    const long long worst = and_worst_case_bits(N);
    long long oracle = 0;
    for (int k = 0; k <= N; ++k) oracle = std::max(oracle, ceil_log2_binomial(N, k) + N - k);
    oracle += ceil_log2_binomial(N + 1, 1);
    EXPECT_EQ(worst, oracle);
    for (int t = 0; t < 200; ++t) {
      std::vector<bool> x1(N), x2(N), want(N);
      const double bias = rng.uniform();
      for (int i = 0; i < N; ++i) {
        x1[i] = rng.uniform() < bias;
        x2[i] = rng.uniform() < 0.5;
        want[i] = x1[i] && x2[i];
      }
      const auto tr = and_block_protocol(x1, x2);
      EXPECT_EQ(tr.output1, want);
      EXPECT_EQ(tr.output2, want);
      EXPECT_LE(static_cast<long long>(tr.total_bits()), worst);
    }
  }
}

TEST(AndBlock, NormalizedCostApproachesLog3) {
  const double l3 = std::log2(3.0);
  EXPECT_LE(static_cast<double>(and_worst_case_bits(15)) / 15.0, l3 + 0.4);
  EXPECT_LE(static_cast<double>(and_worst_case_bits(255)) / 255.0, 1.05 * l3);
  EXPECT_GE(static_cast<double>(and_worst_case_bits(255)) / 255.0, l3 - 1e-6);
}

}  // namespace

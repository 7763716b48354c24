#include "sensornet/symmetric.hpp"

#include <cmath>
#include <map>

#include "sensornet/errors.hpp"

namespace sensornet::compute {

using detail::require;

TypeVector type_vector(std::span<const int> x, int q) {
  require(q >= 1, "type_vector: alphabet size must be >= 1");
  TypeVector t(static_cast<std::size_t>(q), 0);
  for (int v : x) {
    require(v >= 0 && v < q, "type_vector: symbol outside the alphabet");
    ++t[v];
  }
  return t;
}

namespace {

int common_alphabet(const FunctionTable& f) {
  require(f.is_symmetric(), "function is not symmetric");
  return f.alphabet_sizes()[0];
}

}  // namespace

bool is_type_threshold(const FunctionTable& f, const TypeVector& theta) {
  const int q = common_alphabet(f);
  require(static_cast<int>(theta.size()) == q, "is_type_threshold: theta length must equal |X|");
  for (int t : theta) require(t >= 0, "is_type_threshold: theta must be non-negative");
  std::map<TypeVector, int> seen;
  std::vector<int> x(static_cast<std::size_t>(f.arity()));
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    f.decode(idx, x);
    auto key = type_vector(x, q);
    for (int a = 0; a < q; ++a) key[a] = std::min(key[a], theta[a]);
    const auto [it, inserted] = seen.emplace(std::move(key), f.at(idx));
    if (!inserted && it->second != f.at(idx)) return false;
  }
  return true;
}

bool is_type_sensitive(const FunctionTable& f, double gamma) {
  require(gamma > 0.0 && gamma < 1.0, "is_type_sensitive: gamma must lie in (0, 1)");
  if (f.size() > kTypeSensitiveBudget)
    throw ResourceLimit("is_type_sensitive: input space too large for exhaustive search");
  common_alphabet(f);
  const int n = f.arity();
  const int j = n - static_cast<int>(std::ceil(gamma * n));
  if (j < 0) return true;
  // Inputs sharing the first j arguments are contiguous in the table.
  std::size_t block = 1;
  for (int p = j; p < n; ++p) block *= static_cast<std::size_t>(f.alphabet_sizes()[p]);
  for (std::size_t start = 0; start < f.size(); start += block) {
    bool differs = false;
    for (std::size_t k = start + 1; k < start + block && !differs; ++k)
      differs = f.at(k) != f.at(start);
    if (!differs) return false;
  }
  return true;
}

Partition greedy_reduce(const FunctionTable& f, Side side, const std::optional<std::vector<double>>& p) {
  require(f.arity() == 2, "greedy_reduce: f must take two arguments");
  if (p) {
    require(p->size() == f.size(), "greedy_reduce: distribution size must match the table");
    for (double v : *p) require(v >= 0.0 && std::isfinite(v), "greedy_reduce: probabilities must be >= 0");
  }
  const int nx = f.alphabet_sizes()[0];
  const int ny = f.alphabet_sizes()[1];
  const int count = side == Side::First ? nx : ny;
  const int other = side == Side::First ? ny : nx;
  auto index = [&](int mine, int theirs) {
    const int x = side == Side::First ? mine : theirs;
    const int y = side == Side::First ? theirs : mine;
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(y);
  };
  return greedy_partition(count, [&](int a, int b) {
    for (int w = 0; w < other; ++w) {
      const auto ia = index(a, w), ib = index(b, w);
      if (f.at(ia) == f.at(ib)) continue;
      if (!p || ((*p)[ia] > 0.0 && (*p)[ib] > 0.0)) return true;
    }
    return false;
  });
}

}  // namespace sensornet::compute

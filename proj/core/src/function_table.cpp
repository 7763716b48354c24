#include "sensornet/function_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "sensornet/errors.hpp"

namespace sensornet::compute {

using detail::require;

std::size_t product_size(std::span<const int> alphabet_sizes, std::size_t cap) {
  std::size_t total = 1;
  for (int q : alphabet_sizes) {
    require(q >= 1, "alphabet sizes must be >= 1");
    if (total > cap / static_cast<std::size_t>(q))
      throw ResourceLimit("input space exceeds " + std::to_string(cap) + " tuples");
    total *= static_cast<std::size_t>(q);
  }
  return total;
}

FunctionTable::FunctionTable(std::vector<int> alphabet_sizes, std::vector<int> values)
    : alphabet_(std::move(alphabet_sizes)), values_(std::move(values)) {
  require(!alphabet_.empty(), "function table: arity must be >= 1");
  const std::size_t total = product_size(alphabet_);
  require(values_.size() == total, "function table: value count does not match the alphabets");
  stride_.assign(alphabet_.size(), 1);
  for (std::size_t i = alphabet_.size() - 1; i > 0; --i)
    stride_[i - 1] = stride_[i] * static_cast<std::size_t>(alphabet_[i]);
}

FunctionTable FunctionTable::from_callable(std::vector<int> alphabet_sizes,
                                           const std::function<int(std::span<const int>)>& f) {
  require(!alphabet_sizes.empty(), "function table: arity must be >= 1");
  const std::size_t total = product_size(alphabet_sizes);
  std::vector<int> values(total);
  std::vector<int> x(alphabet_sizes.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    values[idx] = f(x);
    for (std::size_t p = x.size(); p-- > 0;) {
      if (++x[p] < alphabet_sizes[p]) break;
      x[p] = 0;
    }
  }
  return FunctionTable(std::move(alphabet_sizes), std::move(values));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("cannot parse " + what + " '" + s + "'");
}

int sum_of(std::span<const int> x) { return std::accumulate(x.begin(), x.end(), 0); }

}  // namespace

FunctionTable FunctionTable::builtin(const std::string& name, int n, int q) {
  require(n >= 1, "builtin function: n must be >= 1");
  require(q >= 1, "builtin function: alphabet size must be >= 1");
  const std::vector<int> alphabet(static_cast<std::size_t>(n), q);
  const auto parts = split(name, ':');
  require(!parts.empty(), "builtin function: empty name");
  const std::string& head = parts[0];
  auto arity_is = [&](std::size_t k) {
    require(parts.size() == k, "builtin function '" + name + "': wrong number of parameters");
  };
  if (head == "max") {
    arity_is(1);
    return from_callable(alphabet, [](std::span<const int> x) { return *std::max_element(x.begin(), x.end()); });
  }
  if (head == "min") {
    arity_is(1);
    return from_callable(alphabet, [](std::span<const int> x) { return *std::min_element(x.begin(), x.end()); });
  }
  if (head == "parity") {
    arity_is(1);
    return from_callable(alphabet, [q](std::span<const int> x) { return sum_of(x) % q; });
  }
  if (head == "sum") {
    arity_is(1);
    return from_callable(alphabet, [](std::span<const int> x) { return sum_of(x); });
  }
  if (head == "and") {
    arity_is(1);
    return from_callable(alphabet, [](std::span<const int> x) {
      return std::all_of(x.begin(), x.end(), [](int v) { return v != 0; }) ? 1 : 0;
    });
  }
  if (head == "constant") {
    arity_is(1);
    return from_callable(alphabet, [](std::span<const int>) { return 0; });
  }
  if (head == "threshold") {
    arity_is(2);
    const int t = parse_int(parts[1], "threshold");
    return from_callable(alphabet, [t](std::span<const int> x) { return sum_of(x) >= t ? 1 : 0; });
  }
  if (head == "interval") {
    arity_is(3);
    const int a = parse_int(parts[1], "interval bound");
    const int b = parse_int(parts[2], "interval bound");
    require(a <= b, "builtin interval: a must be <= b");
    return from_callable(alphabet, [a, b](std::span<const int> x) {
      const int s = sum_of(x);
      return a <= s && s <= b ? 1 : 0;
    });
  }
  throw InvalidArgument("unknown builtin function '" + name + "'");
}

FunctionTable FunctionTable::parse(std::istream& in) {
  std::vector<std::pair<std::vector<int>, int>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto arrow = line.find("->");
    require(arrow != std::string::npos, "function table line " + std::to_string(line_no) + ": missing '->'");
    std::istringstream lhs(line.substr(0, arrow));
    std::istringstream rhs(line.substr(arrow + 2));
    std::vector<int> x;
    std::string tok;
    while (lhs >> tok) x.push_back(parse_int(tok, "symbol"));
    std::string value_tok, extra;
    require(static_cast<bool>(rhs >> value_tok) && !(rhs >> extra),
            "function table line " + std::to_string(line_no) + ": expected one value");
    require(!x.empty(), "function table line " + std::to_string(line_no) + ": no inputs");
    for (int v : x) require(v >= 0, "function table line " + std::to_string(line_no) + ": negative symbol");
    rows.emplace_back(std::move(x), parse_int(value_tok, "value"));
  }
  require(!rows.empty(), "function table: no entries");
  const std::size_t arity = rows[0].first.size();
  std::vector<int> alphabet(arity, 0);
  for (const auto& [x, v] : rows) {
    require(x.size() == arity, "function table: rows have different arity");
    for (std::size_t p = 0; p < arity; ++p) alphabet[p] = std::max(alphabet[p], x[p] + 1);
  }
  const std::size_t total = product_size(alphabet);
  require(rows.size() == total, "function table: expected " + std::to_string(total) + " rows, got " +
                                    std::to_string(rows.size()));
  FunctionTable shape(alphabet, std::vector<int>(total, 0));
  std::vector<int> values(total, 0);
  std::vector<char> seen(total, 0);
  for (const auto& [x, v] : rows) {
    const auto idx = shape.index_of(x);
    require(!seen[idx], "function table: duplicate row");
    seen[idx] = 1;
    values[idx] = v;
  }
  return FunctionTable(std::move(alphabet), std::move(values));
}

std::size_t FunctionTable::index_of(std::span<const int> x) const {
  require(x.size() == alphabet_.size(), "function table: wrong number of arguments");
  std::size_t idx = 0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    require(x[p] >= 0 && x[p] < alphabet_[p], "function table: symbol outside the alphabet");
    idx += static_cast<std::size_t>(x[p]) * stride_[p];
  }
  return idx;
}

void FunctionTable::decode(std::size_t index, std::span<int> x) const {
  for (std::size_t p = 0; p < alphabet_.size(); ++p) {
    x[p] = static_cast<int>(index / stride_[p]);
    index %= stride_[p];
  }
}

std::vector<int> FunctionTable::decode(std::size_t index) const {
  std::vector<int> x(alphabet_.size());
  decode(index, x);
  return x;
}

bool FunctionTable::is_symmetric() const {
  if (std::adjacent_find(alphabet_.begin(), alphabet_.end(), std::not_equal_to<>()) != alphabet_.end())
    return false;
  // Adjacent transpositions generate the symmetric group.
  std::vector<int> x(alphabet_.size());
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    decode(idx, x);
    for (std::size_t p = 0; p + 1 < x.size(); ++p) {
      std::swap(x[p], x[p + 1]);
      const bool same = values_[index_of(x)] == values_[idx];
      std::swap(x[p], x[p + 1]);
      if (!same) return false;
    }
  }
  return true;
}

std::vector<int> FunctionTable::range() const {
  std::vector<int> r = values_;
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace sensornet::compute

#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace sensornet::compute {

/// Extensional f: X_1 x ... x X_n -> integers. Inputs are indexed in mixed
/// radix with x_1 most significant.
class FunctionTable {
 public:
  /// Largest table accepted (number of input tuples).
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 24;

  FunctionTable() = default;
  FunctionTable(std::vector<int> alphabet_sizes, std::vector<int> values);

  static FunctionTable from_callable(std::vector<int> alphabet_sizes,
                                     const std::function<int(std::span<const int>)>& f);

  /// Builtins over n arguments with a common alphabet {0..q-1}: max, min,
  /// parity (sum mod q), sum, and (1 iff no argument is 0), constant,
  /// threshold:t (1 iff sum >= t), interval:a:b (1 iff a <= sum <= b).
  static FunctionTable builtin(const std::string& name, int n, int q);

  /// Reads lines "x1 x2 ... -> v"; blank lines and lines starting with '#'
  /// are skipped. Alphabet sizes are 1 + the largest symbol per position and
  /// every tuple must appear exactly once.
  static FunctionTable parse(std::istream& in);

  int arity() const noexcept { return static_cast<int>(alphabet_.size()); }
  const std::vector<int>& alphabet_sizes() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<int>& values() const noexcept { return values_; }

  std::size_t index_of(std::span<const int> x) const;
  void decode(std::size_t index, std::span<int> x) const;
  std::vector<int> decode(std::size_t index) const;

  int operator()(std::span<const int> x) const { return values_[index_of(x)]; }
  int at(std::size_t index) const { return values_[index]; }

  /// Invariant under every permutation of the arguments (common alphabet).
  bool is_symmetric() const;
  /// Distinct output values, ascending.
  std::vector<int> range() const;

 private:
  std::vector<int> alphabet_;
  std::vector<std::size_t> stride_;
  std::vector<int> values_;
};

/// Number of tuples of the product alphabet; throws ResourceLimit past `cap`.
std::size_t product_size(std::span<const int> alphabet_sizes,
                         std::size_t cap = FunctionTable::kMaxEntries);

}  // namespace sensornet::compute

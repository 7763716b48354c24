#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sensornet/function_table.hpp"

namespace sensornet::compute {

using TypeVector = std::vector<int>;

/// Letter counts of x over {0..q-1}.
TypeVector type_vector(std::span<const int> x, int q);

/// f(x) depends only on min(type(x), theta), checked over every input.
/// Throws InvalidArgument for a non-symmetric f or a theta of wrong length.
bool is_type_threshold(const FunctionTable& f, const TypeVector& theta);

/// Largest number of inputs is_type_sensitive will enumerate.
inline constexpr std::size_t kTypeSensitiveBudget = 1000000;

/// The definition at this n: for j = n - ceil(gamma n), every assignment of
/// the first j arguments admits two completions with different values
/// (shorter prefixes follow by extension). Throws ResourceLimit when the
/// input space exceeds kTypeSensitiveBudget, InvalidArgument for a
/// non-symmetric f or gamma outside (0, 1).
bool is_type_sensitive(const FunctionTable& f, double gamma);

/// A partition of {0..count-1}.
struct Partition {
  std::vector<std::vector<int>> classes;  ///< each sorted; ordered by smallest member
  std::vector<int> class_of;

  int size() const noexcept { return static_cast<int>(classes.size()); }
};

/// Puts each element, in order, into the first class all of whose members it
/// need not be separated from; opens a new class otherwise.
template <class Separated>
Partition greedy_partition(int count, Separated&& separated) {
  Partition p;
  p.class_of.assign(static_cast<std::size_t>(count), -1);
  for (int x = 0; x < count; ++x) {
    int target = -1;
    for (int c = 0; c < p.size() && target < 0; ++c) {
      bool ok = true;
      for (int y : p.classes[c])
        if (separated(x, y)) {
          ok = false;
          break;
        }
      if (ok) target = c;
    }
    if (target < 0) {
      target = p.size();
      p.classes.emplace_back();
    }
    p.classes[target].push_back(x);
    p.class_of[x] = target;
  }
  return p;
}

enum class Side { First, Second };

/// Reduced alphabet of one argument of a two-argument f. x1 and x2 must be
/// separated if f(x1, y) != f(x2, y) for some y (average case: and
/// p(x1, y) p(x2, y) > 0, p indexed like f).
Partition greedy_reduce(const FunctionTable& f, Side side,
                        const std::optional<std::vector<double>>& p = std::nullopt);

}  // namespace sensornet::compute

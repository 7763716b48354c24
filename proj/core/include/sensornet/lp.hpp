#pragma once

#include <string>
#include <vector>

namespace sensornet {

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::vector<double> coefficients;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// Dense linear program. Variables are non-negative unless marked free.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<bool> free_variable;  // empty means "all non-negative"

  explicit LinearProgram(std::size_t variables = 0) : objective(variables, 0.0) {}

  std::size_t variable_count() const noexcept { return objective.size(); }

  void add(std::vector<double> coefficients, RowSense sense, double rhs) {
    constraints.push_back({std::move(coefficients), sense, rhs});
  }
  void set_free(std::size_t var) {
    if (free_variable.size() < objective.size()) free_variable.resize(objective.size(), false);
    free_variable[var] = true;
  }
  void set_all_free() { free_variable.assign(objective.size(), true); }
  bool is_free(std::size_t var) const {
    return var < free_variable.size() && free_variable[var];
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Optimize { Minimize, Maximize };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> witness;
};

std::string to_string(LpStatus status);

/// Two-phase dense tableau simplex with Bland's anti-cycling rule. For an
/// optimal result the witness is re-substituted into every constraint and a
/// NumericFailure is raised if any is violated beyond 1e-9 (scaled by the row
/// magnitude). Exceeding the pivot budget also raises NumericFailure.
LpResult lp_solve(const LinearProgram& lp, Optimize sense);

/// Largest violation of the program's constraints at x, relative to each
/// row's magnitude (0 means feasible).
double max_constraint_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace sensornet

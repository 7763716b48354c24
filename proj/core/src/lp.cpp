#include "sensornet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sensornet/errors.hpp"

namespace sensornet {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;

class Tableau {
 public:
  // rows x (cols + 1); last column is the right-hand side.
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Minimizes cost . x over the current basis with Bland's rule. Columns with
  // allowed[c] == false never enter. Returns false if unbounded.
  bool minimize(const std::vector<double>& cost, const std::vector<bool>& allowed,
                long long& budget) {
    for (;;) {
      if (--budget < 0) throw NumericFailure("simplex pivot budget exceeded");
      // Reduced costs: c_j - c_B B^{-1} A_j, tableau already holds B^{-1} A.
      std::size_t entering = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allowed[c]) continue;
        double reduced = cost[c];
        for (std::size_t r = 0; r < rows_; ++r) reduced -= cost[basis_[r]] * at(r, c);
        if (reduced < -kCostTol) {
          entering = c;
          break;
        }
      }
      if (entering == cols_) return true;
      std::size_t leaving = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double v = at(r, entering);
        if (v <= kPivotTol) continue;
        const double ratio = rhs(r) / v;
        if (ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 && leaving < rows_ && basis_[r] < basis_[leaving])) {
          best = ratio;
          leaving = r;
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

double row_scale(const LinearConstraint& row, const std::vector<double>& x) {
  double s = std::max(1.0, std::abs(row.rhs));
  for (std::size_t i = 0; i < row.coefficients.size() && i < x.size(); ++i)
    s = std::max(s, std::abs(row.coefficients[i] * x[i]));
  return s;
}

}  // namespace

double max_constraint_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : lp.constraints) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < row.coefficients.size(); ++i) lhs += row.coefficients[i] * x[i];
    double v = 0.0;
    switch (row.sense) {
      case RowSense::LessEqual: v = lhs - row.rhs; break;
      case RowSense::GreaterEqual: v = row.rhs - lhs; break;
      case RowSense::Equal: v = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, v / row_scale(row, x));
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!lp.is_free(i)) worst = std::max(worst, -x[i] / std::max(1.0, std::abs(x[i])));
  return worst;
}

LpResult lp_solve(const LinearProgram& lp, Optimize sense) {
  const std::size_t nv = lp.variable_count();
  for (const auto& row : lp.constraints)
    detail::require(row.coefficients.size() == nv, "constraint width does not match variable count");

  // Column layout: original variables (free ones split into +/-), then one
  // slack/surplus per inequality, then one artificial per row that needs it.
  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    pos_col[v] = cols++;
    if (lp.is_free(v)) neg_col[v] = cols++;
  }
  const std::size_t m = lp.constraints.size();
  std::vector<double> sign(m, 1.0);
  std::vector<RowSense> senses(m);
  for (std::size_t r = 0; r < m; ++r) {
    senses[r] = lp.constraints[r].sense;
    if (lp.constraints[r].rhs < 0) {
      sign[r] = -1.0;
      if (senses[r] == RowSense::LessEqual) senses[r] = RowSense::GreaterEqual;
      else if (senses[r] == RowSense::GreaterEqual) senses[r] = RowSense::LessEqual;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r)
    if (senses[r] != RowSense::Equal) slack_col[r] = cols++;
  const std::size_t first_art = cols;
  for (std::size_t r = 0; r < m; ++r)
    if (senses[r] != RowSense::LessEqual) art_col[r] = cols++;

  Tableau t(m, cols);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.constraints[r];
    for (std::size_t v = 0; v < nv; ++v) {
      const double a = sign[r] * row.coefficients[v];
      t.at(r, pos_col[v]) = a;
      if (neg_col[v] != SIZE_MAX) t.at(r, neg_col[v]) = -a;
    }
    t.rhs(r) = sign[r] * row.rhs;
    if (slack_col[r] != SIZE_MAX)
      t.at(r, slack_col[r]) = senses[r] == RowSense::LessEqual ? 1.0 : -1.0;
    if (art_col[r] != SIZE_MAX) t.at(r, art_col[r]) = 1.0;
    t.basis()[r] = senses[r] == RowSense::LessEqual ? slack_col[r] : art_col[r];
  }

  long long budget = 50000 + 200LL * static_cast<long long>(cols + m);
  std::vector<bool> allowed(cols, true);

  if (first_art < cols) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = first_art; c < cols; ++c) phase1[c] = 1.0;
    t.minimize(phase1, allowed, budget);
    double infeas = 0.0;
    for (std::size_t r = 0; r < m; ++r)
      if (t.basis()[r] >= first_art) infeas += t.rhs(r);
    double scale = 1.0;
    for (const auto& row : lp.constraints) scale = std::max(scale, std::abs(row.rhs));
    if (infeas > 1e-9 * scale) return {LpStatus::Infeasible, 0.0, {}};
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < first_art) continue;
      for (std::size_t c = 0; c < first_art; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          t.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = first_art; c < cols; ++c) allowed[c] = false;
  }

  std::vector<double> cost(cols, 0.0);
  const double dir = sense == Optimize::Minimize ? 1.0 : -1.0;
  for (std::size_t v = 0; v < nv; ++v) {
    cost[pos_col[v]] = dir * lp.objective[v];
    if (neg_col[v] != SIZE_MAX) cost[neg_col[v]] = -dir * lp.objective[v];
  }
  if (!t.minimize(cost, allowed, budget)) return {LpStatus::Unbounded, 0.0, {}};

  std::vector<double> column_value(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) column_value[t.basis()[r]] = t.rhs(r);
  LpResult result;
  result.status = LpStatus::Optimal;
  result.witness.assign(nv, 0.0);
  for (std::size_t v = 0; v < nv; ++v) {
    double x = column_value[pos_col[v]];
    if (neg_col[v] != SIZE_MAX) x -= column_value[neg_col[v]];
    if (!lp.is_free(v) && x < 0.0 && x > -1e-12) x = 0.0;
    result.witness[v] = x;
  }
  for (std::size_t v = 0; v < nv; ++v) result.value += lp.objective[v] * result.witness[v];

  if (max_constraint_violation(lp, result.witness) > 1e-9) {
    throw NumericFailure("simplex witness violates a constraint beyond tolerance");
  }
  return result;
}

}  // namespace sensornet

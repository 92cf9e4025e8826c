#include "rrr/simplex.hpp"

#include <cmath>
#include <limits>

#include "rrr/error.hpp"

namespace rrr {
namespace {
constexpr double kPivotEps = 1e-11;
}

DenseLp::DenseLp(std::size_t variables, std::vector<double> objective)
    : vars_(variables), objective_(std::move(objective)) {
  if (objective_.size() != vars_) {
    throw Error(ErrorCode::kDimensionMismatch, "objective length differs from variable count");
  }
}

void DenseLp::add_constraint(std::vector<double> row, double rhs) {
  if (row.size() != vars_) throw Error(ErrorCode::kDimensionMismatch, "constraint width");
  if (rhs < 0.0) throw Error(ErrorCode::kInvalidConfig, "negative right-hand side");
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
}

LpResult DenseLp::maximize(std::size_t max_pivots) const {
  const std::size_t m = rows_.size();
  const std::size_t cols = vars_ + m;  // structural + slack
  // Tableau rows 0..m-1 are constraints, row m is the reduced-cost row
  // (stored as -c so that a negative entry means an improving column).
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < vars_; ++j) t[i][j] = rows_[i][j];
    t[i][vars_ + i] = 1.0;
    t[i][cols] = rhs_[i];
    basis[i] = vars_ + i;
  }
  for (std::size_t j = 0; j < vars_; ++j) t[m][j] = -objective_[j];

  LpResult result;
  for (std::size_t pivots = 0; pivots <= max_pivots; ++pivots) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (t[m][j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) {
      result.status = LpStatus::kOptimal;
      result.objective = t[m][cols];
      result.x.assign(vars_, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < vars_) result.x[basis[i]] = t[i][cols];
      }
      return result;
    }
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= kPivotEps) continue;
      const double ratio = t[i][cols] / t[i][enter];
      if (ratio < best_ratio - kPivotEps ||
          (leave != m && std::abs(ratio - best_ratio) <= kPivotEps &&
           basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == m) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = t[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
  result.status = LpStatus::kIterationLimit;
  return result;
}

}  // namespace rrr

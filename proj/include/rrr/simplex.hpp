#pragma once

// Small dense simplex for   maximize c.x  subject to  A x <= b,  x >= 0,
// with b >= 0 so the slack basis is feasible from the start. Pivoting follows
// Bland's rule, which makes the result deterministic and rules out cycling on
// the heavily degenerate k-set LPs.

#include <cstddef>
#include <vector>

namespace rrr {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
};

class DenseLp {
 public:
  DenseLp(std::size_t variables, std::vector<double> objective);

  // Adds  row . x <= rhs  (rhs must be >= 0).
  void add_constraint(std::vector<double> row, double rhs);

  std::size_t variables() const noexcept { return vars_; }
  std::size_t constraints() const noexcept { return rhs_.size(); }

  LpResult maximize(std::size_t max_pivots = 50000) const;

 private:
  std::size_t vars_;
  std::vector<double> objective_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
};

}  // namespace rrr

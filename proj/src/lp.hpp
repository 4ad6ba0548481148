#pragma once

#include <Eigen/Core>

namespace sweep::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

// minimize c'x  subject to  M x = r, x >= 0.
// Dense two-phase tableau simplex with Bland's rule; meant for the handful of
// rows and columns that show up in polytope support queries.
LpSolution solve_standard_lp(const Eigen::MatrixXd& M, const Eigen::VectorXd& r,
                             const Eigen::VectorXd& c);

}  // namespace sweep::detail

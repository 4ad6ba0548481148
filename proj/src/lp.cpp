#include "lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace sweep::detail {
namespace {

void pivot(Eigen::MatrixXd& T, std::vector<int>& basis, Eigen::Index row, Eigen::Index col) {
  T.row(row) /= T(row, col);
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    if (i != row && T(i, col) != 0.0) {
      T.row(i) -= T(i, col) * T.row(row);
    }
  }
  basis[static_cast<std::size_t>(row)] = static_cast<int>(col);
}

// Runs simplex iterations on T (last row holds reduced costs, last column the
// right-hand side). Only columns < n_enter may enter. Returns false when the
// objective is unbounded below.
bool iterate(Eigen::MatrixXd& T, std::vector<int>& basis, Eigen::Index n_enter, double eps) {
  const Eigen::Index p = T.rows() - 1;
  const Eigen::Index rhs = T.cols() - 1;
  for (int guard = 0; guard < 100000; ++guard) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n_enter; ++j) {
      if (T(p, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < p; ++i) {
      if (T(i, enter) > eps) {
        const double ratio = T(i, rhs) / T(i, enter);
        if (ratio < best - eps ||
            (std::abs(ratio - best) <= eps && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;
    pivot(T, basis, leave, enter);
  }
  return true;
}

}  // namespace

LpSolution solve_standard_lp(const Eigen::MatrixXd& M, const Eigen::VectorXd& r,
                             const Eigen::VectorXd& c) {
  const Eigen::Index p = M.rows();
  const Eigen::Index n = M.cols();
  const double scale = 1.0 + M.cwiseAbs().maxCoeff() + r.cwiseAbs().maxCoeff() +
                       (c.size() ? c.cwiseAbs().maxCoeff() : 0.0);
  const double eps = 1e-12 * scale;

  // Columns: n structural, p artificial, 1 rhs.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(p + 1, n + p + 1);
  std::vector<int> basis(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    const double sign = r(i) < 0.0 ? -1.0 : 1.0;
    T.block(i, 0, 1, n) = sign * M.row(i);
    T(i, n + i) = 1.0;
    T(i, n + p) = sign * r(i);
    basis[static_cast<std::size_t>(i)] = static_cast<int>(n + i);
  }
  // Phase 1: minimize the sum of artificials.
  for (Eigen::Index i = 0; i < p; ++i) {
    T.block(p, 0, 1, n) -= T.block(i, 0, 1, n);
    T(p, n + p) -= T(i, n + p);
  }
  iterate(T, basis, n, eps);

  LpSolution out;
  if (-T(p, n + p) > 1e-9 * scale) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  // Drive zero-level artificials out of the basis where possible.
  for (Eigen::Index i = 0; i < p; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= n) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(T(i, j)) > eps) {
          pivot(T, basis, i, j);
          break;
        }
      }
    }
  }

  // Phase 2 reduced costs.
  T.row(p).setZero();
  T.block(p, 0, 1, n) = c.transpose();
  for (Eigen::Index i = 0; i < p; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    if (b < n) {
      T.row(p) -= c(b) * T.row(i);
    }
  }
  if (!iterate(T, basis, n, eps)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < p; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    if (b < n) out.x(b) = T(i, n + p);
  }
  out.value = c.dot(out.x);
  return out;
}

}  // namespace sweep::detail

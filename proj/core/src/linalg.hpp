#pragma once

#include <Eigen/Dense>

namespace nhsense::detail {

// Diagonal similarity a = diag(scale) * matrix * diag(scale)^-1 minimising the
// off-diagonal Frobenius norm of matrix.
struct Balanced {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd scale;
};

Balanced balance(const Eigen::MatrixXd& a);

// Solves a x + x a^T + q = 0 for real a with no eigenvalue pair summing to zero.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& q);

double max_real_eigenvalue(const Eigen::MatrixXd& a);

}  // namespace nhsense::detail

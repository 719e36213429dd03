#pragma once

#include <functional>

#include <Eigen/Dense>

namespace dressed {

struct LsqOptions {
  double rel_step_tol = 1e-10;
  int max_iterations = 200;
  double initial_damping = 1e-3;
};

struct LsqResult {
  Eigen::VectorXd params;
  double residual_norm = 0.0;
  /// s^2 (J^T J)^-1 with s^2 = |r|^2 / (m - n); zero when m == n.
  Eigen::MatrixXd covariance;
  int iterations = 0;
  bool converged = false;
};

/// Fills the residual vector and, when `jacobian` is non-null, the m x n
/// Jacobian at `params`.
using ResidualFunction =
    std::function<void(const Eigen::VectorXd& params, Eigen::VectorXd& residual, Eigen::MatrixXd* jacobian)>;

/// Damped Gauss-Newton with a Levenberg-Marquardt damping schedule.
/// Converged when an accepted step satisfies |dp| <= rel_step_tol (|p| + rel_step_tol).
LsqResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd initial, const LsqOptions& opts = {});

/// Central-difference Jacobian for residual-only models.
ResidualFunction with_numeric_jacobian(std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> residual);

}  // namespace dressed

#include "dressed/least_squares.hpp"

#include <cmath>
#include <limits>

namespace dressed {

LsqResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd p, const LsqOptions& opts) {
  const Eigen::Index n = p.size();
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  f(p, r, &jac);
  double cost = r.squaredNorm();
  double lambda = opts.initial_damping;

  LsqResult out;
  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    if (!std::isfinite(cost)) break;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (cost == 0.0 || grad.lpNorm<Eigen::Infinity>() == 0.0) {
      out.converged = true;
      break;
    }

    bool accepted = false;
    while (lambda < 1e20) {
      Eigen::MatrixXd a = jtj;
      for (Eigen::Index i = 0; i < n; ++i) a(i, i) += lambda * std::max(jtj(i, i), 1e-300);
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      const Eigen::VectorXd trial = p + step;
      Eigen::VectorXd r_trial;
      f(trial, r_trial, nullptr);
      const double trial_cost = r_trial.squaredNorm();
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        p = trial;
        lambda = std::max(lambda / 10.0, 1e-15);
        const bool small = step.norm() <= opts.rel_step_tol * (p.norm() + opts.rel_step_tol);
        f(p, r, &jac);
        cost = r.squaredNorm();
        accepted = true;
        if (small) out.converged = true;
        break;
      }
      lambda *= 10.0;
    }
    // no downhill step at any damping: at a minimum to working precision
    if (!accepted) {
      out.converged = true;
      break;
    }
    if (out.converged) break;
  }

  out.params = p;
  out.residual_norm = std::sqrt(cost);
  const Eigen::Index m = r.size();
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  const double s2 = m > n ? cost / static_cast<double>(m - n) : 0.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  out.covariance = lu.isInvertible()
                       ? Eigen::MatrixXd(s2 * lu.inverse())
                       : Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
  return out;
}

ResidualFunction with_numeric_jacobian(std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> residual) {
  return [residual](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    residual(p, r);
    if (!jac) return;
    jac->resize(r.size(), p.size());
    Eigen::VectorXd rp, rm;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(p[i]));
      Eigen::VectorXd q = p;
      q[i] += h;
      residual(q, rp);
      q[i] -= 2.0 * h;
      residual(q, rm);
      jac->col(i) = (rp - rm) / (2.0 * h);
    }
  };
}

}  // namespace dressed

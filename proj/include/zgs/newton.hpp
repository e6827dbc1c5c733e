#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

#include <Eigen/Dense>

#include "zgs/errors.hpp"

namespace zgs {

template <typename F>
concept SmoothObjective = requires(const F& f, const Eigen::VectorXd& x) {
  { f.value(x) } -> std::convertible_to<double>;
  { f.gradient(x) } -> std::convertible_to<Eigen::VectorXd>;
  { f.hessian(x) } -> std::convertible_to<Eigen::MatrixXd>;
};

struct NewtonOptions {
  double rel_tolerance = 1e-12;  // on ||grad||, relative to max(1, ||grad f(0)||)
  int max_iterations = 100;
  double armijo = 1e-4;
  int max_halvings = 60;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Damped Newton with backtracking (step halving under the Armijo rule).
/// Convergence is declared when ||grad f(x)|| <= rel_tolerance * max(1,
/// ||grad f(0)||); the reference scale is taken at the origin so that
/// restarting from a solution is a no-op.
template <SmoothObjective F>
NewtonResult damped_newton(const F& f, Eigen::VectorXd x, const NewtonOptions& opts = {}) {
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(x.size());
  const double tol = opts.rel_tolerance * std::max(1.0, f.gradient(origin).norm());

  NewtonResult r;
  Eigen::VectorXd g = f.gradient(x);
  double fx = f.value(x);
  for (r.iterations = 0; r.iterations < opts.max_iterations; ++r.iterations) {
    if (g.norm() <= tol) {
      r.x = std::move(x);
      r.grad_norm = g.norm();
      return r;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(f.hessian(x));
    if (llt.info() != Eigen::Success) {
      throw NewtonFailure("Newton: Hessian is not positive definite");
    }
    const Eigen::VectorXd d = -llt.solve(g);
    const double slope = g.dot(d);  // -(Newton decrement)^2

    // Inside the quadratic-convergence region the full step is always taken;
    // the function decrease there is below what Armijo can resolve in double.
    double t = 1.0;
    Eigen::VectorXd trial = x + d;
    double f_trial = f.value(trial);
    if (-slope > 1e-10 * std::max(1.0, std::abs(fx))) {
      int halvings = 0;
      while (!(f_trial <= fx + opts.armijo * t * slope)) {
        if (++halvings > opts.max_halvings) {
          throw NewtonFailure("Newton: line search failed");
        }
        t *= 0.5;
        trial = x + t * d;
        f_trial = f.value(trial);
      }
    }
    x = std::move(trial);
    fx = f_trial;
    g = f.gradient(x);
  }
  if (g.norm() <= tol) {
    r.x = std::move(x);
    r.grad_norm = g.norm();
    return r;
  }
  throw NewtonFailure("Newton: gradient tolerance not reached in " +
                      std::to_string(opts.max_iterations) + " iterations");
}

}  // namespace zgs

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "zgs/dynamics.hpp"

namespace zgs {

enum class Method { kRk4Fixed, kRk45Adaptive };

struct IntegratorConfig {
  Method method = Method::kRk4Fixed;
  double step = 1e-3;  // rk4
  // rk45 (Dormand-Prince 5(4) with PI step control)
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double h_init = 1e-3;
  double h_min = 1e-12;
  double h_max = 0.1;

  double t_end = 10.0;
  double sample_every = 0.01;

  /// Throws InvalidArgument on non-positive tolerances/step/horizon or
  /// h_min <= h_init <= h_max violated.
  void validate() const;
};

struct Sample {
  double t = 0.0;
  double V = 0.0;
  double V_rate = 0.0;
  double grad_sum_norm = 0.0;
  double disagreement = 0.0;
  double err_to_xstar = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StackedState> states;
  std::vector<Sample> diagnostics;
  int steps = 0;
  int rejected_steps = 0;  // rk45 only
};

using Rhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using Observer = std::function<void(double, const Eigen::VectorXd&)>;

struct OdeStats {
  int steps = 0;
  int rejected = 0;
};

/// Integrates x' = rhs(t, x) on [0, t_end], calling `observe` at t = 0, at
/// every multiple of sample_every and at t_end. Throws StepUnderflow or
/// NonFiniteState.
OdeStats integrate_ode(const Rhs& rhs, const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
                       const Observer& observe);

/// Simulates the ZGS flow from a validated initial state and attaches the
/// diagnostics (V, dV/dt, gradient-sum norm, disagreement, error to x*).
Trajectory integrate(const NetworkProblem& p, const CheckedState& x0,
                     const Eigen::VectorXd& x_star, const IntegratorConfig& cfg);

}  // namespace zgs

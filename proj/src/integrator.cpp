#include "zgs/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zgs/errors.hpp"

namespace zgs {

void IntegratorConfig::validate() const {
  if (!(t_end > 0.0)) throw InvalidArgument("integrator: t_end must be positive");
  if (!(sample_every > 0.0)) throw InvalidArgument("integrator: sample_every must be positive");
  if (method == Method::kRk4Fixed) {
    if (!(step > 0.0)) throw InvalidArgument("integrator: step must be positive");
    return;
  }
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw InvalidArgument("integrator: tolerances must be positive");
  }
  if (!(h_min > 0.0) || !(h_min <= h_init) || !(h_init <= h_max)) {
    throw InvalidArgument("integrator: require 0 < h_min <= h_init <= h_max");
  }
}

namespace {

void check_finite(const Eigen::VectorXd& x, double t) {
  if (!x.allFinite()) {
    throw NonFiniteState("integrator: non-finite state at t = " + std::to_string(t));
  }
}

OdeStats rk4_fixed(const Rhs& f, Eigen::VectorXd x, const IntegratorConfig& cfg,
                   const Observer& observe) {
  const double h = cfg.step;
  auto n_steps = static_cast<long>(std::llround(cfg.t_end / h));
  if (std::abs(static_cast<double>(n_steps) * h - cfg.t_end) > 1e-9 * cfg.t_end) {
    n_steps = static_cast<long>(std::ceil(cfg.t_end / h));
  }
  n_steps = std::max(n_steps, 1L);
  const long stride = std::max(1L, static_cast<long>(std::llround(cfg.sample_every / h)));

  OdeStats stats;
  observe(0.0, x);
  double t = 0.0;
  for (long k = 1; k <= n_steps; ++k) {
    const double t_next = k == n_steps ? cfg.t_end : static_cast<double>(k) * h;
    const double dt = t_next - t;
    const Eigen::VectorXd k1 = f(t, x);
    const Eigen::VectorXd k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = f(t + dt, x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t_next;
    ++stats.steps;
    check_finite(x, t);
    if (k % stride == 0 || k == n_steps) observe(t, x);
  }
  return stats;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

OdeStats rk45_adaptive(const Rhs& f, Eigen::VectorXd x, const IntegratorConfig& cfg,
                       const Observer& observe) {
  // PI controller constants (Hairer, Norsett & Wanner).
  constexpr double kSafety = 0.9, kBeta = 0.04, kExpo = 0.2 - 0.75 * kBeta;
  constexpr double kMinShrink = 0.2, kMaxGrow = 10.0;

  OdeStats stats;
  observe(0.0, x);
  double t = 0.0;
  double h = cfg.h_init;
  double err_old = 1e-4;
  long sample_index = 1;
  auto next_sample = [&] {
    return std::min(cfg.t_end, static_cast<double>(sample_index) * cfg.sample_every);
  };

  while (t < cfg.t_end) {
    const double target = next_sample();
    const bool clipped = t + h >= target;
    const double dt = clipped ? target - t : h;

    const Eigen::VectorXd k1 = f(t, x);
    const Eigen::VectorXd k2 = f(t + c2 * dt, x + dt * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * dt, x + dt * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + c4 * dt, x + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        f(t + c5 * dt, x + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        f(t + dt, x + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd x_new =
        x + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = f(t + dt, x_new);
    const Eigen::VectorXd err_vec =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x(i)), std::abs(x_new(i)));
      err += (err_vec(i) / sc) * (err_vec(i) / sc);
    }
    err = std::sqrt(err / static_cast<double>(std::max<Eigen::Index>(x.size(), 1)));
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      err = std::max(err, 1e-10);
      double grow = std::pow(err, kExpo) / std::pow(err_old, kBeta) / kSafety;
      grow = std::clamp(grow, 1.0 / kMaxGrow, 1.0 / kMinShrink);
      err_old = err;
      x = x_new;
      t = clipped ? target : t + dt;
      ++stats.steps;
      check_finite(x, t);
      if (clipped) {
        observe(t, x);
        ++sample_index;
      }
      // A clipped step says nothing about how large h may be.
      const double proposal = dt / grow;
      h = std::min(cfg.h_max, clipped ? std::max(h, proposal) : proposal);
    } else {
      ++stats.rejected;
      const double shrink = std::max(kMinShrink, kSafety * std::pow(err, -kExpo * 1.0));
      h = dt * shrink;
      if (h < cfg.h_min) {
        throw StepUnderflow("integrator: step size " + std::to_string(h) +
                            " below h_min at t = " + std::to_string(t));
      }
    }
  }
  return stats;
}

}  // namespace

OdeStats integrate_ode(const Rhs& rhs, const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
                       const Observer& observe) {
  cfg.validate();
  check_finite(x0, 0.0);
  return cfg.method == Method::kRk4Fixed ? rk4_fixed(rhs, x0, cfg, observe)
                                         : rk45_adaptive(rhs, x0, cfg, observe);
}

Trajectory integrate(const NetworkProblem& p, const CheckedState& x0,
                     const Eigen::VectorXd& x_star, const IntegratorConfig& cfg) {
  p.check_state(x0.state());
  if (x_star.size() != p.dim()) throw DimensionMismatch("integrate: x* has the wrong length");
  const StackedState x_star_stacked = stack_repeated(x_star, p.nodes());

  Trajectory traj;
  auto observe = [&](double t, const Eigen::VectorXd& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    Sample s;
    s.t = t;
    s.V = lyapunov(p, x, x_star);
    s.V_rate = lyapunov_rate(p, x);
    s.grad_sum_norm = gradient_sum(p, x).norm();
    s.disagreement = disagreement(x, p.dim());
    s.err_to_xstar = (x - x_star_stacked).norm();
    traj.diagnostics.push_back(s);
  };
  const OdeStats stats = integrate_ode(
      [&](double, const Eigen::VectorXd& x) { return vector_field(p, x); }, x0.state(), cfg,
      observe);
  traj.steps = stats.steps;
  traj.rejected_steps = stats.rejected;
  return traj;
}

}  // namespace zgs

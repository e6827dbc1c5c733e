#include "zgs/oracle.hpp"

#include <cmath>

#include "zgs/errors.hpp"
#include "zgs/newton.hpp"

namespace zgs {

namespace {

struct SumObjective {
  const NetworkProblem& p;

  double value(const Eigen::VectorXd& x) const { return total_objective(p, x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    for (const auto& f : p.objectives()) g += f.gradient(x);
    return g;
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(x.size(), x.size());
    for (const auto& f : p.objectives()) h += f.hessian(x);
    return h;
  }
};

}  // namespace

double total_objective(const NetworkProblem& p, const Eigen::VectorXd& x) {
  double v = 0.0;
  for (const auto& f : p.objectives()) v += f.value(x);
  return v;
}

OracleResult solve_centralized(const NetworkProblem& p, const Eigen::VectorXd& start) {
  if (start.size() != p.dim()) throw DimensionMismatch("oracle: start has the wrong length");
  const auto r = damped_newton(SumObjective{p}, start);
  return {r.x, r.grad_norm, r.iterations};
}

OracleResult solve_centralized(const NetworkProblem& p) {
  return solve_centralized(p, Eigen::VectorXd::Zero(p.dim()));
}

IntersectionReport verify_agreement_manifold_intersection(const NetworkProblem& p,
                                                          const Eigen::VectorXd& x_star,
                                                          const GridOptions& grid) {
  IntersectionReport r;
  const StackedState x = stack_repeated(x_star, p.nodes());
  r.residual_norm = gradient_sum(p, x).norm();
  r.disagreement = disagreement(x, p.dim());
  r.passed = r.residual_norm <= grid.residual_tol && r.disagreement == 0.0;

  if (p.dim() != 1) return r;
  r.grid_scanned = true;
  const SumObjective F{p};
  const auto cells = static_cast<long>(std::llround((grid.hi - grid.lo) / grid.step));
  Eigen::VectorXd c(1);
  c(0) = grid.lo;
  double prev = F.gradient(c)(0);
  for (long k = 1; k <= cells; ++k) {
    c(0) = grid.lo + static_cast<double>(k) * grid.step;
    const double cur = F.gradient(c)(0);
    if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0)) {
      ++r.sign_changes;
      r.crossing_lo = c(0) - grid.step;
      r.crossing_hi = c(0);
    }
    prev = cur;
  }
  const bool near = r.sign_changes == 1 && x_star(0) >= r.crossing_lo - grid.step &&
                    x_star(0) <= r.crossing_hi + grid.step;
  r.passed = r.passed && near;
  return r;
}

}  // namespace zgs

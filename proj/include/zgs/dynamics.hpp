#pragma once

#include <vector>

#include <Eigen/Dense>

#include "zgs/coupling.hpp"
#include "zgs/graph.hpp"
#include "zgs/objective.hpp"

namespace zgs {

/// Stacked state (x_1, ..., x_N), each x_i in R^n, stored contiguously.
using StackedState = Eigen::VectorXd;

/// Graph, per-node objectives and per-edge couplings. Fully determines the
/// zero-gradient-sum vector field.
class NetworkProblem {
 public:
  /// `couplings` must contain exactly one entry per graph edge (any order).
  NetworkProblem(Graph graph, std::vector<Objective> objectives,
                 std::vector<EdgeCoupling> couplings);

  const Graph& graph() const { return graph_; }
  int nodes() const { return graph_.size(); }
  int dim() const { return dim_; }
  int state_size() const { return nodes() * dim_; }
  const std::vector<Objective>& objectives() const { return objectives_; }
  const Objective& objective(int i) const { return objectives_[i]; }
  /// Indexed like graph().edges().
  const std::vector<EdgeCoupling>& couplings() const { return couplings_; }

  bool all_quadratic() const;
  bool gradient_diff_couplings() const;

  auto node(const StackedState& x, int i) const { return x.segment(i * dim_, dim_); }
  auto node(StackedState& x, int i) const { return x.segment(i * dim_, dim_); }

  void check_state(const StackedState& x) const;

 private:
  Graph graph_;
  std::vector<Objective> objectives_;
  std::vector<EdgeCoupling> couplings_;
  int dim_;
};

/// x_i' = (hess f_i(x_i))^{-1} sum_{j in N_i} phi_ij(x_i, x_j).
StackedState vector_field(const NetworkProblem& p, const StackedState& x);

/// Per-node coupling sums phi_i = sum_{j in N_i} phi_ij(x_i, x_j).
StackedState coupling_sums(const NetworkProblem& p, const StackedState& x);

/// V(x) = sum_i f_i(x*) - f_i(x_i) - grad f_i(x_i)^T (x* - x_i).
double lyapunov(const NetworkProblem& p, const StackedState& x, const Eigen::VectorXd& x_star);

/// dV/dt along the flow: sum over edges of (x_i - x_j)^T phi_ij(x_i, x_j).
double lyapunov_rate(const NetworkProblem& p, const StackedState& x);

/// sum_i grad f_i(x_i); zero exactly on the manifold.
Eigen::VectorXd gradient_sum(const NetworkProblem& p, const StackedState& x);

/// sum_i ||x_i - mean||^2.
double disagreement(const StackedState& x, int dim);

/// Stacked state that passed the manifold check. Only validate_initialization
/// and default_initialization produce one.
class CheckedState {
 public:
  const StackedState& state() const { return x_; }
  double residual() const { return residual_; }

 private:
  friend CheckedState validate_initialization(const NetworkProblem&, const StackedState&, double);
  CheckedState(StackedState x, double residual) : x_(std::move(x)), residual_(residual) {}
  StackedState x_;
  double residual_;
};

inline constexpr double kManifoldTolerance = 1e-8;

/// Accepts x0 iff ||gradient_sum(x0)|| <= tol * max(1, max_i ||grad f_i(x0_i)||).
/// Throws ManifoldViolation otherwise.
CheckedState validate_initialization(const NetworkProblem& p, const StackedState& x0,
                                     double tol = kManifoldTolerance);

/// (x_1*, ..., x_N*): every node starts at its local minimizer.
CheckedState default_initialization(const NetworkProblem& p);

StackedState stack_repeated(const Eigen::VectorXd& v, int nodes);

}  // namespace zgs

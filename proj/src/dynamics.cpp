#include "zgs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "zgs/errors.hpp"

namespace zgs {

NetworkProblem::NetworkProblem(Graph graph, std::vector<Objective> objectives,
                               std::vector<EdgeCoupling> couplings)
    : graph_(std::move(graph)), objectives_(std::move(objectives)) {
  if (static_cast<int>(objectives_.size()) != graph_.size()) {
    throw InvalidArgument("problem: need one objective per node (" +
                          std::to_string(graph_.size()) + "), got " +
                          std::to_string(objectives_.size()));
  }
  dim_ = objectives_.front().dim();
  for (const auto& f : objectives_) {
    if (f.dim() != dim_) throw DimensionMismatch("problem: objectives differ in dimension");
  }
  const auto& edges = graph_.edges();
  std::vector<std::optional<EdgeCoupling>> slots(edges.size());
  for (auto& c : couplings) {
    const int k = graph_.edge_index(c.edge().lo, c.edge().hi);
    if (k < 0) {
      throw InvalidArgument("problem: coupling for {" + std::to_string(c.edge().lo) + "," +
                            std::to_string(c.edge().hi) + "} which is not an edge");
    }
    if (slots[k]) throw InvalidArgument("problem: two couplings for the same edge");
    if (const auto* g = c.potential(); g != nullptr && g->dim() != dim_) {
      throw DimensionMismatch("problem: link potential dimension differs from objectives");
    }
    slots[k].emplace(std::move(c));
  }
  couplings_.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!slots[k]) {
      throw InvalidArgument("problem: edge {" + std::to_string(edges[k].lo) + "," +
                            std::to_string(edges[k].hi) + "} has no coupling");
    }
    couplings_.push_back(std::move(*slots[k]));
  }
}

bool NetworkProblem::all_quadratic() const {
  return std::all_of(objectives_.begin(), objectives_.end(),
                     [](const Objective& f) { return f.is_quadratic(); });
}

bool NetworkProblem::gradient_diff_couplings() const {
  return std::all_of(couplings_.begin(), couplings_.end(),
                     [](const EdgeCoupling& c) { return c.is_gradient_diff(); });
}

void NetworkProblem::check_state(const StackedState& x) const {
  if (x.size() != state_size()) {
    throw DimensionMismatch("state has length " + std::to_string(x.size()) + ", expected " +
                            std::to_string(state_size()));
  }
}

StackedState coupling_sums(const NetworkProblem& p, const StackedState& x) {
  p.check_state(x);
  StackedState phi = StackedState::Zero(x.size());
  for (const auto& c : p.couplings()) {
    const int i = c.edge().lo;
    const int j = c.edge().hi;
    const Eigen::VectorXd f = c.forward(p.node(x, i), p.node(x, j));
    p.node(phi, i) += f;
    p.node(phi, j) -= f;  // phi_ji(x_j, x_i) = -phi_ij(x_i, x_j)
  }
  return phi;
}

StackedState vector_field(const NetworkProblem& p, const StackedState& x) {
  StackedState v = coupling_sums(p, x);
  for (int i = 0; i < p.nodes(); ++i) {
    Eigen::LLT<Eigen::MatrixXd> llt(p.objective(i).hessian(p.node(x, i)));
    if (llt.info() != Eigen::Success) {
      throw HessianSolveFailure("Hessian of node " + std::to_string(i) +
                                " is not positive definite");
    }
    p.node(v, i) = llt.solve(Eigen::VectorXd(p.node(v, i)));
  }
  return v;
}

double lyapunov(const NetworkProblem& p, const StackedState& x, const Eigen::VectorXd& x_star) {
  p.check_state(x);
  if (x_star.size() != p.dim()) throw DimensionMismatch("lyapunov: x* has the wrong length");
  double v = 0.0;
  for (int i = 0; i < p.nodes(); ++i) v += p.objective(i).bregman(x_star, p.node(x, i));
  return v;
}

double lyapunov_rate(const NetworkProblem& p, const StackedState& x) {
  p.check_state(x);
  double rate = 0.0;
  for (const auto& c : p.couplings()) {
    const auto xi = p.node(x, c.edge().lo);
    const auto xj = p.node(x, c.edge().hi);
    rate += (xi - xj).dot(c.forward(xi, xj));
  }
  return rate;
}

Eigen::VectorXd gradient_sum(const NetworkProblem& p, const StackedState& x) {
  p.check_state(x);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p.dim());
  for (int i = 0; i < p.nodes(); ++i) g += p.objective(i).gradient(p.node(x, i));
  return g;
}

double disagreement(const StackedState& x, int dim) {
  if (dim < 1 || x.size() % dim != 0) throw DimensionMismatch("disagreement: bad dimension");
  const auto nodes = x.size() / dim;
  // Pairwise form of sum_i ||x_i - mean||^2: exactly zero on agreement states.
  double s = 0.0;
  for (Eigen::Index i = 0; i < nodes; ++i) {
    for (Eigen::Index j = i + 1; j < nodes; ++j) {
      s += (x.segment(i * dim, dim) - x.segment(j * dim, dim)).squaredNorm();
    }
  }
  return s / static_cast<double>(nodes);
}

CheckedState validate_initialization(const NetworkProblem& p, const StackedState& x0, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("validate_initialization: tol must be positive");
  p.check_state(x0);
  if (!x0.allFinite()) throw ManifoldViolation("initial state is not finite");
  double scale = 1.0;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p.dim());
  for (int i = 0; i < p.nodes(); ++i) {
    const Eigen::VectorXd gi = p.objective(i).gradient(p.node(x0, i));
    scale = std::max(scale, gi.norm());
    g += gi;
  }
  const double residual = g.norm();
  if (!(residual <= tol * scale)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "initial state is off the zero-gradient-sum manifold: ||sum grad f_i|| = %.6g "
                  "> %.3g",
                  residual, tol * scale);
    throw ManifoldViolation(buf);
  }
  return CheckedState(x0, residual);
}

CheckedState default_initialization(const NetworkProblem& p) {
  StackedState x0(p.state_size());
  for (int i = 0; i < p.nodes(); ++i) p.node(x0, i) = p.objective(i).local_minimizer();
  return validate_initialization(p, x0);
}

StackedState stack_repeated(const Eigen::VectorXd& v, int nodes) {
  return v.replicate(nodes, 1);
}

}  // namespace zgs

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "zgs/dynamics.hpp"
#include "zgs/random.hpp"

namespace zgs::testing {

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

/// f_i = w_i/2 (x - y_i)^2 on the given graph, couplings grad g with g = x^2/2.
inline NetworkProblem scalar_quadratics(const Graph& g, const std::vector<double>& centers,
                                        const std::vector<double>& weights = {}) {
  std::vector<Objective> fs;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    fs.push_back(Objective::weighted_quadratic(Eigen::MatrixXd::Constant(1, 1, w),
                                               Eigen::VectorXd::Constant(1, centers[i])));
  }
  std::vector<EdgeCoupling> cs;
  for (const auto& e : g.edges()) {
    cs.emplace_back(e, GradientDiff{LinkPotential::quadratic(Eigen::MatrixXd::Identity(1, 1))});
  }
  return NetworkProblem(g, std::move(fs), std::move(cs));
}

inline NetworkProblem with_elementwise(const NetworkProblem& p, Psi psi) {
  std::vector<EdgeCoupling> cs;
  for (const auto& e : p.graph().edges()) cs.emplace_back(e, Elementwise{psi});
  return NetworkProblem(p.graph(), p.objectives(), std::move(cs));
}

/// Random connected graph (N in [3, max_nodes]), random SPD quadratics with
/// eigenvalues in [0.5, 2] and random quadratic link potentials.
inline NetworkProblem random_quadratic_problem(Rng& rng, int max_nodes, int max_dim,
                                               double link_lo = 0.5, double link_hi = 2.0) {
  const int N = rng.uniform_int(3, max_nodes);
  const int n = rng.uniform_int(1, max_dim);
  const double p = rng.uniform(0.3, 0.8);
  Graph g = Graph::random_connected(N, p, static_cast<std::uint64_t>(rng.uniform_int(0, 1 << 30)));
  std::vector<Objective> fs;
  for (int i = 0; i < N; ++i) {
    fs.push_back(Objective::weighted_quadratic(rng.spd(n, 0.5, 2.0), rng.uniform_vector(n, -5, 5)));
  }
  std::vector<EdgeCoupling> cs;
  for (const auto& e : g.edges()) {
    cs.emplace_back(e, GradientDiff{LinkPotential::quadratic(rng.spd(n, link_lo, link_hi))});
  }
  return NetworkProblem(std::move(g), std::move(fs), std::move(cs));
}

}  // namespace zgs::testing

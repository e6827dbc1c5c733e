#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "zgs/dynamics.hpp"
#include "zgs/errors.hpp"
#include "zgs/oracle.hpp"
#include "zgs/random.hpp"

namespace zgs {
namespace {

using testing::scalar_quadratics;
using testing::vec;

NetworkProblem path3() { return scalar_quadratics(Graph::path(3), {1, 2, 6}); }

/// Random problems mixing objective kinds and coupling kinds.
std::vector<NetworkProblem> problem_zoo() {
  Rng rng(21);
  std::vector<NetworkProblem> zoo;
  for (int k = 0; k < 4; ++k) zoo.push_back(testing::random_quadratic_problem(rng, 7, 3));
  for (int k = 0; k < 3; ++k) {
    const int n = rng.uniform_int(1, 3);
    const Graph g = Graph::random_connected(rng.uniform_int(3, 6), 0.5, 50 + k);
    std::vector<Objective> fs;
    for (int i = 0; i < g.size(); ++i) {
      std::vector<LabeledSample> samples;
      for (int s = 0; s < 4; ++s) samples.push_back({rng.normal_vector(n), s % 2 ? 1 : -1});
      fs.emplace_back(n, RegularizedLogistic{rng.uniform(0.5, 1.5), samples});
    }
    std::vector<EdgeCoupling> cs;
    for (const auto& e : g.edges()) {
      if (k == 0) cs.emplace_back(e, Elementwise{Psi::kTanh});
      else if (k == 1) cs.emplace_back(e, Elementwise{Psi::kRational});
      else cs.emplace_back(e, GradientDiff{LinkPotential::sum_of_endpoints(fs[e.lo], fs[e.hi])});
    }
    zoo.emplace_back(g, fs, cs);
  }
  return zoo;
}

TEST(Dynamics, VectorFieldExamples) {
  const NetworkProblem p = path3();
  EXPECT_EQ(vector_field(p, vec({1, 2, 6})), vec({1, 3, -4}));
  const NetworkProblem heavy = scalar_quadratics(Graph::path(3), {1, 2, 6}, {4, 4, 4});
  EXPECT_EQ(vector_field(heavy, vec({1, 2, 6})), vec({0.25, 0.75, -1}));
  EXPECT_EQ(vector_field(p, vec({4, 4, 4})), Eigen::VectorXd::Zero(3));
  EXPECT_THROW(vector_field(p, vec({1, 2})), DimensionMismatch);
}

TEST(Dynamics, LyapunovExamples) {
  const NetworkProblem p = path3();
  EXPECT_DOUBLE_EQ(lyapunov(p, vec({1, 2, 6}), vec({3})), 7.0);
  EXPECT_EQ(lyapunov(p, vec({3, 3, 3}), vec({3})), 0.0);
  EXPECT_DOUBLE_EQ(lyapunov_rate(p, vec({1, 2, 6})), -17.0);
  EXPECT_EQ(lyapunov_rate(p, vec({2, 2, 2})), 0.0);
}

TEST(Dynamics, GradientSumAndDisagreementExamples) {
  const NetworkProblem p = path3();
  EXPECT_DOUBLE_EQ(gradient_sum(p, vec({0, 0, 0}))(0), -9.0);
  EXPECT_DOUBLE_EQ(gradient_sum(p, vec({1, 2, 6}))(0), 0.0);
  EXPECT_DOUBLE_EQ(gradient_sum(p, vec({3, 3, 3}))(0), 0.0);
  EXPECT_DOUBLE_EQ(disagreement(vec({0, 0, 3}), 1), 6.0);
  EXPECT_DOUBLE_EQ(disagreement(vec({-1, 1}), 1), 2.0);
  EXPECT_EQ(disagreement(vec({2.5, 2.5, 2.5}), 1), 0.0);
  EXPECT_DOUBLE_EQ(disagreement(vec({0, 0, 2, 2}), 2), 4.0);
}

TEST(Dynamics, ValidateInitialization) {
  const NetworkProblem p = path3();
  const CheckedState d = default_initialization(p);
  EXPECT_EQ(d.state(), vec({1, 2, 6}));
  EXPECT_NO_THROW(validate_initialization(p, vec({2, 1, 6})));
  EXPECT_THROW(validate_initialization(p, vec({0, 0, 0})), ManifoldViolation);
  EXPECT_THROW(validate_initialization(p, vec({1, 2, 6}), 0.0), InvalidArgument);
  EXPECT_THROW(validate_initialization(p, vec({1, 2})), DimensionMismatch);
  // Relative tolerance: a tiny residual next to large gradients passes.
  EXPECT_NO_THROW(validate_initialization(p, vec({1e6 + 1, 2 - 1e6, 6 + 1e-3})));
  EXPECT_THROW(validate_initialization(p, vec({1, 2, 6.001})), ManifoldViolation);
}

TEST(Dynamics, ProblemConstructionErrors) {
  const Graph g = Graph::path(3);
  std::vector<Objective> fs(3, Objective::weighted_quadratic(Eigen::MatrixXd::Identity(1, 1), vec({0})));
  const auto coupling = [](Edge e) {
    return EdgeCoupling(e, GradientDiff{LinkPotential::quadratic(Eigen::MatrixXd::Identity(1, 1))});
  };
  EXPECT_THROW(NetworkProblem(g, fs, {coupling({0, 1})}), InvalidArgument);
  EXPECT_THROW(NetworkProblem(g, fs, {coupling({0, 1}), coupling({0, 2})}), InvalidArgument);
  EXPECT_THROW(NetworkProblem(g, fs, {coupling({0, 1}), coupling({0, 1})}), InvalidArgument);
  EXPECT_THROW(NetworkProblem(g, {fs[0], fs[1]}, {coupling({0, 1}), coupling({1, 2})}),
               InvalidArgument);
  std::vector<Objective> mixed = fs;
  mixed[2] = Objective::weighted_quadratic(Eigen::MatrixXd::Identity(2, 2), vec({0, 0}));
  EXPECT_THROW(NetworkProblem(g, mixed, {coupling({0, 1}), coupling({1, 2})}), DimensionMismatch);
  // Order of the coupling list does not matter.
  const NetworkProblem p(g, fs, {coupling({1, 2}), coupling({0, 1})});
  EXPECT_EQ(p.couplings()[0].edge(), (Edge{0, 1}));
}

TEST(Dynamics, ConservationIdentity) {
  Rng rng(31);
  for (const auto& p : problem_zoo()) {
    for (int k = 0; k < 100; ++k) {
      const StackedState x = rng.uniform_vector(p.state_size(), -3, 3);
      const StackedState v = vector_field(p, x);
      Eigen::VectorXd total = Eigen::VectorXd::Zero(p.dim());
      double scale = 1.0;
      for (int i = 0; i < p.nodes(); ++i) {
        const Eigen::VectorXd hv = p.objective(i).hessian(p.node(x, i)) * p.node(v, i);
        total += hv;
        scale = std::max(scale, hv.norm());
      }
      EXPECT_LE(total.norm(), 1e-10 * scale);
    }
  }
}

TEST(Dynamics, LyapunovRateMatchesDirectionalDerivative) {
  Rng rng(37);
  for (const auto& p : problem_zoo()) {
    const Eigen::VectorXd x_star = solve_centralized(p).x_star;
    for (int k = 0; k < 20; ++k) {
      const StackedState x = rng.uniform_vector(p.state_size(), -2, 2);
      const StackedState v = vector_field(p, x);
      const double h = 1e-6;
      const double fd =
          (lyapunov(p, x + h * v, x_star) - lyapunov(p, x - h * v, x_star)) / (2 * h);
      const double rate = lyapunov_rate(p, x);
      EXPECT_NEAR(fd, rate, 1e-6 * std::max(1.0, std::abs(rate)));
      EXPECT_LT(rate, 0.0);
    }
  }
}

TEST(Dynamics, LyapunovLowerBoundAndPositivity) {
  Rng rng(41);
  for (const auto& p : problem_zoo()) {
    const Eigen::VectorXd x_star = solve_centralized(p).x_star;
    double theta = 1e300;
    for (const auto& f : p.objectives()) theta = std::min(theta, f.convexity());
    const StackedState stacked_star = stack_repeated(x_star, p.nodes());
    EXPECT_LE(lyapunov(p, stacked_star, x_star), 1e-20);
    for (int k = 0; k < 50; ++k) {
      const StackedState x = rng.uniform_vector(p.state_size(), -3, 3);
      const double V = lyapunov(p, x, x_star);
      EXPECT_GT(V, 0.0);
      EXPECT_GE(V, 0.5 * theta * (x - stacked_star).squaredNorm() * (1 - 1e-12));
    }
  }
}

TEST(Dynamics, EquilibriaAreExactlyTheAgreementStates) {
  Rng rng(43);
  for (const auto& p : problem_zoo()) {
    for (int k = 0; k < 30; ++k) {
      const StackedState agree = stack_repeated(rng.uniform_vector(p.dim(), -3, 3), p.nodes());
      EXPECT_EQ(disagreement(agree, p.dim()), 0.0);
      EXPECT_EQ(vector_field(p, agree).norm(), 0.0);
      EXPECT_EQ(lyapunov_rate(p, agree), 0.0);

      const StackedState x = rng.uniform_vector(p.state_size(), -3, 3);
      EXPECT_GT(disagreement(x, p.dim()), 0.0);
      EXPECT_GT(vector_field(p, x).norm(), 0.0);
    }
  }
}

TEST(Dynamics, DefaultInitializationLiesOnManifold) {
  for (const auto& p : problem_zoo()) {
    const CheckedState x0 = default_initialization(p);
    double scale = 1.0;
    for (int i = 0; i < p.nodes(); ++i) {
      scale = std::max(scale, p.objective(i).gradient(Eigen::VectorXd::Zero(p.dim())).norm());
    }
    EXPECT_LE(gradient_sum(p, x0.state()).norm(), 1e-10 * scale);
  }
}

}  // namespace
}  // namespace zgs

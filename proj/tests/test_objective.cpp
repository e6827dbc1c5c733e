#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "zgs/errors.hpp"
#include "zgs/linalg.hpp"
#include "zgs/objective.hpp"
#include "zgs/random.hpp"

namespace zgs {
namespace {

using testing::vec;

Objective unit_scalar(double center) {
  return Objective::weighted_quadratic(Eigen::MatrixXd::Identity(1, 1), vec({center}));
}

Objective logistic(double theta, std::vector<LabeledSample> samples) {
  const int dim = static_cast<int>(samples.at(0).a.size());
  return Objective(dim, RegularizedLogistic{theta, std::move(samples)});
}

/// A mixed bag covering both kinds in several dimensions.
std::vector<Objective> function_zoo() {
  Rng rng(11);
  std::vector<Objective> zoo;
  zoo.push_back(unit_scalar(1.0));
  zoo.push_back(Objective(Quadratic{2.0 * Eigen::MatrixXd::Identity(2, 2), vec({-2, -4}), 0.0}));
  for (int n = 1; n <= 4; ++n) {
    zoo.push_back(Objective(Quadratic{rng.spd(n, 0.3, 5.0), rng.normal_vector(n), rng.normal()}));
    std::vector<LabeledSample> samples;
    for (int k = 0; k < 6; ++k) {
      samples.push_back({rng.normal_vector(n), rng.uniform() < 0.5 ? -1 : 1});
    }
    zoo.push_back(Objective(n, RegularizedLogistic{rng.uniform(0.2, 2.0), samples}));
  }
  return zoo;
}

TEST(Objective, EvalExamples) {
  Objective half(Quadratic{Eigen::MatrixXd::Identity(1, 1), vec({-1}), 0.5});
  EXPECT_DOUBLE_EQ(half.value(vec({3})), 2.0);
  Objective two(Quadratic{2.0 * Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), 0.0});
  EXPECT_DOUBLE_EQ(two.value(vec({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(logistic(1.0, {{vec({0}), 1}}).value(vec({0})), std::log(2.0));
}

TEST(Objective, GradientAndHessianExamples) {
  Objective half(Quadratic{Eigen::MatrixXd::Identity(1, 1), vec({-1}), 0.5});
  EXPECT_DOUBLE_EQ(half.gradient(vec({3}))(0), 2.0);
  EXPECT_DOUBLE_EQ(half.hessian(vec({-7}))(0, 0), 1.0);

  const Objective l = logistic(1.0, {{vec({1}), 1}});
  EXPECT_NEAR(l.gradient(vec({0}))(0), -0.5, 1e-15);
  EXPECT_NEAR(l.hessian(vec({0}))(0, 0), 1.25, 1e-15);
  const auto fd = testing::fd_gradient([&](const Eigen::VectorXd& x) { return l.value(x); },
                                       vec({0}));
  EXPECT_NEAR(fd(0), -0.5, 1e-8);

  Rng rng(2);
  const Eigen::MatrixXd A = rng.spd(3, 1, 3);
  Objective q(Quadratic{A, rng.normal_vector(3), 0.0});
  for (int k = 0; k < 5; ++k) EXPECT_EQ(q.hessian(rng.normal_vector(3)), A);
}

TEST(Objective, RejectsWrongDimensions) {
  const Objective q = unit_scalar(1.0);
  EXPECT_THROW(q.value(vec({1, 2})), DimensionMismatch);
  EXPECT_THROW(q.gradient(vec({1, 2})), DimensionMismatch);
  EXPECT_THROW(q.hessian(Eigen::VectorXd(0)), DimensionMismatch);
  EXPECT_THROW(logistic(1.0, {{vec({1}), 1}}).value(vec({1, 1})), DimensionMismatch);
}

TEST(Objective, RejectsInvalidDefinitions) {
  EXPECT_THROW(Objective(Quadratic{-Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), 0}),
               InvalidArgument);
  Eigen::MatrixXd skew(2, 2);
  skew << 1, 1, 0, 1;
  EXPECT_THROW(Objective(Quadratic{skew, Eigen::VectorXd::Zero(2), 0}), InvalidArgument);
  EXPECT_THROW(Objective(Quadratic{Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(3), 0}),
               DimensionMismatch);
  EXPECT_THROW(logistic(0.0, {{vec({1}), 1}}), InvalidArgument);
  EXPECT_THROW(logistic(1.0, {{vec({1}), 2}}), InvalidArgument);
  EXPECT_THROW(Objective(2, RegularizedLogistic{1.0, {{vec({1}), 1}}}), DimensionMismatch);
}

TEST(Objective, TinyAsymmetryIsSymmetrized) {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1 + 1e-12, 1, 2;
  const Objective q(Quadratic{a, Eigen::VectorXd::Zero(2), 0});
  const Eigen::MatrixXd h = q.hessian(Eigen::VectorXd::Zero(2));
  EXPECT_EQ(h, h.transpose());
}

TEST(Objective, LocalMinimizerExamples) {
  EXPECT_NEAR(unit_scalar(5.0).local_minimizer()(0), 5.0, 1e-14);
  const Objective q(Quadratic{2.0 * Eigen::MatrixXd::Identity(2, 2), vec({-2, -4}), 0.0});
  EXPECT_NEAR((q.local_minimizer() - vec({1, 2})).norm(), 0.0, 1e-14);

  // Stationarity x + sigma(x) - 1 = 0 solved by bisection, independently.
  const double root = testing::bisect(
      [](double x) { return x + 1.0 / (1.0 + std::exp(-x)) - 1.0; }, -1.0, 1.0);
  EXPECT_NEAR(root, 0.401058137541547, 1e-12);
  const Objective l = logistic(1.0, {{vec({1}), 1}});
  EXPECT_NEAR(l.local_minimizer()(0), root, 1e-10);
}

TEST(Objective, MinimizerStationarityAcrossZoo) {
  for (const auto& f : function_zoo()) {
    const double scale = std::max(1.0, f.gradient(Eigen::VectorXd::Zero(f.dim())).norm());
    EXPECT_LE(f.gradient(f.local_minimizer()).norm(), 1e-12 * scale);
    Rng rng(5);
    const Eigen::VectorXd again = f.minimize_from(rng.uniform_vector(f.dim(), -20, 20));
    EXPECT_LT((again - f.local_minimizer()).norm(), 1e-9);
  }
}

TEST(Objective, CurvatureUpperBoundExamples) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d.diagonal() << 1, 4;
  const Objective q(Quadratic{d, Eigen::VectorXd::Zero(2), 0});
  EXPECT_NEAR(q.curvature_upper_bound(vec({0, 0}), 0.0), 4.0, 1e-12);
  EXPECT_NEAR(q.curvature_upper_bound(vec({9, -3}), 100.0), 4.0, 1e-12);
  EXPECT_NEAR(unit_scalar(1.0).curvature_upper_bound(vec({0}), 2.0), 1.0, 1e-15);
  EXPECT_THROW(q.curvature_upper_bound(vec({0, 0}), -1.0), InvalidArgument);

  const Objective l = logistic(2.0, {{vec({1}), 1}, {vec({2}), -1}});
  const double bound = l.curvature_upper_bound(vec({0}), 1.0);
  EXPECT_DOUBLE_EQ(bound, 3.25);
  // Dense grid of Hessian values never exceeds the bound, and the supremum
  // (at the origin, where both sigma' are 1/4) attains it.
  double sup = 0.0;
  for (double x = -20.0; x <= 20.0; x += 0.01) {
    sup = std::max(sup, l.hessian(vec({x}))(0, 0));
  }
  EXPECT_LE(sup, bound + 1e-12);
  EXPECT_NEAR(sup, bound, 1e-9);
}

TEST(Objective, MultiDimLogisticBoundDominatesSampledHessians) {
  Rng rng(8);
  for (const auto& f : function_zoo()) {
    const double bound = f.curvature_upper_bound(Eigen::VectorXd::Zero(f.dim()), 3.0);
    for (int k = 0; k < 200; ++k) {
      const Eigen::VectorXd x = rng.uniform_vector(f.dim(), -3, 3);
      const Eigen::VectorXd ev = testing::reference_eigenvalues(f.hessian(x));
      EXPECT_LE(ev(ev.size() - 1), bound + 1e-10);
      EXPECT_GE(ev(0), f.convexity() - 1e-10);
    }
  }
}

TEST(Objective, FiniteDifferenceConsistency) {
  Rng rng(13);
  for (const auto& f : function_zoo()) {
    const auto value = [&](const Eigen::VectorXd& x) { return f.value(x); };
    const auto grad = [&](const Eigen::VectorXd& x) { return f.gradient(x); };
    for (int k = 0; k < 50; ++k) {
      const Eigen::VectorXd x = rng.uniform_vector(f.dim(), -3, 3);
      const Eigen::VectorXd g = f.gradient(x);
      EXPECT_LE((testing::fd_gradient(value, x) - g).norm(), 1e-5 * std::max(1.0, g.norm()));
      const Eigen::MatrixXd h = f.hessian(x);
      EXPECT_LE((testing::fd_jacobian(grad, x) - h).norm(), 1e-4 * std::max(1.0, h.norm()));
      EXPECT_EQ(h, h.transpose());
    }
  }
}

TEST(Objective, StrongConvexityAndUpperCurvatureSampling) {
  Rng rng(17);
  for (const auto& f : function_zoo()) {
    const Eigen::VectorXd center = Eigen::VectorXd::Zero(f.dim());
    const double radius = 4.0;
    const double Theta = f.curvature_upper_bound(center, radius);
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd x = rng.normal_vector(f.dim()), y = rng.normal_vector(f.dim());
      x *= radius * std::min(1.0, 1.0 / x.norm()) * 0.99;
      y *= radius * std::min(1.0, 1.0 / y.norm()) * 0.99;
      const double inner = (f.gradient(y) - f.gradient(x)).dot(y - x);
      const double d2 = (y - x).squaredNorm();
      EXPECT_GE(inner, f.convexity() * d2 - 1e-9);
      EXPECT_LE(inner, Theta * d2 + 1e-9);
    }
  }
}

TEST(Objective, BregmanMatchesLiteralFormula) {
  Rng rng(19);
  for (const auto& f : function_zoo()) {
    for (int k = 0; k < 50; ++k) {
      const Eigen::VectorXd x = rng.uniform_vector(f.dim(), -3, 3);
      const Eigen::VectorXd y = rng.uniform_vector(f.dim(), -3, 3);
      const double literal = f.value(y) - f.value(x) - f.gradient(x).dot(y - x);
      EXPECT_NEAR(f.bregman(y, x), literal, 1e-10 * (1.0 + std::abs(f.value(y))));
      EXPECT_GE(f.bregman(y, x), 0.5 * f.convexity() * (y - x).squaredNorm() - 1e-12);
    }
    const Eigen::VectorXd x = rng.uniform_vector(f.dim(), -1, 1);
    EXPECT_EQ(f.bregman(x, x), 0.0);
  }
}

TEST(Objective, BregmanStaysAccurateForTinyGaps) {
  const Objective l = logistic(0.5, {{vec({1.5}), 1}, {vec({-0.7}), -1}});
  const Eigen::VectorXd x = vec({0.3});
  for (double d : {1e-3, 1e-5, 1e-7}) {
    const double b = l.bregman(x + vec({d}), x);
    const double second_order = 0.5 * l.hessian(x)(0, 0) * d * d;
    EXPECT_NEAR(b / second_order, 1.0, 10 * d);
  }
}

}  // namespace
}  // namespace zgs

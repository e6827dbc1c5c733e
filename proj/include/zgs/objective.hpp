#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace zgs {

/// f(x) = 1/2 x^T A x + b^T x + c with A symmetric positive definite.
struct Quadratic {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double c = 0.0;
};

struct LabeledSample {
  Eigen::VectorXd a;
  int label = 1;  // +1 or -1
};

/// f(x) = theta/2 ||x||^2 + sum_k log(1 + exp(-label_k a_k^T x)).
struct RegularizedLogistic {
  double theta = 1.0;
  std::vector<LabeledSample> samples;
};

/// A strongly convex, twice continuously differentiable local objective.
class Objective {
 public:
  /// Validates symmetry and positive definiteness of A (throws InvalidArgument).
  explicit Objective(Quadratic q);
  /// Throws InvalidArgument when theta <= 0, a label is not +-1, or a sample
  /// has the wrong dimension.
  Objective(int dim, RegularizedLogistic l);

  /// 1/2 (x - center)^T W (x - center).
  static Objective weighted_quadratic(const Eigen::MatrixXd& W, const Eigen::VectorXd& center);

  int dim() const { return dim_; }
  bool is_quadratic() const { return std::holds_alternative<Quadratic>(kind_); }
  const Quadratic* as_quadratic() const { return std::get_if<Quadratic>(&kind_); }
  const RegularizedLogistic* as_logistic() const {
    return std::get_if<RegularizedLogistic>(&kind_);
  }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  /// f(y) - f(x) - grad f(x)^T (y - x), evaluated without the cancellation
  /// of the literal formula so that it stays accurate as y -> x.
  double bregman(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const;

  /// Global lower curvature bound theta_i: hess f(x) >= theta_i I everywhere.
  double convexity() const { return theta_; }

  /// Theta_i with hess f(x) <= Theta_i I on the ball B(center, radius).
  /// Exact for quadratics, a global analytic bound for logistic objectives.
  double curvature_upper_bound(const Eigen::VectorXd& center, double radius) const;

  /// Unique minimizer via damped Newton from the origin (cached).
  const Eigen::VectorXd& local_minimizer() const { return minimizer_; }
  /// Damped Newton from an arbitrary start.
  Eigen::VectorXd minimize_from(const Eigen::VectorXd& start) const;

 private:
  void check_dim(const Eigen::VectorXd& x) const;
  void finish_construction();

  int dim_;
  std::variant<Quadratic, RegularizedLogistic> kind_;
  double theta_ = 0.0;
  double upper_ = 0.0;  // global upper curvature bound
  Eigen::VectorXd minimizer_;
};

}  // namespace zgs

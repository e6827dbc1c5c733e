#include "zgs/objective.hpp"

#include <array>
#include <cmath>
#include <string>

#include "zgs/errors.hpp"
#include "zgs/linalg.hpp"
#include "zgs/newton.hpp"

namespace zgs {

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sigmoid_slope(double t) { return sigmoid(t) * sigmoid(-t); }

// 8-point Gauss-Legendre rule mapped to [0, 1].
constexpr std::array<double, 4> kGlNodes = {0.1834346424956498, 0.5255324099163290,
                                            0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

// softplus(v) - softplus(u) - softplus'(u) (v - u)
double softplus_bregman(double v, double u) {
  const double d = v - u;
  if (std::abs(d) >= 1.0) return softplus(v) - softplus(u) - sigmoid(u) * d;
  // d^2 * int_0^1 (1 - s) softplus''(u + s d) ds
  double acc = 0.0;
  for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
    for (double sign : {-1.0, 1.0}) {
      const double s = 0.5 * (1.0 + sign * kGlNodes[k]);
      acc += 0.5 * kGlWeights[k] * (1.0 - s) * sigmoid_slope(u + s * d);
    }
  }
  return d * d * acc;
}

}  // namespace

Objective::Objective(Quadratic q) : dim_(static_cast<int>(q.A.rows())) {
  if (dim_ < 1 || q.A.cols() != q.A.rows()) {
    throw DimensionMismatch("quadratic: A must be square and non-empty");
  }
  if (q.b.size() != dim_) throw DimensionMismatch("quadratic: b has the wrong length");
  double asym = 0.0;
  q.A = symmetrize(q.A, &asym);
  if (asym > 1e-9 * std::max(1.0, q.A.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("quadratic: A is not symmetric");
  }
  const auto eig = jacobi_eigen(q.A);
  theta_ = eig.values(0);
  upper_ = eig.values(dim_ - 1);
  if (!(theta_ > 0.0)) throw InvalidArgument("quadratic: A is not positive definite");
  kind_ = std::move(q);
  finish_construction();
}

Objective::Objective(int dim, RegularizedLogistic l) : dim_(dim) {
  if (dim < 1) throw DimensionMismatch("logistic: dimension must be >= 1");
  if (!(l.theta > 0.0)) throw InvalidArgument("logistic: theta must be positive");
  upper_ = l.theta;
  for (const auto& s : l.samples) {
    if (s.a.size() != dim) throw DimensionMismatch("logistic: sample has the wrong length");
    if (s.label != 1 && s.label != -1) throw InvalidArgument("logistic: label must be +1 or -1");
    upper_ += 0.25 * s.a.squaredNorm();
  }
  theta_ = l.theta;
  kind_ = std::move(l);
  finish_construction();
}

Objective Objective::weighted_quadratic(const Eigen::MatrixXd& W, const Eigen::VectorXd& center) {
  if (W.rows() != center.size()) throw DimensionMismatch("weighted quadratic: size mismatch");
  return Objective(Quadratic{W, -W * center, 0.5 * center.dot(W * center)});
}

void Objective::finish_construction() {
  minimizer_ = minimize_from(Eigen::VectorXd::Zero(dim_));
}

void Objective::check_dim(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) {
    throw DimensionMismatch("objective: expected dimension " + std::to_string(dim_) + ", got " +
                            std::to_string(x.size()));
  }
}

double Objective::value(const Eigen::VectorXd& x) const {
  check_dim(x);
  if (const auto* q = as_quadratic()) return 0.5 * x.dot(q->A * x) + q->b.dot(x) + q->c;
  const auto& l = *as_logistic();
  double v = 0.5 * l.theta * x.squaredNorm();
  for (const auto& s : l.samples) v += softplus(-s.label * s.a.dot(x));
  return v;
}

Eigen::VectorXd Objective::gradient(const Eigen::VectorXd& x) const {
  check_dim(x);
  if (const auto* q = as_quadratic()) return q->A * x + q->b;
  const auto& l = *as_logistic();
  Eigen::VectorXd g = l.theta * x;
  for (const auto& s : l.samples) g -= (s.label * sigmoid(-s.label * s.a.dot(x))) * s.a;
  return g;
}

Eigen::MatrixXd Objective::hessian(const Eigen::VectorXd& x) const {
  check_dim(x);
  if (const auto* q = as_quadratic()) return q->A;
  const auto& l = *as_logistic();
  Eigen::MatrixXd h = l.theta * Eigen::MatrixXd::Identity(dim_, dim_);
  for (const auto& s : l.samples) {
    const double w = sigmoid_slope(s.a.dot(x));
    for (int j = 0; j < dim_; ++j) {
      for (int i = 0; i <= j; ++i) h(i, j) += w * s.a(i) * s.a(j);
    }
  }
  h.triangularView<Eigen::StrictlyLower>() = h.transpose();
  return h;
}

double Objective::bregman(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  check_dim(y);
  check_dim(x);
  const Eigen::VectorXd d = y - x;
  if (const auto* q = as_quadratic()) return 0.5 * d.dot(q->A * d);
  const auto& l = *as_logistic();
  double v = 0.5 * l.theta * d.squaredNorm();
  for (const auto& s : l.samples) {
    v += softplus_bregman(-s.label * s.a.dot(y), -s.label * s.a.dot(x));
  }
  return v;
}

double Objective::curvature_upper_bound(const Eigen::VectorXd& center, double radius) const {
  check_dim(center);
  if (!(radius >= 0.0)) throw InvalidArgument("curvature_upper_bound: radius must be >= 0");
  return upper_;
}

Eigen::VectorXd Objective::minimize_from(const Eigen::VectorXd& start) const {
  check_dim(start);
  return damped_newton(*this, start).x;
}

}  // namespace zgs

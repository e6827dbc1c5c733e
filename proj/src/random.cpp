#include "zgs/random.hpp"

#include <cmath>
#include <numbers>

namespace zgs {

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Eigen::VectorXd Rng::uniform_vector(int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
  return v;
}

Eigen::VectorXd Rng::normal_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal();
  return v;
}

Eigen::MatrixXd Rng::orthogonal(int n) {
  Eigen::MatrixXd q(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd v = normal_vector(n);
    // Modified Gram-Schmidt, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
    }
    q.col(k) = v.normalized();
  }
  return q;
}

Eigen::MatrixXd Rng::spd(int n, double lo, double hi) {
  const Eigen::MatrixXd q = orthogonal(n);
  const Eigen::VectorXd d = uniform_vector(n, lo, hi);
  Eigen::MatrixXd a = q * d.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

}  // namespace zgs

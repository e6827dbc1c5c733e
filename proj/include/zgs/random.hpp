#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace zgs {

/// Seed-deterministic generator. Distributions are implemented here rather
/// than with <random>'s distribution classes, whose output is
/// implementation-defined, so a seed produces the same numbers everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  double normal();

  Eigen::VectorXd uniform_vector(int n, double lo, double hi);
  Eigen::VectorXd normal_vector(int n);

  /// Haar-ish random orthogonal matrix (Gram-Schmidt on a Gaussian matrix).
  Eigen::MatrixXd orthogonal(int n);

  /// Symmetric positive definite matrix with eigenvalues uniform in [lo, hi].
  Eigen::MatrixXd spd(int n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace zgs

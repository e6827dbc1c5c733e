#include "zgs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "zgs/errors.hpp"

namespace zgs {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
  }
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& input, const JacobiOptions& opts) {
  if (input.rows() != input.cols()) {
    throw DimensionMismatch("jacobi_eigen: matrix is not square");
  }
  const auto n = input.rows();
  Eigen::MatrixXd a = input.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.norm();
  SymmetricEigen out;
  int sweep = 0;
  for (; sweep <= opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= opts.tolerance * scale) break;
    if (sweep == opts.max_sweeps) {
      throw EigenNoConvergence("jacobi_eigen: no convergence after " +
                               std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Symmetric 2x2 Schur decomposition: zero a(p, q).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& a) { return jacobi_eigen(a).values(0); }

double max_eigenvalue(const Eigen::MatrixXd& a) {
  const auto e = jacobi_eigen(a);
  return e.values(e.values.size() - 1);
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a, double* asymmetry) {
  if (a.rows() != a.cols()) throw DimensionMismatch("symmetrize: matrix is not square");
  if (asymmetry != nullptr) *asymmetry = (a - a.transpose()).cwiseAbs().maxCoeff();
  return 0.5 * (a + a.transpose());
}

Eigen::MatrixXd ones_complement_basis(int n) {
  if (n < 2) throw InvalidArgument("ones_complement_basis: n must be >= 2");
  // H = I - 2 w w^T / (w^T w), w = e1 - u, maps e1 <-> u = 1/sqrt(n).
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, -1.0 / std::sqrt(static_cast<double>(n)));
  w(0) += 1.0;
  const Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / w.squaredNorm()) * (w * w.transpose());
  return h.rightCols(n - 1);
}

}  // namespace zgs

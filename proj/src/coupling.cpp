#include "zgs/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zgs/errors.hpp"
#include "zgs/linalg.hpp"
#include "zgs/random.hpp"

namespace zgs {

LinkPotential LinkPotential::quadratic(Eigen::MatrixXd A) {
  if (A.rows() < 1 || A.rows() != A.cols()) {
    throw DimensionMismatch("link potential: A must be square and non-empty");
  }
  double asym = 0.0;
  A = symmetrize(A, &asym);
  if (asym > 1e-9 * std::max(1.0, A.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("link potential: A is not symmetric");
  }
  if (!(min_eigenvalue(A) > 0.0)) {
    throw InvalidArgument("link potential: A is not positive definite");
  }
  return LinkPotential(QuadraticForm{std::move(A)});
}

LinkPotential LinkPotential::sum_of_endpoints(Objective fi, Objective fj) {
  if (fi.dim() != fj.dim()) throw DimensionMismatch("link potential: endpoint dimensions differ");
  return LinkPotential(SumOfEndpoints{std::move(fi), std::move(fj)});
}

int LinkPotential::dim() const {
  if (const auto* q = as_quadratic()) return static_cast<int>(q->A.rows());
  return as_sum()->fi.dim();
}

double LinkPotential::value(const Eigen::VectorXd& y) const {
  if (const auto* q = as_quadratic()) return 0.5 * y.dot(q->A * y);
  const auto& s = *as_sum();
  return s.fi.value(y) + s.fj.value(y);
}

Eigen::VectorXd LinkPotential::gradient(const Eigen::VectorXd& y) const {
  if (const auto* q = as_quadratic()) return q->A * y;
  const auto& s = *as_sum();
  return s.fi.gradient(y) + s.fj.gradient(y);
}

Eigen::MatrixXd LinkPotential::hessian(const Eigen::VectorXd& y) const {
  if (const auto* q = as_quadratic()) return q->A;
  const auto& s = *as_sum();
  return s.fi.hessian(y) + s.fj.hessian(y);
}

EdgeCoupling::EdgeCoupling(Edge edge, std::variant<GradientDiff, Elementwise> kind)
    : edge_{std::min(edge.lo, edge.hi), std::max(edge.lo, edge.hi)}, kind_(std::move(kind)) {
  if (edge_.lo == edge_.hi) throw InvalidArgument("coupling: edge endpoints must differ");
}

const LinkPotential* EdgeCoupling::potential() const {
  if (const auto* g = std::get_if<GradientDiff>(&kind_)) return &g->potential;
  return nullptr;
}

Eigen::VectorXd EdgeCoupling::forward(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const {
  if (y.size() != z.size()) throw DimensionMismatch("coupling: y and z differ in length");
  if (const auto* g = std::get_if<GradientDiff>(&kind_)) {
    if (y.size() != g->potential.dim()) throw DimensionMismatch("coupling: wrong state length");
    return g->potential.gradient(z) - g->potential.gradient(y);
  }
  const Psi psi = std::get<Elementwise>(kind_).psi;
  Eigen::VectorXd out(y.size());
  for (Eigen::Index l = 0; l < y.size(); ++l) {
    const double d = z(l) - y(l);
    out(l) = psi == Psi::kTanh ? std::tanh(d) : d / (1.0 + y(l) * y(l));
  }
  return out;
}

Eigen::VectorXd EdgeCoupling::couple(int from, const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& z) const {
  if (from == edge_.lo) return forward(y, z);
  if (from == edge_.hi) return -forward(z, y);
  throw InvalidArgument("coupling: node " + std::to_string(from) + " is not an endpoint of {" +
                        std::to_string(edge_.lo) + "," + std::to_string(edge_.hi) + "}");
}

CouplingReport verify_coupling_pair(const PairMap& phi_ij, const PairMap& phi_ji, int dim,
                                    int trials, double lo, double hi, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("verify_coupling: trials must be >= 1");
  Rng rng(seed);
  CouplingReport r;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd y = rng.uniform_vector(dim, lo, hi);
    const Eigen::VectorXd z = rng.uniform_vector(dim, lo, hi);
    const Eigen::VectorXd fwd = phi_ij(y, z);
    const double anti = (fwd + phi_ji(z, y)).norm();
    r.max_antisymmetry_error = std::max(r.max_antisymmetry_error, anti);
    if (anti > 1e-12) ++r.antisymmetry_failures;
    const double gap = (y - z).squaredNorm();
    if (gap > 0.0) {
      const double ratio = (y - z).dot(fwd) / gap;
      r.worst_descent_ratio = std::max(r.worst_descent_ratio, ratio);
      if (!(ratio < 0.0)) ++r.descent_failures;
    }
  }
  r.passed = r.antisymmetry_failures == 0 && r.descent_failures == 0;
  return r;
}

CouplingReport verify_coupling(const EdgeCoupling& c, int dim, int trials, double lo, double hi,
                               std::uint64_t seed) {
  const int i = c.edge().lo;
  const int j = c.edge().hi;
  return verify_coupling_pair(
      [&](const Eigen::VectorXd& y, const Eigen::VectorXd& z) { return c.couple(i, y, z); },
      [&](const Eigen::VectorXd& z, const Eigen::VectorXd& y) { return c.couple(j, z, y); }, dim,
      trials, lo, hi, seed);
}

}  // namespace zgs

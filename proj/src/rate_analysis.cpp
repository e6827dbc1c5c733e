#include "zgs/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zgs/errors.hpp"
#include "zgs/linalg.hpp"

namespace zgs {

namespace {

constexpr double kDegenerate = 1e-12;
constexpr double kPencilSlack = 1e-9;

void require_positive(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
  }
}

}  // namespace

Eigen::MatrixXd build_P(const std::vector<double>& Theta_i) {
  const int n = static_cast<int>(Theta_i.size());
  if (n < 2) throw InvalidArgument("build_P: need at least 2 nodes");
  require_positive(Theta_i, "Theta_i");
  double sum = 0.0;
  for (double th : Theta_i) sum += th;
  const double nn = static_cast<double>(n);
  const double shared = sum / (2.0 * nn * nn);
  Eigen::MatrixXd P(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      P(i, j) = i == j ? (0.5 - 1.0 / nn) * Theta_i[i] + shared
                       : -(Theta_i[i] + Theta_i[j]) / (2.0 * nn) + shared;
    }
  }
  return P;
}

Eigen::MatrixXd build_Q(const std::vector<double>& edge_weights, const Graph& g) {
  require_positive(edge_weights, "edge weights");
  return g.weighted_laplacian(edge_weights);
}

Eigen::MatrixXd build_P_tilde(const std::vector<double>& theta_i) {
  require_positive(theta_i, "theta_i");
  Eigen::VectorXd d(static_cast<Eigen::Index>(theta_i.size()));
  for (std::size_t i = 0; i < theta_i.size(); ++i) d(static_cast<Eigen::Index>(i)) = 0.5 * theta_i[i];
  return d.asDiagonal();
}

double rho_lower(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q) {
  if (P.rows() != Q.rows() || P.rows() != P.cols() || Q.rows() != Q.cols()) {
    throw DimensionMismatch("rho_lower: P and Q must be square and of equal size");
  }
  const int n = static_cast<int>(P.rows());
  const Eigen::MatrixXd W = ones_complement_basis(n);
  const Eigen::MatrixXd Pbar = symmetrize(W.transpose() * P * W);
  const Eigen::MatrixXd Qbar = symmetrize(W.transpose() * Q * W);

  const auto pe = jacobi_eigen(Pbar);
  if (!(pe.values(0) > kDegenerate)) {
    throw InvalidArgument("rho_lower: reduced P is not positive definite");
  }
  const Eigen::MatrixXd inv_sqrt =
      pe.vectors * pe.values.cwiseSqrt().cwiseInverse().asDiagonal() * pe.vectors.transpose();
  const double rho = jacobi_eigen(symmetrize(inv_sqrt * Qbar * inv_sqrt)).values(0);

  const double margin = min_eigenvalue(symmetrize(Q - rho * P));
  if (margin < -kPencilSlack * std::max(1.0, Q.cwiseAbs().maxCoeff())) {
    throw EigenNoConvergence("rho_lower: rho P <= Q fails (margin " + std::to_string(margin) +
                             ")");
  }
  return rho;
}

double rho_upper(const std::vector<double>& theta_i, const std::vector<double>& Gamma_edges,
                 const Graph& g) {
  if (static_cast<int>(theta_i.size()) != g.size()) {
    throw DimensionMismatch("rho_upper: one theta per node required");
  }
  const Eigen::MatrixXd Pt = build_P_tilde(theta_i);
  const Eigen::MatrixXd Qt = build_Q(Gamma_edges, g);
  const Eigen::VectorXd s = Pt.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd M = s.asDiagonal() * Qt * s.asDiagonal();
  const auto e = jacobi_eigen(symmetrize(M));
  const double rho_t = e.values(e.values.size() - 1);

  const double margin = min_eigenvalue(symmetrize(rho_t * Pt - Qt));
  if (margin < -kPencilSlack * std::max(1.0, Qt.cwiseAbs().maxCoeff())) {
    throw EigenNoConvergence("rho_upper: rho~ P~ >= Q~ fails (margin " + std::to_string(margin) +
                             ")");
  }
  return rho_t;
}

RateConstants estimate_rate_constants(const NetworkProblem& p, const CheckedState& x0,
                                      const Eigen::VectorXd& x_star) {
  if (!p.gradient_diff_couplings()) {
    throw NotApplicable(
        "rate bounds require gradient-difference couplings on every edge; elementwise couplings "
        "are covered by the asymptotic result only");
  }
  RateConstants c;
  const int n = p.nodes();
  c.theta_i.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c.theta_i[i] = p.objective(i).convexity();
  c.theta = *std::min_element(c.theta_i.begin(), c.theta_i.end());

  const double v0 = lyapunov(p, x0.state(), x_star);
  c.ball_radius = std::sqrt(2.0 * v0 / c.theta);
  c.Theta_i.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    c.Theta_i[i] = p.objective(i).curvature_upper_bound(x_star, c.ball_radius);
  }
  c.Theta = *std::max_element(c.Theta_i.begin(), c.Theta_i.end());

  for (const auto& cp : p.couplings()) {
    const LinkPotential& g = *cp.potential();
    if (const auto* q = g.as_quadratic()) {
      const auto e = jacobi_eigen(q->A);
      c.gamma_edges.push_back(e.values(0));
      c.Gamma_edges.push_back(e.values(e.values.size() - 1));
    } else {
      const auto& s = *g.as_sum();
      c.gamma_edges.push_back(s.fi.convexity() + s.fj.convexity());
      c.Gamma_edges.push_back(s.fi.curvature_upper_bound(x_star, c.ball_radius) +
                              s.fj.curvature_upper_bound(x_star, c.ball_radius));
    }
  }
  c.gamma = *std::min_element(c.gamma_edges.begin(), c.gamma_edges.end());
  c.Gamma = *std::max_element(c.Gamma_edges.begin(), c.Gamma_edges.end());
  return c;
}

RateBounds compute_rate_bounds(const Graph& g, const RateConstants& c) {
  RateBounds b;
  b.spectrum = g.spectrum();
  b.rho = rho_lower(build_P(c.Theta_i), build_Q(c.gamma_edges, g));
  b.rho_tilde = rho_upper(c.theta_i, c.Gamma_edges, g);
  b.rho_corollary = 2.0 * c.gamma * b.spectrum.lambda2 / c.Theta;
  b.rho_tilde_corollary = 2.0 * c.Gamma * b.spectrum.lambdaN / c.theta;
  return b;
}

Envelopes bound_envelopes(double V0, const RateBounds& bounds, const std::vector<double>& times) {
  if (!(V0 >= 0.0)) throw InvalidArgument("bound_envelopes: V0 must be >= 0");
  Envelopes e;
  e.upper.reserve(times.size());
  e.lower.reserve(times.size());
  for (double t : times) {
    e.upper.push_back(V0 * std::exp(-bounds.rho * t));
    e.lower.push_back(V0 * std::exp(-bounds.rho_tilde * t));
  }
  return e;
}

}  // namespace zgs

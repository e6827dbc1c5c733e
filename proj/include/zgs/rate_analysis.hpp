#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zgs/dynamics.hpp"
#include "zgs/graph.hpp"

namespace zgs {

struct RateConstants {
  std::vector<double> theta_i;      // lower curvature per node
  std::vector<double> Theta_i;      // upper curvature per node, valid on the containment ball
  std::vector<double> gamma_edges;  // per edge, indexed like Graph::edges()
  std::vector<double> Gamma_edges;
  double theta = 0.0;
  double Theta = 0.0;
  double gamma = 0.0;
  double Gamma = 0.0;
  double ball_radius = 0.0;  // sqrt(2 V(x0) / theta)
};

struct RateBounds {
  double rho = 0.0;                  // V(t) <= V(0) exp(-rho t)
  double rho_tilde = 0.0;            // V(t) >= V(0) exp(-rho_tilde t)
  double rho_corollary = 0.0;        // 2 gamma lambda2 / Theta
  double rho_tilde_corollary = 0.0;  // 2 Gamma lambdaN / theta
  LaplacianSpectrum spectrum;
};

/// P_ii = (1/2 - 1/N) Theta_i + S / (2N^2), P_ij = -(Theta_i + Theta_j) / (2N) + S / (2N^2),
/// S = sum Theta_l. Satisfies y^T P y = sum_i Theta_i / 2 (y_i - mean(y))^2.
Eigen::MatrixXd build_P(const std::vector<double>& Theta_i);

/// Weighted Laplacian of g with the per-edge weights (Q from gamma, Q~ from Gamma).
Eigen::MatrixXd build_Q(const std::vector<double>& edge_weights, const Graph& g);

/// diag(theta_i / 2).
Eigen::MatrixXd build_P_tilde(const std::vector<double>& theta_i);

/// sup{eps : eps P <= Q}: smallest eigenvalue of Pbar^{-1/2} Qbar Pbar^{-1/2}
/// on the complement of (1,...,1). Verifies rho P <= Q afterwards.
double rho_lower(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q);

/// inf{eps : eps P~ >= Q~}: largest eigenvalue of P~^{-1/2} Q~ P~^{-1/2}.
double rho_upper(const std::vector<double>& theta_i, const std::vector<double>& Gamma_edges,
                 const Graph& g);

/// Curvature constants over the ball B(x*, sqrt(2 V(x0) / theta)), which
/// contains every x_i(t). Throws NotApplicable unless every edge uses a
/// gradient-difference coupling.
RateConstants estimate_rate_constants(const NetworkProblem& p, const CheckedState& x0,
                                      const Eigen::VectorXd& x_star);

RateBounds compute_rate_bounds(const Graph& g, const RateConstants& c);

struct Envelopes {
  std::vector<double> upper;  // V0 exp(-rho t)
  std::vector<double> lower;  // V0 exp(-rho_tilde t)
};

Envelopes bound_envelopes(double V0, const RateBounds& bounds, const std::vector<double>& times);

}  // namespace zgs

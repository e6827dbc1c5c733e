#pragma once

#include <Eigen/Dense>

#include "zgs/dynamics.hpp"

namespace zgs {

struct OracleResult {
  Eigen::VectorXd x_star;
  double grad_norm = 0.0;  // ||grad F(x*)||
  int iterations = 0;
};

/// Centralized ground truth: minimizes F = sum_i f_i with damped Newton.
/// Deliberately ignores the network; used only for verification.
OracleResult solve_centralized(const NetworkProblem& p);
OracleResult solve_centralized(const NetworkProblem& p, const Eigen::VectorXd& start);

/// sum_i f_i(x).
double total_objective(const NetworkProblem& p, const Eigen::VectorXd& x);

struct IntersectionReport {
  double residual_norm = 0.0;     // ||gradient_sum(x*, ..., x*)||
  double disagreement = 0.0;      // of (x*, ..., x*)
  bool grid_scanned = false;      // scalar problems only
  int sign_changes = 0;
  double crossing_lo = 0.0;       // grid cell containing the crossing
  double crossing_hi = 0.0;
  bool passed = false;
};

struct GridOptions {
  double lo = -10.0;
  double hi = 10.0;
  double step = 0.01;
  double residual_tol = 1e-10;
};

/// Checks that (x*, ..., x*) lies on both the agreement set and the
/// zero-gradient-sum manifold; for n = 1 also scans agreement states (c,...,c)
/// and confirms sum_i f_i'(c) changes sign exactly once, next to x*.
IntersectionReport verify_agreement_manifold_intersection(const NetworkProblem& p,
                                                          const Eigen::VectorXd& x_star,
                                                          const GridOptions& grid = {});

}  // namespace zgs

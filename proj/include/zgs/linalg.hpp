#pragma once

#include <Eigen/Dense>

namespace zgs {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

struct JacobiOptions {
  double tolerance = 1e-12;  // on the off-diagonal Frobenius norm, relative to ||A||_F
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Only the upper
/// triangle is read. Throws EigenNoConvergence when max_sweeps is exhausted.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, const JacobiOptions& opts = {});

double min_eigenvalue(const Eigen::MatrixXd& a);
double max_eigenvalue(const Eigen::MatrixXd& a);

/// (A + A^T) / 2 together with the largest absolute asymmetry.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a, double* asymmetry = nullptr);

/// Orthonormal basis (N x N-1) of the complement of span{(1,...,1)}, taken
/// from the Householder reflector that maps e1 to (1,...,1)/sqrt(N).
Eigen::MatrixXd ones_complement_basis(int n);

}  // namespace zgs

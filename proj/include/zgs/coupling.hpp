#pragma once

#include <cstdint>
#include <functional>
#include <variant>

#include <Eigen/Dense>

#include "zgs/graph.hpp"
#include "zgs/objective.hpp"

namespace zgs {

/// Strongly convex potential g_{ij} attached to a link; the coupling is
/// grad g(z) - grad g(y).
class LinkPotential {
 public:
  struct QuadraticForm {
    Eigen::MatrixXd A;  // g(y) = 1/2 y^T A y
  };
  struct SumOfEndpoints {
    Objective fi;
    Objective fj;
  };

  static LinkPotential quadratic(Eigen::MatrixXd A);
  static LinkPotential sum_of_endpoints(Objective fi, Objective fj);

  int dim() const;
  double value(const Eigen::VectorXd& y) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& y) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& y) const;

  const QuadraticForm* as_quadratic() const { return std::get_if<QuadraticForm>(&kind_); }
  const SumOfEndpoints* as_sum() const { return std::get_if<SumOfEndpoints>(&kind_); }

 private:
  explicit LinkPotential(std::variant<QuadraticForm, SumOfEndpoints> k) : kind_(std::move(k)) {}
  std::variant<QuadraticForm, SumOfEndpoints> kind_;
};

enum class Psi {
  kTanh,      // psi(y, z) = tanh(z - y)
  kRational,  // psi(y, z) = (z - y) / (1 + y^2) for the lower-index endpoint
};

struct GradientDiff {
  LinkPotential potential;
};

struct Elementwise {
  Psi psi = Psi::kTanh;
};

/// One coupling per edge. It is stored for the lower-index endpoint; the
/// other endpoint's map is the negation with swapped arguments, so the
/// antisymmetry phi_ij(y,z) = -phi_ji(z,y) holds by construction.
class EdgeCoupling {
 public:
  EdgeCoupling(Edge edge, std::variant<GradientDiff, Elementwise> kind);

  const Edge& edge() const { return edge_; }
  bool is_gradient_diff() const { return std::holds_alternative<GradientDiff>(kind_); }
  const LinkPotential* potential() const;
  const std::variant<GradientDiff, Elementwise>& kind() const { return kind_; }

  /// phi_{from,other}(y, z) with y the state of `from` and z the state of the
  /// other endpoint. Throws InvalidArgument if `from` is not an endpoint.
  Eigen::VectorXd couple(int from, const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;

  /// Map stored for the lower-index endpoint.
  Eigen::VectorXd forward(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;

 private:
  Edge edge_;
  std::variant<GradientDiff, Elementwise> kind_;
};

using PairMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

struct CouplingReport {
  bool passed = true;
  int trials = 0;
  int antisymmetry_failures = 0;
  int descent_failures = 0;
  double max_antisymmetry_error = 0.0;  // max ||phi_ij(y,z) + phi_ji(z,y)||
  double worst_descent_ratio = -1e300;  // max (y-z)^T phi_ij(y,z) / ||y-z||^2, must be < 0
};

/// Samples (y, z) uniformly in [lo, hi]^n and checks antisymmetry (within
/// 1e-12) and strict descent of an arbitrary pair (phi_ij, phi_ji).
CouplingReport verify_coupling_pair(const PairMap& phi_ij, const PairMap& phi_ji, int dim,
                                    int trials, double lo, double hi, std::uint64_t seed);

CouplingReport verify_coupling(const EdgeCoupling& c, int dim, int trials, double lo, double hi,
                               std::uint64_t seed);

}  // namespace zgs

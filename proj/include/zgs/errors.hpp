#pragma once

#include <stdexcept>
#include <string>

namespace zgs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Graph construction failed (self loop, duplicate edge, disconnected, ...).
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class EigenNoConvergence : public Error {
 public:
  using Error::Error;
};

class NewtonFailure : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization of a node Hessian failed. Only happens when a
/// user-supplied objective is not strongly convex.
class HessianSolveFailure : public Error {
 public:
  using Error::Error;
};

/// The initial stacked state does not lie on the zero-gradient-sum manifold.
class ManifoldViolation : public Error {
 public:
  using Error::Error;
};

/// Rate bounds are only defined for gradient-difference couplings.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class StepUnderflow : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

class NonFiniteState : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

/// Malformed scenario file. The message names the offending field.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace zgs

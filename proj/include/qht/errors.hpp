#pragma once

#include <stdexcept>
#include <string>

namespace qht {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension (or hypothesis count).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented invariant (not Hermitian, not a density
/// operator, priors not normalized, malformed file, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine failed to converge. Carries the last residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace qht

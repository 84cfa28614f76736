#pragma once

#include <stdexcept>
#include <string>

namespace glauber {

/// Thrown when a construction would exceed a configured size guard
/// (e.g. the 2^n full chain beyond max_full_n).
class ResourceLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An eigensolver did not converge or its input was numerically unusable.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested eigenvalue is not simple, so derivative formulas do not apply.
class DegenerateEigenvalueError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace glauber

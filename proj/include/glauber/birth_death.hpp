#pragma once

#include <vector>

#include "glauber/mag_chain.hpp"

// Relative-accuracy spectral routines for the generator L = I - P of a
// birth-death chain.
//
// In the low-temperature regime 1 - lambda_2 drops far below machine
// epsilon, so forming it from an eigenvalue of P loses every digit. These
// routines work on L directly, expressed only through the up/down rates,
// with recurrences that never subtract nearly equal quantities, so small
// eigenvalues of L come out with full relative precision.

namespace glauber {

/// Number of eigenvalues of I - P strictly below mu (Sturm count).
int count_generator_eigenvalues_below(const ReducedChain& chain, double mu);

/// index-th smallest eigenvalue of I - P (index 0 is the zero eigenvalue,
/// index 1 the spectral gap), by bisection on the Sturm count. Throws
/// SolverError if the chain has a vanishing rate or the eigenvalue is below
/// the smallest positive double.
double generator_eigenvalue(const ReducedChain& chain, int index);

struct LevelEigenvector {
  std::vector<double> values;
  /// increments[k] = values[k+1] - values[k], each accurate to its own
  /// magnitude rather than to max |f|.
  std::vector<double> increments;
  /// Level at which the twisted factorization was split.
  int twist = 0;

  void scale(double factor);
};

/// Right eigenvector f of P with P f = (1 - mu) f, from a twisted
/// factorization of L - mu built from the same recurrences as the Sturm
/// count. Scaled so that the twist component is 1.
LevelEigenvector generator_eigenvector(const ReducedChain& chain, double mu);

}  // namespace glauber

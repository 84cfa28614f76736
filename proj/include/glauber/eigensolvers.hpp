#pragma once

#include <vector>

#include "glauber/matrix.hpp"

namespace glauber {

/// Symmetric tridiagonal matrix; offdiag[i] couples rows i and i+1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
  Matrix to_dense() const;
  /// Max absolute row sum.
  double inf_norm() const;
};

/// Eigenvalues sorted descending; vectors(i, j) is component i of the j-th
/// eigenvector. `vectors` is empty when only values were requested.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;

  std::vector<double> vector(std::size_t j) const { return vectors.column(j); }
};

/// Implicit-shift QL iteration. Throws SolverError if an eigenvalue fails to
/// converge within 30 iterations.
EigenSystem eigen_symmetric_tridiagonal(const SymTridiagonal& t, bool want_vectors = true);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// 1e-12 ||A||_F. Rejects input whose asymmetry exceeds 1e-12 ||A||_F.
EigenSystem eigen_dense_symmetric(const Matrix& a, bool want_vectors = true);

/// Orthogonal similarity reduction to tridiagonal form by Householder
/// reflections. Rejects non-square or asymmetric input like eigen_dense_symmetric.
SymTridiagonal householder_tridiagonalize(const Matrix& a);

enum class DenseMethod {
  /// eigen_dense_symmetric.
  jacobi,
  /// householder_tridiagonalize followed by eigen_symmetric_tridiagonal;
  /// O(m^3) once instead of per sweep, used for the larger full chains.
  householder_ql,
};

/// Eigenvalues only, descending.
std::vector<double> dense_symmetric_eigenvalues(const Matrix& a, DenseMethod method);

}  // namespace glauber

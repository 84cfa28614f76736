#pragma once

#include <optional>
#include <vector>

#include "glauber/eigensolvers.hpp"
#include "glauber/mag_chain.hpp"
#include "glauber/model.hpp"

namespace glauber {

/// lambda_2 - lambda_3 below this marks the second eigenvalue as not simple.
inline constexpr double kDegenerateGapTol = 1e-12;

struct SpectralResult {
  /// Reduced-chain spectrum, descending.
  std::vector<double> eigenvalues;
  double lambda2 = 0.0;
  /// 1 - lambda2, computed directly with full relative precision.
  double gap = 0.0;
  /// 1 / gap, in single-site steps.
  double t_rel = 0.0;
  /// Second right eigenvector on levels 0..n, with sum_k pi_k f_k^2 = 1 and f_n > f_0.
  std::vector<double> second_vector;
  /// second_vector[k+1] - second_vector[k], accurate to their own magnitude.
  std::vector<double> increments;
  /// Reduced stationary distribution used for the normalization.
  std::vector<double> stationary;
  /// lambda2 - lambda3; infinity when n = 1.
  double separation = 0.0;

  bool simple() const { return separation >= kDegenerateGapTol; }
};

/// diag_k = P_kk, offdiag_k = sqrt(P_{k,k+1} P_{k+1,k}). Throws
/// std::invalid_argument on a size mismatch or a negative rate product.
SymTridiagonal symmetrize(const ReducedChain& chain, const Distribution& pi);

/// lambda_2 and its increasing eigenvector for the magnetization chain.
SpectralResult second_eigenpair(const ModelParams& params);

struct StructureReport {
  /// f_{k+1} - f_k >= -tol for all k.
  bool increasing = false;
  /// f_{k+1} - f_k > 0 for all k.
  bool strictly = false;
  /// max_k |f_k + f_{n-k}| < tol; only evaluated at H = 0.
  std::optional<bool> antisymmetric_at_H0;
  /// f_k <= tol for k <= n/2 and f_k >= -tol for k >= n/2; only at H = 0.
  std::optional<bool> sign_split;
  /// False when lambda_2 is (numerically) degenerate; the flags above are
  /// then not meaningful.
  bool reliable = true;
  double min_increment = 0.0;
  double max_antisymmetry = 0.0;
  /// |f_{n/2}| for even n, 0 otherwise.
  double middle_value = 0.0;
};

StructureReport eigenvector_structure_report(const SpectralResult& spectrum, double H,
                                             double tol = 1e-9);

/// Same predicates on a bare level vector; increments are formed by
/// subtraction and the vector is assumed to belong to a simple eigenvalue.
StructureReport eigenvector_structure_report(const std::vector<double>& f, double H,
                                             double tol = 1e-9);

/// The 2^n chain symmetrized as D^{1/2} P D^{-1/2}, D = diag(pi).
Matrix symmetrized_full_chain(const ModelParams& params, int max_n = kDefaultMaxFullN);

/// Spectrum of the 2^n chain, descending.
std::vector<double> full_chain_spectrum(const ModelParams& params,
                                        DenseMethod method = DenseMethod::householder_ql,
                                        int max_n = kDefaultMaxFullN);

}  // namespace glauber

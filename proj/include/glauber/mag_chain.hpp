#pragma once

#include <span>
#include <vector>

#include "glauber/matrix.hpp"
#include "glauber/model.hpp"

namespace glauber {

/// Lumped chain on the plus-count levels 0..n (the magnetization chain).
///
/// up[k]      = P(k -> k+1), 0 <= k < n
/// down[k-1]  = P(k -> k-1), 1 <= k <= n
/// diag[k]    = 1 - up - down at level k
struct ReducedChain {
  int n = 0;
  std::vector<double> up;
  std::vector<double> down;
  std::vector<double> diag;

  std::size_t size() const { return diag.size(); }
  /// P(k -> k+1), zero at k = n.
  double up_at(int k) const { return k < n ? up[k] : 0.0; }
  /// P(k -> k-1), zero at k = 0.
  double down_at(int k) const { return k > 0 ? down[k - 1] : 0.0; }

  Matrix to_dense() const;
  /// (P f)_k, evaluated in difference form.
  std::vector<double> apply(std::span<const double> f) const;
};

/// d/dJ of the reduced chain; every row sums to zero.
struct DerivativeMatrix {
  int n = 0;
  std::vector<double> d_up;
  std::vector<double> d_down;
  std::vector<double> d_diag;

  double d_up_at(int k) const { return k < n ? d_up[k] : 0.0; }
  double d_down_at(int k) const { return k > 0 ? d_down[k - 1] : 0.0; }

  /// (P' f)_k = d_down_k (f_{k-1} - f_k) + d_up_k (f_{k+1} - f_k).
  std::vector<double> apply(std::span<const double> f) const;
};

enum class DerivativeMode {
  /// Closed-form derivative of the transition entries; valid for all H.
  analytic,
  /// Entries written through s_k: up' = s_{n-k}, down' = s_k. Exact only at H = 0.
  s_form,
};

ReducedChain build_reduced_chain(const ModelParams& params);

/// pi_k proportional to C(n,k) exp(J (2k-n)^2 / 2 + H (2k-n)).
Distribution reduced_stationary(const ModelParams& params);

/// s_k = k (n - 2k + 1) / n / (1 + cosh[(n - 2k + 1) 2J - 2H]), k = 0..n.
std::vector<double> s_values(const ModelParams& params);

DerivativeMatrix derivative_matrix(const ModelParams& params,
                                   DerivativeMode mode = DerivativeMode::analytic);

/// Spreads level values onto configurations: result[sigma] = f[plus_count(sigma)].
std::vector<double> lump_vector(std::span<const double> f_levels, int n);

double check_detailed_balance(const ReducedChain& chain, const Distribution& pi);

}  // namespace glauber

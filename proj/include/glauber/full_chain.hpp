#pragma once

#include <cstdint>
#include <vector>

#include "glauber/matrix.hpp"
#include "glauber/model.hpp"

namespace glauber {

/// Glauber heat-bath chain on all 2^n spin configurations.
///
/// Only single-spin flips have nonzero probability, so each row is stored as
/// its n flip probabilities plus the holding probability. State indices follow
/// SpinConfiguration::index().
class FullChain {
 public:
  FullChain(int n, std::vector<double> flip, std::vector<double> stay);

  int n() const { return n_; }
  std::size_t size() const { return stay_.size(); }

  /// P(state -> state with `site` flipped).
  double flip(std::uint64_t state, int site) const { return flip_[state * n_ + site]; }
  double stay(std::uint64_t state) const { return stay_[state]; }
  /// P(from -> to); zero unless the two differ in at most one spin.
  double prob(std::uint64_t from, std::uint64_t to) const;
  double row_sum(std::uint64_t state) const;

  Matrix to_dense() const;

 private:
  int n_;
  std::vector<double> flip_;
  std::vector<double> stay_;
};

/// J * sum_{x<y} s_x s_y + H * sum_x s_x, each unordered pair counted once.
double gibbs_log_weight(const ModelParams& params, const SpinConfiguration& sigma);

/// Throws ResourceLimitError when params.n > max_n.
FullChain full_transition_matrix(const ModelParams& params, int max_n = kDefaultMaxFullN);

/// Gibbs measure over the 2^n configurations.
Distribution stationary_full(const ModelParams& params, int max_n = kDefaultMaxFullN);

/// max_{i,j} |pi_i P_ij - pi_j P_ji| on the probability scale. Throws
/// std::invalid_argument on a dimension mismatch.
double check_detailed_balance(const Matrix& chain, const Distribution& pi);
double check_detailed_balance(const FullChain& chain, const Distribution& pi);

/// Sums a distribution over the 2^n states into its n+1 plus-count levels.
std::vector<double> level_marginals(const Distribution& full, int n);

}  // namespace glauber

#include "glauber/full_chain.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glauber/errors.hpp"

namespace glauber {

namespace {

void require_tractable(const ModelParams& params, int max_n) {
  params.validate();
  if (params.n > max_n)
    throw ResourceLimitError("full chain refused: n = " + std::to_string(params.n) +
                             " exceeds max_full_n = " + std::to_string(max_n));
}

}  // namespace

FullChain::FullChain(int n, std::vector<double> flip, std::vector<double> stay)
    : n_(n), flip_(std::move(flip)), stay_(std::move(stay)) {
  if (flip_.size() != stay_.size() * static_cast<std::size_t>(n_))
    throw std::invalid_argument("FullChain: inconsistent storage");
}

double FullChain::prob(std::uint64_t from, std::uint64_t to) const {
  if (from == to) return stay_[from];
  const std::uint64_t diff = from ^ to;
  if (diff & (diff - 1)) return 0.0;
  return flip(from, std::countr_zero(diff));
}

double FullChain::row_sum(std::uint64_t state) const {
  double s = stay_[state];
  for (int x = 0; x < n_; ++x) s += flip(state, x);
  return s;
}

Matrix FullChain::to_dense() const {
  const std::size_t m = size();
  Matrix p(m, m);
  for (std::uint64_t i = 0; i < m; ++i) {
    p(i, i) = stay_[i];
    for (int x = 0; x < n_; ++x) p(i, i ^ (std::uint64_t{1} << x)) = flip(i, x);
  }
  return p;
}

double gibbs_log_weight(const ModelParams& params, const SpinConfiguration& sigma) {
  const double m = sigma.magnetization();
  return params.J * (m * m - sigma.size()) / 2.0 + params.H * m;
}

FullChain full_transition_matrix(const ModelParams& params, int max_n) {
  require_tractable(params, max_n);
  const int n = params.n;
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> flip(states * n);
  std::vector<double> stay(states);
  for (std::uint64_t i = 0; i < states; ++i) {
    const auto sigma = SpinConfiguration::from_index(n, i);
    const int m = sigma.magnetization();
    double out = 0.0;
    for (int x = 0; x < n; ++x) {
      const int target = -sigma.spin(x);
      const double local = params.J * (m - sigma.spin(x)) + params.H;
      const double p = logistic(2.0 * target * local) / n;
      flip[i * n + x] = p;
      out += p;
    }
    stay[i] = 1.0 - out;
  }
  return {n, std::move(flip), std::move(stay)};
}

Distribution stationary_full(const ModelParams& params, int max_n) {
  require_tractable(params, max_n);
  const std::size_t states = std::size_t{1} << params.n;
  std::vector<double> lw(states);
  for (std::uint64_t i = 0; i < states; ++i)
    lw[i] = gibbs_log_weight(params, SpinConfiguration::from_index(params.n, i));
  return Distribution::from_log_weights(std::move(lw));
}

double check_detailed_balance(const Matrix& chain, const Distribution& pi) {
  if (chain.rows() != chain.cols() || chain.rows() != pi.size())
    throw std::invalid_argument("check_detailed_balance: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < chain.rows(); ++i)
    for (std::size_t j = i + 1; j < chain.cols(); ++j)
      worst = std::max(worst, std::abs(pi[i] * chain(i, j) - pi[j] * chain(j, i)));
  return worst;
}

double check_detailed_balance(const FullChain& chain, const Distribution& pi) {
  if (chain.size() != pi.size())
    throw std::invalid_argument("check_detailed_balance: dimension mismatch");
  double worst = 0.0;
  for (std::uint64_t i = 0; i < chain.size(); ++i) {
    for (int x = 0; x < chain.n(); ++x) {
      const std::uint64_t j = i ^ (std::uint64_t{1} << x);
      if (j < i) continue;
      worst = std::max(worst, std::abs(pi[i] * chain.flip(i, x) - pi[j] * chain.flip(j, x)));
    }
  }
  return worst;
}

std::vector<double> level_marginals(const Distribution& full, int n) {
  if (full.size() != (std::size_t{1} << n))
    throw std::invalid_argument("level_marginals: distribution is not over 2^n states");
  std::vector<double> levels(n + 1, 0.0);
  for (std::uint64_t i = 0; i < full.size(); ++i) levels[std::popcount(i)] += full[i];
  return levels;
}

}  // namespace glauber

#include "glauber/mag_chain.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace glauber {

namespace {

void require_levels(std::span<const double> f, int n, const char* who) {
  if (f.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument(std::string(who) + ": expected n+1 level values");
}

// Both transition directions take the form logistic(2J c + 2h); writing them
// through one expression keeps the H -> -H mirror bitwise exact.
double rate(int weight, int n, double J, int c, double h) {
  return static_cast<double>(weight) / n * logistic(2.0 * J * c + 2.0 * h);
}

}  // namespace

Matrix ReducedChain::to_dense() const {
  Matrix p(size(), size());
  for (int k = 0; k <= n; ++k) {
    p(k, k) = diag[k];
    if (k < n) p(k, k + 1) = up[k];
    if (k > 0) p(k, k - 1) = down[k - 1];
  }
  return p;
}

std::vector<double> ReducedChain::apply(std::span<const double> f) const {
  require_levels(f, n, "ReducedChain::apply");
  std::vector<double> out(size());
  for (int k = 0; k <= n; ++k) {
    double v = f[k];
    if (k < n) v += up[k] * (f[k + 1] - f[k]);
    if (k > 0) v += down[k - 1] * (f[k - 1] - f[k]);
    out[k] = v;
  }
  return out;
}

std::vector<double> DerivativeMatrix::apply(std::span<const double> f) const {
  require_levels(f, n, "DerivativeMatrix::apply");
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    double v = 0.0;
    if (k < n) v += d_up[k] * (f[k + 1] - f[k]);
    if (k > 0) v += d_down[k - 1] * (f[k - 1] - f[k]);
    out[k] = v;
  }
  return out;
}

ReducedChain build_reduced_chain(const ModelParams& params) {
  params.validate();
  const int n = params.n;
  ReducedChain chain;
  chain.n = n;
  chain.up.resize(n);
  chain.down.resize(n);
  chain.diag.resize(n + 1);
  for (int k = 0; k < n; ++k) chain.up[k] = rate(n - k, n, params.J, 2 * k - n + 1, params.H);
  for (int k = 1; k <= n; ++k)
    chain.down[k - 1] = rate(k, n, params.J, n - 2 * k + 1, -params.H);
  for (int k = 0; k <= n; ++k) chain.diag[k] = 1.0 - (chain.up_at(k) + chain.down_at(k));
  return chain;
}

Distribution reduced_stationary(const ModelParams& params) {
  params.validate();
  const int n = params.n;
  std::vector<double> lw(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double m = 2 * k - n;
    lw[k] = log_binomial(n, k) + params.J * m * m / 2.0 + params.H * m;
  }
  return Distribution::from_log_weights(std::move(lw));
}

std::vector<double> s_values(const ModelParams& params) {
  params.validate();
  const int n = params.n;
  std::vector<double> s(n + 1);
  for (int k = 0; k <= n; ++k) {
    const int c = n - 2 * k + 1;
    s[k] = static_cast<double>(k * c) / n *
           inv_one_plus_cosh(2.0 * params.J * c - 2.0 * params.H);
  }
  return s;
}

DerivativeMatrix derivative_matrix(const ModelParams& params, DerivativeMode mode) {
  const auto s = s_values(params);
  const int n = params.n;
  DerivativeMatrix d;
  d.n = n;
  d.d_up.resize(n);
  d.d_down.resize(n);
  d.d_diag.resize(n + 1);
  for (int k = 1; k <= n; ++k) d.d_down[k - 1] = s[k];
  for (int k = 0; k < n; ++k) {
    if (mode == DerivativeMode::s_form) {
      d.d_up[k] = s[n - k];
    } else {
      const int c = n - 2 * k - 1;
      d.d_up[k] = static_cast<double>((n - k) * -c) / n *
                  inv_one_plus_cosh(2.0 * params.J * c - 2.0 * params.H);
    }
  }
  for (int k = 0; k <= n; ++k) d.d_diag[k] = -(d.d_up_at(k) + d.d_down_at(k));
  return d;
}

std::vector<double> lump_vector(std::span<const double> f_levels, int n) {
  require_levels(f_levels, n, "lump_vector");
  if (n > 30) throw std::invalid_argument("lump_vector: n too large for a 2^n vector");
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> out(states);
  for (std::uint64_t i = 0; i < states; ++i) out[i] = f_levels[std::popcount(i)];
  return out;
}

double check_detailed_balance(const ReducedChain& chain, const Distribution& pi) {
  if (pi.size() != chain.size())
    throw std::invalid_argument("check_detailed_balance: dimension mismatch");
  double worst = 0.0;
  for (int k = 0; k < chain.n; ++k)
    worst = std::max(worst, std::abs(pi[k] * chain.up[k] - pi[k + 1] * chain.down[k]));
  return worst;
}

}  // namespace glauber

#include "glauber/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace glauber {

void ModelParams::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
  if (!std::isfinite(J) || !std::isfinite(H))
    throw std::invalid_argument("J and H must be finite");
  if (J < 0.0) throw std::invalid_argument("J must be >= 0, got " + std::to_string(J));
}

SpinConfiguration SpinConfiguration::from_index(int n, std::uint64_t index) {
  if (n < 1 || n > 63) throw std::invalid_argument("SpinConfiguration: n out of range");
  if (index >> n) throw std::invalid_argument("SpinConfiguration: index exceeds 2^n");
  return {n, index};
}

SpinConfiguration SpinConfiguration::from_spins(std::span<const int> spins) {
  const int n = static_cast<int>(spins.size());
  if (n < 1 || n > 63) throw std::invalid_argument("SpinConfiguration: n out of range");
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    if (spins[i] == +1)
      bits |= std::uint64_t{1} << i;
    else if (spins[i] != -1)
      throw std::invalid_argument("SpinConfiguration: spins must be +1 or -1");
  }
  return {n, bits};
}

std::vector<int> SpinConfiguration::spins() const {
  std::vector<int> s(n_);
  for (int i = 0; i < n_; ++i) s[i] = spin(i);
  return s;
}

int SpinConfiguration::plus_count() const { return std::popcount(bits_); }

SpinConfiguration SpinConfiguration::flipped(int site) const {
  if (site < 0 || site >= n_) throw std::out_of_range("SpinConfiguration::flipped: bad site");
  return {n_, bits_ ^ (std::uint64_t{1} << site)};
}

Distribution Distribution::from_log_weights(std::vector<double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("Distribution: no states");
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  double sum = 0.0;
  for (double w : log_weights) sum += std::exp(w - top);
  Distribution d;
  d.log_normalizer = top + std::log(sum);
  d.probabilities.reserve(log_weights.size());
  for (double w : log_weights) d.probabilities.push_back(std::exp(w - d.log_normalizer));
  d.log_weights = std::move(log_weights);
  return d;
}

double logistic(double a) {
  if (a < 0.0) {
    const double e = std::exp(a);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(-a));
}

double inv_one_plus_cosh(double x) {
  const double e = std::exp(-std::abs(x));
  const double d = 1.0 + e;
  return 2.0 * e / (d * d);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace glauber

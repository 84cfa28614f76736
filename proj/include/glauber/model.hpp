#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace glauber {

/// Largest vertex count for which the 2^n-state chain is materialized.
inline constexpr int kDefaultMaxFullN = 12;

/// Curie-Weiss model on the complete graph K_n with uniform coupling J and
/// uniform external field H.
struct ModelParams {
  int n = 1;
  double J = 0.0;
  double H = 0.0;

  /// Throws std::invalid_argument unless n >= 1, J >= 0 and both J, H finite.
  void validate() const;

  ModelParams with_J(double coupling) const { return {n, coupling, H}; }
};

/// A +-1 assignment to n vertices. Bit i of index() is set iff spin i is +1.
class SpinConfiguration {
 public:
  static SpinConfiguration from_index(int n, std::uint64_t index);
  static SpinConfiguration from_spins(std::span<const int> spins);

  int size() const { return n_; }
  std::uint64_t index() const { return bits_; }
  int spin(int site) const { return (bits_ >> site) & 1u ? +1 : -1; }
  std::vector<int> spins() const;
  int plus_count() const;
  /// Sum of all spins, 2 * plus_count() - n.
  int magnetization() const { return 2 * plus_count() - n_; }
  SpinConfiguration flipped(int site) const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  SpinConfiguration(int n, std::uint64_t bits) : n_(n), bits_(bits) {}
  int n_;
  std::uint64_t bits_;
};

/// A probability vector stored together with the unnormalized log-weights it
/// was built from.
struct Distribution {
  std::vector<double> log_weights;
  std::vector<double> probabilities;
  /// log Z, the log-sum-exp of log_weights.
  double log_normalizer = 0.0;

  /// Normalizes through log-sum-exp.
  static Distribution from_log_weights(std::vector<double> log_weights);

  std::size_t size() const { return probabilities.size(); }
  double operator[](std::size_t i) const { return probabilities[i]; }
};

/// 1 / (1 + e^{-a}) without overflow for large |a|.
double logistic(double a);

/// 1 / (1 + cosh x) = 2 e^{-|x|} / (1 + e^{-|x|})^2, overflow-free.
double inv_one_plus_cosh(double x);

/// log of the binomial coefficient C(n, k).
double log_binomial(int n, int k);

}  // namespace glauber

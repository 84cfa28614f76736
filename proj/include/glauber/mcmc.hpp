#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "glauber/mag_chain.hpp"
#include "glauber/model.hpp"

namespace glauber {

/// Magnetization samples recorded once per sweep (n single-site steps).
struct Trajectory {
  ModelParams params;
  std::uint64_t seed = 0;
  /// Sweeps discarded before recording.
  std::int64_t burn_in = 0;
  /// m_t = 2 k_t - n.
  std::vector<int> samples;
};

/// Uniform doubles in [0, 1) from the top 53 bits of mt19937_64, identical on
/// every platform for a given seed.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound).
  std::uint32_t below(std::uint32_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Single-step sampler for the magnetization chain.
class ReducedSampler {
 public:
  ReducedSampler(const ModelParams& params, std::uint64_t seed);

  int level() const { return level_; }
  void set_level(int k) { level_ = k; }
  /// Draws a level from the reduced stationary distribution.
  void draw_stationary();
  /// One transition; returns the new level.
  int step();

 private:
  ReducedChain chain_;
  std::vector<double> stationary_;
  UniformSource rng_;
  int level_ = 0;
};

/// steps and burn_in are counted in sweeps. The start level is drawn from
/// the exact reduced stationary distribution.
Trajectory simulate_reduced(const ModelParams& params, std::uint64_t seed, std::int64_t steps,
                            std::int64_t burn_in);

/// Heat-bath dynamics on the full configuration (one machine word, n <= 24).
/// The start configuration is drawn from the exact Gibbs measure.
Trajectory simulate_full(const ModelParams& params, std::uint64_t seed, std::int64_t steps,
                         std::int64_t burn_in);

enum class RelaxationMethod { exponential_fit, integrated_autocorrelation };

/// Minimum sample count accepted by estimate_relaxation.
inline constexpr std::size_t kMinEstimationSamples = 10000;
/// Estimates never go below half a sweep, the white-noise value of the
/// integrated autocorrelation time.
inline constexpr double kRelaxationFloor = 0.5;

struct RelaxationEstimate {
  /// In sweeps.
  double t_rel_hat = 0.0;
  double std_error = 0.0;
  RelaxationMethod method = RelaxationMethod::exponential_fit;
  /// No correlation resolvable above noise; t_rel_hat is then the floor or
  /// within noise of it.
  bool at_floor = false;
  /// Number of lags used by the fit, or the summation window.
  int lags = 0;
};

/// Normalized autocorrelation of the samples for lags 0..max_lag.
std::vector<double> autocorrelation(const std::vector<int>& samples, int max_lag);

/// Throws std::invalid_argument for fewer than kMinEstimationSamples samples
/// or a constant series, and std::domain_error when the lag-1 autocorrelation
/// is significantly negative.
RelaxationEstimate estimate_relaxation(const Trajectory& traj, RelaxationMethod method);

/// Spectral relaxation time converted to sweeps, t_rel / n.
double spectral_t_rel_sweeps(const ModelParams& params);

/// One comment line "# n=..,J=..,H=..,seed=..,sweeps=..", a header "m",
/// then one sample per line.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace glauber

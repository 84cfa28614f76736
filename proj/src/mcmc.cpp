#include "glauber/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "glauber/format.hpp"
#include "glauber/spectral.hpp"

namespace glauber {

namespace {

constexpr int kMaxFullSimulationN = 24;
constexpr int kBatches = 16;
// Lags are used by the exponential fit while rho(t) exceeds this many
// standard errors of the autocorrelation estimate.
constexpr double kFitNoiseMultiple = 3.0;
constexpr double kWindowFactor = 6.0;

void require_lengths(std::int64_t steps, std::int64_t burn_in) {
  if (steps < 0 || burn_in < 0)
    throw std::invalid_argument("simulation lengths must be non-negative");
}

int draw_from(const std::vector<double>& probabilities, double u) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < probabilities.size(); ++k) {
    acc += probabilities[k];
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(probabilities.size()) - 1;
}

// Centered series and its lag-0 autocovariance.
struct Centered {
  std::vector<double> x;
  double c0 = 0.0;
};

Centered center(std::span<const int> samples) {
  Centered c;
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  c.x.reserve(samples.size());
  for (int s : samples) c.x.push_back(s - mean);
  for (double v : c.x) c.c0 += v * v;
  c.c0 /= static_cast<double>(c.x.size());
  return c;
}

double rho(const Centered& c, std::size_t lag) {
  const std::size_t n = c.x.size();
  if (lag >= n) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i + lag < n; ++i) s += c.x[i] * c.x[i + lag];
  return s / static_cast<double>(n) / c.c0;
}

struct CoreEstimate {
  double value = kRelaxationFloor;
  bool at_floor = true;
  int lags = 0;
};

CoreEstimate exponential_fit(const Centered& c) {
  const double n = static_cast<double>(c.x.size());
  const std::size_t max_lag = c.x.size() / 4;
  std::vector<double> ts, logs;
  double sum_sq = 0.0;
  for (std::size_t t = 1; t <= max_lag; ++t) {
    const double r = rho(c, t);
    const double noise = std::sqrt((1.0 + 2.0 * sum_sq) / n);
    if (!(r > kFitNoiseMultiple * noise)) break;
    ts.push_back(static_cast<double>(t));
    logs.push_back(std::log(r));
    sum_sq += r * r;
  }
  CoreEstimate e;
  e.lags = static_cast<int>(ts.size());
  double tau = 0.0;
  if (ts.size() == 1) {
    tau = -1.0 / logs[0];
  } else if (ts.size() >= 2) {
    const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / ts.size();
    const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sxy += (ts[i] - mt) * (logs[i] - ml);
      sxx += (ts[i] - mt) * (ts[i] - mt);
    }
    const double slope = sxy / sxx;
    if (slope < 0.0) tau = -1.0 / slope;
  }
  if (std::isfinite(tau) && tau > kRelaxationFloor) {
    e.value = tau;
    e.at_floor = false;
  }
  return e;
}

CoreEstimate integrated(const Centered& c) {
  const std::size_t max_lag = c.x.size() / 4;
  double tau = 0.5;
  std::size_t w = 0;
  while (w < max_lag) {
    ++w;
    tau += rho(c, w);
    if (static_cast<double>(w) >= kWindowFactor * tau) break;
  }
  CoreEstimate e;
  e.lags = static_cast<int>(w);
  e.value = std::max(tau, kRelaxationFloor);
  // Sokal's variance estimate for the windowed sum; excess over 1/2 within
  // three standard errors is indistinguishable from white noise.
  const double sd = tau * std::sqrt(2.0 * (2.0 * w + 1.0) / static_cast<double>(c.x.size()));
  e.at_floor = !(tau - kRelaxationFloor > 3.0 * sd);
  return e;
}

CoreEstimate estimate_core(std::span<const int> samples, RelaxationMethod method) {
  const Centered c = center(samples);
  if (c.c0 == 0.0) return {};
  return method == RelaxationMethod::exponential_fit ? exponential_fit(c) : integrated(c);
}

}  // namespace

std::uint32_t UniformSource::below(std::uint32_t bound) {
  const auto v = static_cast<std::uint32_t>(next() * bound);
  return std::min(v, bound - 1);
}

ReducedSampler::ReducedSampler(const ModelParams& params, std::uint64_t seed)
    : chain_(build_reduced_chain(params)),
      stationary_(reduced_stationary(params).probabilities),
      rng_(seed) {}

void ReducedSampler::draw_stationary() { level_ = draw_from(stationary_, rng_.next()); }

int ReducedSampler::step() {
  const double u = rng_.next();
  const double up = chain_.up_at(level_);
  if (u < up) {
    ++level_;
  } else if (u < up + chain_.down_at(level_)) {
    --level_;
  }
  return level_;
}

Trajectory simulate_reduced(const ModelParams& params, std::uint64_t seed, std::int64_t steps,
                            std::int64_t burn_in) {
  require_lengths(steps, burn_in);
  ReducedSampler sampler(params, seed);
  sampler.draw_stationary();
  const int n = params.n;
  Trajectory traj{params, seed, burn_in, {}};
  traj.samples.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t s = 0; s < burn_in; ++s)
    for (int i = 0; i < n; ++i) sampler.step();
  for (std::int64_t s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i) sampler.step();
    traj.samples.push_back(2 * sampler.level() - n);
  }
  return traj;
}

Trajectory simulate_full(const ModelParams& params, std::uint64_t seed, std::int64_t steps,
                         std::int64_t burn_in) {
  params.validate();
  require_lengths(steps, burn_in);
  const int n = params.n;
  if (n > kMaxFullSimulationN)
    throw std::invalid_argument("simulate_full: n must be <= 24");

  UniformSource rng(seed);
  // Exact Gibbs start: a stationary level, then a uniformly random subset of
  // that many +1 sites.
  int plus = draw_from(reduced_stationary(params).probabilities, rng.next());
  std::vector<int> sites(n);
  std::iota(sites.begin(), sites.end(), 0);
  std::uint32_t state = 0;
  for (int i = 0; i < plus; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint32_t>(n - i)));
    std::swap(sites[i], sites[j]);
    state |= 1u << sites[i];
  }

  // P(spin -> +1) indexed by the sum of the other spins, -(n-1)..(n-1).
  std::vector<double> p_plus(2 * n - 1);
  for (int other = -(n - 1); other <= n - 1; ++other)
    p_plus[other + n - 1] = logistic(2.0 * (params.J * other + params.H));

  Trajectory traj{params, seed, burn_in, {}};
  traj.samples.reserve(static_cast<std::size_t>(steps));
  auto single_step = [&] {
    const int x = static_cast<int>(rng.below(static_cast<std::uint32_t>(n)));
    const int spin = (state >> x) & 1u ? 1 : -1;
    const int other = 2 * plus - n - spin;
    const bool up = rng.next() < p_plus[other + n - 1];
    if (up && spin < 0) {
      state |= 1u << x;
      ++plus;
    } else if (!up && spin > 0) {
      state &= ~(1u << x);
      --plus;
    }
  };
  for (std::int64_t s = 0; s < burn_in; ++s)
    for (int i = 0; i < n; ++i) single_step();
  for (std::int64_t s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i) single_step();
    traj.samples.push_back(2 * plus - n);
  }
  return traj;
}

std::vector<double> autocorrelation(const std::vector<int>& samples, int max_lag) {
  if (samples.empty() || max_lag < 0)
    throw std::invalid_argument("autocorrelation: empty series or negative lag");
  const Centered c = center(samples);
  if (c.c0 == 0.0) throw std::invalid_argument("autocorrelation: constant series");
  std::vector<double> out(max_lag + 1);
  for (int t = 0; t <= max_lag; ++t) out[t] = rho(c, t);
  return out;
}

RelaxationEstimate estimate_relaxation(const Trajectory& traj, RelaxationMethod method) {
  const auto& x = traj.samples;
  if (x.size() < kMinEstimationSamples)
    throw std::invalid_argument("estimate_relaxation: need at least " +
                                std::to_string(kMinEstimationSamples) + " samples, got " +
                                std::to_string(x.size()));
  const Centered c = center(x);
  if (c.c0 == 0.0)
    throw std::invalid_argument("estimate_relaxation: constant trajectory carries no signal");
  const double r1 = rho(c, 1);
  if (r1 < -4.0 / std::sqrt(static_cast<double>(x.size())))
    throw std::domain_error("estimate_relaxation: lag-1 autocorrelation is negative (" +
                            format_double(r1) + "); the run is too short or too coarse");

  const CoreEstimate whole = estimate_core(x, method);
  RelaxationEstimate est;
  est.method = method;
  est.t_rel_hat = whole.value;
  est.at_floor = whole.at_floor;
  est.lags = whole.lags;

  const std::size_t batch = x.size() / kBatches;
  std::vector<double> values;
  for (int b = 0; b < kBatches; ++b)
    values.push_back(
        estimate_core(std::span<const int>(x).subspan(b * batch, batch), method).value);
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / kBatches;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= kBatches - 1;
  est.std_error = std::sqrt(var / kBatches);
  return est;
}

double spectral_t_rel_sweeps(const ModelParams& params) {
  return second_eigenpair(params).t_rel / params.n;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "# n=" << traj.params.n << ",J=" << format_double(traj.params.J)
     << ",H=" << format_double(traj.params.H) << ",seed=" << traj.seed
     << ",sweeps=" << traj.samples.size() << '\n';
  os << "m\n";
  for (int m : traj.samples) os << m << '\n';
}

}  // namespace glauber

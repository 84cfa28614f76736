#include "glauber/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "glauber/errors.hpp"
#include "glauber/mag_chain.hpp"
#include "glauber/spectral.hpp"

namespace glauber {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSignTol = 1e-12;

// (P' f)_k from increments, so that no cancellation enters the product.
std::vector<double> derivative_action(const DerivativeMatrix& d, const SpectralResult& r) {
  const int n = d.n;
  std::vector<double> out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double v = 0.0;
    if (k < n) v += d.d_up[k] * r.increments[k];
    if (k > 0) v -= d.d_down[k - 1] * r.increments[k - 1];
    out[k] = v;
  }
  return out;
}

SpectralResult simple_pair(const ModelParams& params) {
  SpectralResult r = second_eigenpair(params);
  if (!r.simple())
    throw DegenerateEigenvalueError("lambda_2 is not simple (lambda_2 - lambda_3 = " +
                                    std::to_string(r.separation) + ")");
  return r;
}

double gap_at(const ModelParams& params, double J) {
  return second_eigenpair(params.with_J(J)).gap;
}

}  // namespace

double hellmann_feynman(const ModelParams& params) {
  const SpectralResult r = simple_pair(params);
  const auto pf = derivative_action(derivative_matrix(params, DerivativeMode::analytic), r);
  double sum = 0.0;
  for (std::size_t k = 0; k < pf.size(); ++k) sum += r.stationary[k] * r.second_vector[k] * pf[k];
  return sum;
}

double finite_difference_gap(const ModelParams& params, double delta) {
  params.validate();
  if (!(delta >= 1e-8 && delta <= 1e-3))
    throw std::invalid_argument("finite_difference_gap: delta must lie in [1e-8, 1e-3]");
  const double J = params.J;
  // lambda_2 = 1 - gap, so differences of the gap avoid rounding lambda_2.
  if (J - delta >= 0.0)
    return (gap_at(params, J - delta) - gap_at(params, J + delta)) / (2.0 * delta);
  const double g0 = gap_at(params, J);
  const double g1 = gap_at(params, J + delta);
  const double g2 = gap_at(params, J + 2.0 * delta);
  return -(-3.0 * g0 + 4.0 * g1 - g2) / (2.0 * delta);
}

std::vector<double> sign_structure_terms(const ModelParams& params) {
  params.validate();
  if (params.H != 0.0)
    throw std::invalid_argument(
        "sign_structure_terms: the per-term sign argument requires H = 0; "
        "use sweep_monotonicity to examine H != 0 numerically");
  const SpectralResult r = simple_pair(params);
  const auto pf = derivative_action(derivative_matrix(params, DerivativeMode::s_form), r);
  std::vector<double> terms(pf.size());
  for (std::size_t k = 0; k < pf.size(); ++k) terms[k] = r.second_vector[k] * pf[k];
  return terms;
}

bool SweepReport::complete() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok(); });
}

void summarize_monotonicity(SweepReport& report, double tol) {
  double worst = 0.0;
  const SweepPoint* prev = nullptr;
  for (const SweepPoint& p : report.points) {
    if (!p.ok() || std::isnan(p.gap)) continue;
    // lambda_2 drop between neighbours equals the rise in the gap.
    if (prev) worst = std::max(worst, p.gap - prev->gap);
    prev = &p;
  }
  report.max_violation = worst;
  report.monotone_in_J = worst <= tol;
}

SweepReport sweep_monotonicity(int n, double H, const std::vector<double>& J_grid) {
  if (J_grid.empty()) throw std::invalid_argument("sweep_monotonicity: empty J grid");
  for (std::size_t i = 0; i < J_grid.size(); ++i) {
    if (!(J_grid[i] >= 0.0)) throw std::invalid_argument("sweep_monotonicity: J must be >= 0");
    if (i > 0 && !(J_grid[i] > J_grid[i - 1]))
      throw std::invalid_argument("sweep_monotonicity: J grid must be strictly ascending");
  }
  ModelParams{n, J_grid.front(), H}.validate();

  SweepReport report;
  report.points.reserve(J_grid.size());
  for (double J : J_grid) {
    const ModelParams params{n, J, H};
    SweepPoint pt{n, J, H, kNaN, kNaN, kNaN, kNaN, kNaN, std::nullopt, {}};
    try {
      const SpectralResult r = second_eigenpair(params);
      pt.lambda2 = r.lambda2;
      pt.gap = r.gap;
      pt.t_rel = r.t_rel;
      pt.fd_derivative = finite_difference_gap(params);
      pt.hf_derivative = hellmann_feynman(params);
      if (H == 0.0) {
        const auto terms = sign_structure_terms(params);
        pt.sign_terms_ok = std::all_of(terms.begin(), terms.end(),
                                       [](double t) { return t >= -kSignTol; });
      }
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
    report.points.push_back(std::move(pt));
  }
  summarize_monotonicity(report);
  return report;
}

std::vector<TemperaturePoint> temperature_view(const SweepReport& report, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("temperature_view: c must be positive");
  std::vector<TemperaturePoint> view;
  view.reserve(report.points.size());
  for (const SweepPoint& p : report.points) {
    if (!(p.J > 0.0))
      throw std::invalid_argument("temperature_view: J = 0 is infinite temperature");
    view.push_back({c / p.J, p.t_rel});
  }
  std::stable_sort(view.begin(), view.end(),
                   [](const TemperaturePoint& a, const TemperaturePoint& b) { return a.T < b.T; });
  return view;
}

bool nonincreasing_in_T(const std::vector<TemperaturePoint>& view) {
  for (std::size_t i = 1; i < view.size(); ++i)
    if (view[i].t_rel > view[i - 1].t_rel) return false;
  return true;
}

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("uniform_grid: range must be ascending");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) grid[i] = lo + (hi - lo) * i / (steps - 1);
  grid.back() = hi;
  return grid;
}

}  // namespace glauber

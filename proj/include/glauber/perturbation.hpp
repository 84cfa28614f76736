#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glauber/model.hpp"

namespace glauber {

inline constexpr double kDefaultFdStep = 1e-5;
/// Largest tolerated decrease of lambda_2 between consecutive sweep points.
inline constexpr double kMonotoneTol = 1e-10;

/// d lambda_2 / dJ = <f, (dP/dJ) f>_pi for the normalized increasing f.
/// Throws DegenerateEigenvalueError when lambda_2 - lambda_3 < 1e-12.
double hellmann_feynman(const ModelParams& params);

/// Central difference of lambda_2 in J. Falls back to the second-order
/// one-sided stencil when J - delta < 0. Throws std::invalid_argument unless
/// delta is in [1e-8, 1e-3].
double finite_difference_gap(const ModelParams& params, double delta = kDefaultFdStep);

/// Per-level terms f_k (P' f)_k at H = 0, with P' in s-form. Throws
/// std::invalid_argument for H != 0.
std::vector<double> sign_structure_terms(const ModelParams& params);

struct SweepPoint {
  int n = 0;
  double J = 0.0;
  double H = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  double t_rel = 0.0;
  double hf_derivative = 0.0;
  double fd_derivative = 0.0;
  /// Every sign term >= -1e-12; empty when H != 0 (not applicable).
  std::optional<bool> sign_terms_ok;
  /// Empty on success; otherwise why the point could not be evaluated.
  /// Fields that could not be computed hold NaN.
  std::string error;

  bool ok() const { return error.empty(); }
};

struct SweepReport {
  std::vector<SweepPoint> points;
  bool monotone_in_J = true;
  /// Largest decrease of lambda_2 between consecutive successful points (0 if none).
  double max_violation = 0.0;

  bool complete() const;
};

/// Evaluates every grid point. Throws std::invalid_argument if the grid is
/// empty, negative or not strictly ascending.
SweepReport sweep_monotonicity(int n, double H, const std::vector<double>& J_grid);

/// Recomputes monotone_in_J and max_violation from the points.
void summarize_monotonicity(SweepReport& report, double tol = kMonotoneTol);

struct TemperaturePoint {
  double T = 0.0;
  double t_rel = 0.0;
};

/// T = c / J for each point, sorted by T ascending. Throws
/// std::invalid_argument for c <= 0 or a point with J <= 0.
std::vector<TemperaturePoint> temperature_view(const SweepReport& report, double c = 1.0);

/// True if t_rel never increases as T increases.
bool nonincreasing_in_T(const std::vector<TemperaturePoint>& view);

std::vector<double> uniform_grid(double lo, double hi, int steps);

}  // namespace glauber

#include "glauber/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glauber/birth_death.hpp"
#include "glauber/full_chain.hpp"

namespace glauber {

SymTridiagonal symmetrize(const ReducedChain& chain, const Distribution& pi) {
  if (pi.size() != chain.size())
    throw std::invalid_argument("symmetrize: distribution size does not match the chain");
  SymTridiagonal t;
  t.diag = chain.diag;
  t.offdiag.resize(chain.n);
  for (int k = 0; k < chain.n; ++k) {
    const double product = chain.up[k] * chain.down[k];
    if (product < 0.0 || std::isnan(product))
      throw std::invalid_argument("symmetrize: negative rate product at level " +
                                  std::to_string(k));
    t.offdiag[k] = std::sqrt(product);
  }
  return t;
}

SpectralResult second_eigenpair(const ModelParams& params) {
  const ReducedChain chain = build_reduced_chain(params);
  const Distribution pi = reduced_stationary(params);
  const int n = params.n;

  SpectralResult r;
  r.eigenvalues = eigen_symmetric_tridiagonal(symmetrize(chain, pi), false).values;
  r.gap = generator_eigenvalue(chain, 1);
  r.lambda2 = 1.0 - r.gap;
  r.t_rel = 1.0 / r.gap;
  r.eigenvalues[1] = r.lambda2;
  r.separation = n >= 2 ? generator_eigenvalue(chain, 2) - r.gap
                        : std::numeric_limits<double>::infinity();

  LevelEigenvector f = generator_eigenvector(chain, r.gap);
  double norm2 = 0.0;
  for (int k = 0; k <= n; ++k) norm2 += pi[k] * f.values[k] * f.values[k];
  double scale = 1.0 / std::sqrt(norm2);
  // Increasing representative: f_n > f_0, ties broken by the first nonzero increment.
  double direction = f.values[n] - f.values[0];
  if (direction == 0.0) {
    for (double inc : f.increments) {
      if (inc != 0.0) {
        direction = inc;
        break;
      }
    }
  }
  if (direction < 0.0) scale = -scale;
  f.scale(scale);
  r.second_vector = std::move(f.values);
  r.increments = std::move(f.increments);
  r.stationary = pi.probabilities;
  return r;
}

namespace {

StructureReport structure_from(const std::vector<double>& f, const std::vector<double>& inc,
                               double H, double tol) {
  StructureReport rep;
  const int n = static_cast<int>(f.size()) - 1;
  rep.min_increment = inc.empty() ? 0.0 : *std::min_element(inc.begin(), inc.end());
  rep.increasing = rep.min_increment >= -tol;
  rep.strictly = inc.empty() || rep.min_increment > 0.0;
  if (H == 0.0) {
    double worst = 0.0;
    bool split = true;
    for (int k = 0; k <= n; ++k) {
      worst = std::max(worst, std::abs(f[k] + f[n - k]));
      if (2 * k <= n && f[k] > tol) split = false;
      if (2 * k >= n && f[k] < -tol) split = false;
    }
    rep.max_antisymmetry = worst;
    rep.antisymmetric_at_H0 = worst < tol;
    rep.sign_split = split;
  }
  rep.middle_value = n % 2 == 0 ? std::abs(f[n / 2]) : 0.0;
  return rep;
}

}  // namespace

StructureReport eigenvector_structure_report(const SpectralResult& spectrum, double H,
                                             double tol) {
  StructureReport rep = structure_from(spectrum.second_vector, spectrum.increments, H, tol);
  rep.reliable = spectrum.simple();
  return rep;
}

StructureReport eigenvector_structure_report(const std::vector<double>& f, double H,
                                             double tol) {
  if (f.empty()) throw std::invalid_argument("eigenvector_structure_report: empty vector");
  std::vector<double> inc(f.size() - 1);
  for (std::size_t k = 0; k + 1 < f.size(); ++k) inc[k] = f[k + 1] - f[k];
  return structure_from(f, inc, H, tol);
}

Matrix symmetrized_full_chain(const ModelParams& params, int max_n) {
  const FullChain chain = full_transition_matrix(params, max_n);
  const Distribution pi = stationary_full(params, max_n);
  const std::size_t m = chain.size();
  Matrix s(m, m);
  for (std::uint64_t i = 0; i < m; ++i) {
    s(i, i) = chain.stay(i);
    for (int x = 0; x < chain.n(); ++x) {
      const std::uint64_t j = i ^ (std::uint64_t{1} << x);
      if (j < i) continue;
      // D^{1/2} P D^{-1/2}; the lower triangle mirrors the upper one.
      const double v =
          std::exp(0.5 * (pi.log_weights[i] - pi.log_weights[j])) * chain.flip(i, x);
      s(i, j) = s(j, i) = v;
    }
  }
  return s;
}

std::vector<double> full_chain_spectrum(const ModelParams& params, DenseMethod method,
                                        int max_n) {
  return dense_symmetric_eigenvalues(symmetrized_full_chain(params, max_n), method);
}

}  // namespace glauber

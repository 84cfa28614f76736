#include "glauber/birth_death.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "glauber/errors.hpp"

namespace glauber {

namespace {

// Replacement for an exactly vanishing pivot; counted as negative.
constexpr double kPivotFloor = 1e-290;

// Pivots of L - mu written as d_k = base_k + q_k, where base is the rate
// leaving level k in the direction of elimination. For the forward sweep
// (top-down) base_k = up_k and
//   q_0 = -mu,  q_k = down_k * (q_{k-1} / d_{k-1}) - mu,
// which is algebraically the Sturm recurrence d_k = a_k - mu - b_{k-1}^2 / d_{k-1}
// with the up_k + down_k - up_{k-1} down_k / d_{k-1} cancellation removed.
// The backward sweep is the mirror image with up and down exchanged.
struct Pivots {
  std::vector<double> d;
  std::vector<double> q;
  /// q_k / d_k, with the limit 1 when d_k overflowed.
  std::vector<double> ratio;
  int negatives = 0;
};

template <class Base, class Feed>
Pivots eliminate(int n, double mu, bool forward, Base base, Feed feed) {
  Pivots pv;
  pv.d.resize(n + 1);
  pv.q.resize(n + 1);
  pv.ratio.resize(n + 1);
  double prev_ratio = 0.0;
  for (int step = 0; step <= n; ++step) {
    const int k = forward ? step : n - step;
    const double q = step == 0 ? -mu : feed(k) * prev_ratio - mu;
    double d = base(k) + q;
    if (d == 0.0) d = -kPivotFloor;
    pv.q[k] = q;
    pv.d[k] = d;
    pv.ratio[k] = std::isinf(d) ? 1.0 : q / d;
    prev_ratio = pv.ratio[k];
    if (d < 0.0) ++pv.negatives;
  }
  return pv;
}

Pivots forward_pivots(const ReducedChain& c, double mu) {
  // d_k = up_k + q_k; the coupling into level k is down_k.
  return eliminate(
      c.n, mu, true, [&](int k) { return c.up_at(k); }, [&](int k) { return c.down_at(k); });
}

Pivots backward_pivots(const ReducedChain& c, double mu) {
  return eliminate(
      c.n, mu, false, [&](int k) { return c.down_at(k); }, [&](int k) { return c.up_at(k); });
}

void require_positive_rates(const ReducedChain& c) {
  for (int k = 0; k < c.n; ++k) {
    if (!(c.up[k] > 0.0) || !(c.down[k] > 0.0) || !std::isfinite(c.up[k]) ||
        !std::isfinite(c.down[k]))
      throw SolverError("birth-death chain has a vanishing or non-finite rate at level " +
                        std::to_string(k));
  }
}

}  // namespace

int count_generator_eigenvalues_below(const ReducedChain& chain, double mu) {
  return forward_pivots(chain, mu).negatives;
}

double generator_eigenvalue(const ReducedChain& chain, int index) {
  if (index < 0 || index > chain.n)
    throw std::invalid_argument("generator_eigenvalue: index out of range");
  if (index == 0) return 0.0;
  require_positive_rates(chain);

  // Gershgorin bound on the spectrum of L.
  double hi = 0.0;
  for (int k = 0; k <= chain.n; ++k) {
    const double a = chain.up_at(k) + chain.down_at(k);
    const double left = k > 0 ? std::sqrt(chain.up_at(k - 1) * chain.down_at(k)) : 0.0;
    const double right = k < chain.n ? std::sqrt(chain.up_at(k) * chain.down_at(k + 1)) : 0.0;
    hi = std::max(hi, a + left + right);
  }
  hi *= 1.0 + 1e-12;
  double lo = std::numeric_limits<double>::min();
  if (count_generator_eigenvalues_below(chain, lo) > index)
    throw SolverError("generator eigenvalue " + std::to_string(index) +
                      " is below the smallest normal double");

  // Geometric bisection while the bracket spans orders of magnitude, then
  // arithmetic bisection down to adjacent doubles.
  for (int iter = 0; iter < 4000; ++iter) {
    const double mid = hi > 2.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (count_generator_eigenvalues_below(chain, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return lo + 0.5 * (hi - lo);
}

void LevelEigenvector::scale(double factor) {
  for (double& v : values) v *= factor;
  for (double& v : increments) v *= factor;
}

LevelEigenvector generator_eigenvector(const ReducedChain& chain, double mu) {
  require_positive_rates(chain);
  const int n = chain.n;
  const Pivots fwd = forward_pivots(chain, mu);
  const Pivots bwd = backward_pivots(chain, mu);

  // gamma_r = d_r + dtilde_r - (a_r - mu) = q_r + p_r + mu is the residual of
  // the twisted factorization at r; split where it is smallest.
  int twist = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r <= n; ++r) {
    const double gamma = std::abs(fwd.q[r] + bwd.q[r] + mu);
    if (std::isfinite(gamma) && gamma < best) {
      best = gamma;
      twist = r;
    }
  }

  LevelEigenvector out;
  out.twist = twist;
  out.values.assign(n + 1, 0.0);
  out.increments.assign(n, 0.0);
  out.values[twist] = 1.0;
  // Rows above the twist: d_k f_k = up_k f_{k+1}.
  for (int k = twist - 1; k >= 0; --k) {
    out.values[k] = out.values[k + 1] * (chain.up_at(k) / fwd.d[k]);
    out.increments[k] = out.values[k + 1] * fwd.ratio[k];
  }
  // Rows below the twist: dtilde_k f_k = down_k f_{k-1}.
  for (int k = twist + 1; k <= n; ++k) {
    out.values[k] = out.values[k - 1] * (chain.down_at(k) / bwd.d[k]);
    out.increments[k - 1] = -out.values[k - 1] * bwd.ratio[k];
  }
  return out;
}

}  // namespace glauber

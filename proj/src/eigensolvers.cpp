#include "glauber/eigensolvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "glauber/errors.hpp"

namespace glauber {

namespace {

constexpr int kMaxQlIterations = 30;
constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTol = 1e-12;

EigenSystem sorted_descending(std::vector<double> values, const Matrix& vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  EigenSystem out;
  out.values.reserve(values.size());
  for (std::size_t j : order) out.values.push_back(values[j]);
  if (vectors.rows() > 0) {
    out.vectors = Matrix(vectors.rows(), values.size());
    for (std::size_t j = 0; j < order.size(); ++j)
      for (std::size_t i = 0; i < vectors.rows(); ++i) out.vectors(i, j) = vectors(i, order[j]);
  }
  return out;
}

}  // namespace

Matrix SymTridiagonal::to_dense() const {
  const std::size_t m = size();
  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    a(i, i) = diag[i];
    if (i + 1 < m) a(i, i + 1) = a(i + 1, i) = offdiag[i];
  }
  return a;
}

double SymTridiagonal::inf_norm() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < size()) r += std::abs(offdiag[i]);
    worst = std::max(worst, r);
  }
  return worst;
}

// QL with implicit Wilkinson-type shifts, after the EISPACK tql2 routine.
EigenSystem eigen_symmetric_tridiagonal(const SymTridiagonal& t, bool want_vectors) {
  const std::size_t m = t.size();
  if (m == 0) throw std::invalid_argument("eigen_symmetric_tridiagonal: empty matrix");
  if (t.offdiag.size() + 1 != m)
    throw std::invalid_argument("eigen_symmetric_tridiagonal: offdiag must have size m-1");

  std::vector<double> d = t.diag;
  std::vector<double> e(m, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  Matrix v = want_vectors ? Matrix::identity(m) : Matrix();

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double shift = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t split = l;
    while (split < m && std::abs(e[split]) > eps * tst1) ++split;
    if (split == m) split = m - 1;

    if (split > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations)
          throw SolverError("eigen_symmetric_tridiagonal: no convergence for eigenvalue " +
                            std::to_string(l));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < m; ++i) d[i] -= h;
        shift += h;

        p = d[split];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = split; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (want_vectors) {
            for (std::size_t k = 0; k < m; ++k) {
              const double vk1 = v(k, ii + 1);
              v(k, ii + 1) = s * v(k, ii) + c * vk1;
              v(k, ii) = c * v(k, ii) - s * vk1;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift;
    e[l] = 0.0;
  }
  return sorted_descending(std::move(d), v);
}

namespace {

void require_symmetric(const Matrix& a, const char* who) {
  if (a.rows() == 0 || a.cols() != a.rows())
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
  if (a.asymmetry() > kJacobiTol * std::max(a.frobenius_norm(), 1.0))
    throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
}

}  // namespace

EigenSystem eigen_dense_symmetric(const Matrix& input, bool want_vectors) {
  require_symmetric(input, "eigen_dense_symmetric");
  const std::size_t m = input.rows();
  const double norm = input.frobenius_norm();

  Matrix a = input;
  Matrix v = want_vectors ? Matrix::identity(m) : Matrix();
  const double target = kJacobiTol * norm;
  const double negligible = 1e-18 * norm;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (double off = off_norm(); off > target; off = off_norm()) {
    if (++sweep > kMaxJacobiSweeps)
      throw SolverError("eigen_dense_symmetric: no convergence after " +
                        std::to_string(kMaxJacobiSweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        // Elements this small cannot keep off() above the target.
        if (std::abs(apq) < negligible) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        double* row_p = a.row(p).data();
        double* row_q = a.row(q).data();
        for (std::size_t k = 0; k < m; ++k) {
          if (k == p || k == q) continue;
          const double akp = row_p[k];
          const double akq = row_q[k];
          row_p[k] = c * akp - s * akq;
          row_q[k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = row_p[k];
          a(k, q) = row_q[k];
        }
        if (want_vectors) {
          for (std::size_t k = 0; k < m; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = a(i, i);
  return sorted_descending(std::move(values), v);
}

SymTridiagonal householder_tridiagonalize(const Matrix& input) {
  require_symmetric(input, "householder_tridiagonalize");
  const std::size_t m = input.rows();
  Matrix a = input;
  SymTridiagonal t;
  t.diag.resize(m);
  t.offdiag.resize(m - 1);
  std::vector<double> u(m), p(m), w(m);

  for (std::size_t k = 0; k + 2 < m; ++k) {
    // Reflect a(k+1:, k) onto a multiple of e_{k+1}.
    const std::size_t lo = k + 1;
    double scale = 0.0;
    for (std::size_t i = lo; i < m; ++i) scale = std::max(scale, std::abs(a(i, k)));
    t.diag[k] = a(k, k);
    if (scale == 0.0) {
      t.offdiag[k] = 0.0;
      continue;
    }
    double norm2 = 0.0;
    for (std::size_t i = lo; i < m; ++i) {
      u[i] = a(i, k) / scale;
      norm2 += u[i] * u[i];
    }
    const double alpha = -std::copysign(std::sqrt(norm2), u[lo]);
    t.offdiag[k] = alpha * scale;
    u[lo] -= alpha;
    const double utu = norm2 - 2.0 * alpha * (u[lo] + alpha) + alpha * alpha;
    const double beta = 2.0 / utu;

    // A <- H A H with H = I - beta u u^T, applied as a rank-2 update.
    double upsum = 0.0;
    for (std::size_t i = lo; i < m; ++i) {
      const double* row = a.row(i).data();
      double s = 0.0;
      for (std::size_t j = lo; j < m; ++j) s += row[j] * u[j];
      p[i] = beta * s;
      upsum += u[i] * p[i];
    }
    const double half = 0.5 * beta * upsum;
    for (std::size_t i = lo; i < m; ++i) w[i] = p[i] - half * u[i];
    for (std::size_t i = lo; i < m; ++i) {
      double* row = a.row(i).data();
      const double ui = u[i];
      const double wi = w[i];
      for (std::size_t j = lo; j < m; ++j) row[j] -= ui * w[j] + wi * u[j];
    }
  }
  if (m >= 2) {
    t.diag[m - 2] = a(m - 2, m - 2);
    t.offdiag[m - 2] = a(m - 1, m - 2);
  }
  t.diag[m - 1] = a(m - 1, m - 1);
  return t;
}

std::vector<double> dense_symmetric_eigenvalues(const Matrix& a, DenseMethod method) {
  if (method == DenseMethod::jacobi) return eigen_dense_symmetric(a, false).values;
  return eigen_symmetric_tridiagonal(householder_tridiagonalize(a), false).values;
}

}  // namespace glauber

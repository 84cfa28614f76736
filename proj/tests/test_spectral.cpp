#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "glauber/eigensolvers.hpp"
#include "glauber/mag_chain.hpp"
#include "glauber/spectral.hpp"

using namespace glauber;

namespace {

// lambda_2 of the nonsymmetric reduced matrix by power iteration on the
// complement of the constants (pi-orthogonal projection each step).
double power_lambda2(const ModelParams& p, int iterations) {
  const auto chain = build_reduced_chain(p);
  const auto pi = reduced_stationary(p);
  std::vector<double> f(p.n + 1);
  for (int k = 0; k <= p.n; ++k) f[k] = k - 0.37 * p.n;
  double rq = 0.0;
  for (int it = 0; it < iterations; ++it) {
    double mean = 0.0;
    for (int k = 0; k <= p.n; ++k) mean += pi[k] * f[k];
    for (double& v : f) v -= mean;
    const auto g = chain.apply(f);
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= p.n; ++k) {
      num += pi[k] * f[k] * g[k];
      den += pi[k] * f[k] * f[k];
    }
    rq = num / den;
    const double s = std::sqrt(den);
    for (int k = 0; k <= p.n; ++k) f[k] = g[k] / s;
  }
  return rq;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("symmetrize") {
  const ModelParams p{2, 0.0, 0.0};
  const auto t = symmetrize(build_reduced_chain(p), reduced_stationary(p));
  REQUIRE(t.offdiag.size() == 2);
  CHECK(t.offdiag[0] == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-15));
  CHECK(t.offdiag[1] == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-15));
  CHECK_THROWS(symmetrize(build_reduced_chain(p), reduced_stationary({3, 0.0, 0.0})));

  for (int n = 1; n <= 10; ++n)
    for (double J : {0.0, 0.2, 0.45})
      for (double H : {0.0, 0.1}) {
        const ModelParams q{n, J, H};
        const auto chain = build_reduced_chain(q);
        const auto sym = symmetrize(chain, reduced_stationary(q));
        for (double o : sym.offdiag) CHECK(o > 0.0);
        const auto ql = eigen_symmetric_tridiagonal(sym, false).values;
        const auto jac = eigen_dense_symmetric(sym.to_dense(), false).values;
        for (std::size_t i = 0; i < ql.size(); ++i) CHECK(std::abs(ql[i] - jac[i]) < 1e-12);
      }
}

TEST_CASE("closed form at zero coupling") {
  for (int n = 1; n <= 40; ++n) {
    const auto r = second_eigenpair({n, 0.0, 0.0});
    CHECK(std::abs(r.gap - 1.0 / n) < 1e-12);
    CHECK(std::abs(r.lambda2 - (1.0 - 1.0 / n)) < 1e-12);
    CHECK(std::abs(r.t_rel - n) < 1e-10 * n);
  }
  for (double J : {0.0, 0.5, 3.0}) {
    const auto r = second_eigenpair({1, J, 0.0});
    CHECK(std::abs(r.lambda2) < 1e-15);
    CHECK(r.t_rel == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::isinf(r.separation));
  }
}

TEST_CASE("reduced and full chains share lambda_2") {
  const ModelParams p{8, 0.1, 0.0};
  const auto full = full_chain_spectrum(p);
  CHECK(std::abs(full[1] - second_eigenpair(p).lambda2) < 1e-10);
}

TEST_CASE("reduced spectrum is contained in the full spectrum") {
  for (int n = 2; n <= 8; n += 2)
    for (double H : {0.0, 0.2}) {
      const ModelParams p{n, 0.25, H};
      const auto full = full_chain_spectrum(p);
      const auto red = second_eigenpair(p).eigenvalues;
      for (double ev : red) {
        double best = INFINITY;
        for (double f : full) best = std::min(best, std::abs(f - ev));
        CHECK(best < 1e-10);
      }
      CHECK(std::abs(full[1] - red[1]) < 1e-10);
    }
}

TEST_CASE("spectral result invariants") {
  for (int n = 1; n <= 25; n += 2)
    for (double J : {0.0, 0.1, 0.4, 1.0})
      for (double H : {0.0, 0.2, -0.3}) {
        const ModelParams p{n, J, H};
        const auto r = second_eigenpair(p);
        REQUIRE(r.eigenvalues.size() == std::size_t(n + 1));
        CHECK(std::abs(r.eigenvalues[0] - 1.0) < 1e-10);
        CHECK(std::is_sorted(r.eigenvalues.rbegin(), r.eigenvalues.rend()));
        for (double ev : r.eigenvalues) {
          CHECK(ev <= 1.0 + 1e-12);
          CHECK(ev >= -1.0 - 1e-12);
        }
        double norm = 0.0;
        for (int k = 0; k <= n; ++k) norm += r.stationary[k] * r.second_vector[k] * r.second_vector[k];
        CHECK(std::abs(norm - 1.0) < 1e-10);
        CHECK(r.second_vector[n] > r.second_vector[0]);
        CHECK(r.t_rel == doctest::Approx(1.0 / r.gap).epsilon(1e-15));
      }
}

TEST_CASE("power iteration cross-check of lambda_2") {
  for (int n : {3, 6, 9})
    for (double H : {0.0, 0.15}) {
      const ModelParams p{n, 0.15, H};
      CHECK(std::abs(power_lambda2(p, 4000) - second_eigenpair(p).lambda2) < 1e-8);
    }
}

TEST_CASE("high-precision reference values") {
  // tests/oracles/reduced_chain_oracle.py
  struct Ref {
    int n;
    double J, H, gap, f0, fn, min_inc;
  };
  const Ref refs[] = {
      {5, 0.2, 0.0, 0.063264369810815271, -1.4266840872020046, 1.4266840872020046, 0.53731040606980751},
      {7, 0.15, 0.0, 0.03476827676674599, -1.4732854884447174, 1.4732854884447174, 0.3611083050706117},
      {10, 0.5, 0.1, 1.3218774874423605e-9, -2.7176016102365383, 0.36797154302538628, 4.8145816068642629e-6},
      {12, 0.6, 0.0, 4.5517238289679703e-17, -1.0000000000000013, 1.0000000000000013, 2.4595965129283805e-11},
      {8, 0.6, 0.3, 4.3292451913295892e-7, -11.010367438336499, 0.09082470336765673, 0.00031865453336639151},
      {20, 0.3, 0.0, 3.2076947282283491e-22, -1.0, 1.0, 2.8652002883545506e-17},
  };
  for (const Ref& ref : refs) {
    CAPTURE(ref.n);
    CAPTURE(ref.J);
    const auto r = second_eigenpair({ref.n, ref.J, ref.H});
    CHECK(r.gap == doctest::Approx(ref.gap).epsilon(1e-9));
    CHECK(r.second_vector.front() == doctest::Approx(ref.f0).epsilon(1e-9));
    CHECK(r.second_vector.back() == doctest::Approx(ref.fn).epsilon(1e-9));
    CHECK(*std::min_element(r.increments.begin(), r.increments.end()) ==
          doctest::Approx(ref.min_inc).epsilon(1e-7));
  }
  const double t_rel_16[] = {26.202378587833029, 131.35653379159748, 403.378377802345,
                             1030.5997633191673, 2401.0197462577454};
  for (int i = 0; i < 5; ++i) {
    const int n = 4 * (i + 1);
    CHECK(second_eigenpair({n, 1.6 / n, 0.0}).t_rel == doctest::Approx(t_rel_16[i]).epsilon(1e-10));
  }
}

TEST_CASE("eigenvector structure at H = 0") {
  const auto r = second_eigenpair({7, 0.15, 0.0});
  const auto rep = eigenvector_structure_report(r, 0.0);
  CHECK(rep.increasing);
  CHECK(rep.strictly);
  REQUIRE(rep.antisymmetric_at_H0);
  CHECK(*rep.antisymmetric_at_H0);
  REQUIRE(rep.sign_split);
  CHECK(*rep.sign_split);
  CHECK(rep.reliable);

  for (int n = 2; n <= 20; n += 2)
    for (double J : {0.0, 0.1, 0.3, 0.6}) {
      const auto e = second_eigenpair({n, J, 0.0});
      const auto s = eigenvector_structure_report(e, 0.0);
      CHECK(std::abs(e.second_vector[n / 2]) < 1e-9);
      CHECK(s.middle_value < 1e-9);
      CHECK(s.strictly);
      CHECK(s.min_increment > 0.0);
      CHECK(*s.antisymmetric_at_H0);
    }
}

TEST_CASE("structure report on hand-made vectors") {
  const auto flat = eigenvector_structure_report(std::vector<double>{-1, -0.5, -0.5, 0.5, 0.5, 1}, 0.0);
  CHECK(flat.increasing);
  CHECK_FALSE(flat.strictly);
  const auto bumpy = eigenvector_structure_report(std::vector<double>{-1, 0.2, 0.1, 1}, 0.0);
  CHECK_FALSE(bumpy.increasing);
  const auto lopsided = eigenvector_structure_report(std::vector<double>{-2, 0.5, 1}, 0.0);
  CHECK_FALSE(*lopsided.antisymmetric_at_H0);
  const auto field = eigenvector_structure_report(std::vector<double>{-2, 0.5, 1}, 0.3);
  CHECK_FALSE(field.antisymmetric_at_H0.has_value());
  CHECK_FALSE(field.sign_split.has_value());
  CHECK_THROWS(eigenvector_structure_report(std::vector<double>{}, 0.0));
}

TEST_CASE("lambda_2 separation is measured") {
  const auto r = second_eigenpair({10, 0.2, 0.0});
  CHECK(r.simple());
  CHECK(r.separation == doctest::Approx(r.eigenvalues[1] - r.eigenvalues[2]).epsilon(1e-10));
}

}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "glauber/mag_chain.hpp"
#include "glauber/perturbation.hpp"
#include "glauber/spectral.hpp"

using namespace glauber;

TEST_SUITE("perturbation") {

TEST_CASE("Hellmann-Feynman basics") {
  CHECK(hellmann_feynman({6, 0.1, 0.0}) >= -1e-12);
  for (double J : {0.0, 0.3, 2.0}) {
    CHECK(hellmann_feynman({1, J, 0.0}) == 0.0);
    CHECK(finite_difference_gap({1, std::max(J, 1e-4), 0.0}) == 0.0);
  }
  const double hf = hellmann_feynman({5, 0.2, 0.0});
  const double fd = finite_difference_gap({5, 0.2, 0.0});
  CHECK(std::abs(hf - fd) <= 1e-6 * std::abs(fd));
  // tests/oracles/reduced_chain_oracle.py
  CHECK(hf == doctest::Approx(0.47349682920435198).epsilon(1e-12));
  CHECK(hellmann_feynman({7, 0.15, 0.0}) == doctest::Approx(0.45961979536066319).epsilon(1e-12));
  CHECK(hellmann_feynman({10, 0.5, 0.1}) == doctest::Approx(6.4299619790497242e-8).epsilon(1e-9));
  CHECK(hellmann_feynman({12, 0.6, 0.0}) == doctest::Approx(3.2325119288323088e-15).epsilon(1e-8));
  CHECK(hellmann_feynman({8, 0.6, 0.3}) == doctest::Approx(1.3254965600710961e-5).epsilon(1e-9));
}

TEST_CASE("finite difference") {
  const double at0 = finite_difference_gap({6, 0.0, 0.0});
  CHECK(std::isfinite(at0));
  CHECK(std::abs(at0 - hellmann_feynman({6, 0.0, 0.0})) < 1e-8);
  CHECK_THROWS_AS((finite_difference_gap({4, 0.1, 0.0}, 1e-9)), std::invalid_argument);
  CHECK_THROWS_AS((finite_difference_gap({4, 0.1, 0.0}, 1e-2)), std::invalid_argument);
  const ModelParams p{7, 0.15, 0.05};
  const double a = finite_difference_gap(p, 1e-5);
  const double b = finite_difference_gap(p, 5e-6);
  CHECK(std::abs(a - b) < 1e-7);
}

TEST_CASE("HF against FD over a grid") {
  for (int n = 1; n <= 10; ++n)
    for (int j = 0; j <= 8; ++j)
      for (double H : {0.0, 0.2, -0.2}) {
        const ModelParams p{n, 0.1 * j, H};
        if (!second_eigenpair(p).simple()) continue;
        const double hf = hellmann_feynman(p);
        const double fd = finite_difference_gap(p);
        CAPTURE(n);
        CAPTURE(p.J);
        CAPTURE(H);
        CHECK(std::abs(hf - fd) <= std::max(1e-8, 1e-6 * std::abs(fd)));
        if (H == 0.0) CHECK(hf >= -1e-12);
      }
}

TEST_CASE("sign structure terms") {
  CHECK_THROWS_AS((sign_structure_terms({5, 0.2, 0.1})), std::invalid_argument);
  for (int n = 2; n <= 10; ++n)
    for (int j = 0; j <= 12; ++j) {
      const ModelParams p{n, 0.05 * j, 0.0};
      const auto terms = sign_structure_terms(p);
      REQUIRE(terms.size() == std::size_t(n + 1));
      for (double t : terms) CHECK(t >= -1e-12);
      if (n % 2 == 0) CHECK(std::abs(terms[n / 2]) < 1e-12);
      const auto pi = reduced_stationary(p);
      double weighted = 0.0;
      for (int k = 0; k <= n; ++k) weighted += pi[k] * terms[k];
      CHECK(std::abs(weighted - hellmann_feynman(p)) < 1e-12);
    }
}

TEST_CASE("sweeps") {
  const auto grid = uniform_grid(0.0, 0.6, 31);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 0.6);
  CHECK(grid[1] == doctest::Approx(0.02));
  const auto r = sweep_monotonicity(8, 0.0, grid);
  CHECK(r.complete());
  CHECK(r.monotone_in_J);
  CHECK(r.max_violation == 0.0);
  REQUIRE(r.points.size() == 31);
  for (std::size_t i = 1; i < r.points.size(); ++i) CHECK(r.points[i].J > r.points[i - 1].J);
  for (const auto& pt : r.points) {
    REQUIRE(pt.sign_terms_ok);
    CHECK(*pt.sign_terms_ok);
    CHECK(pt.hf_derivative >= -1e-12);
  }

  const auto field = sweep_monotonicity(8, 0.3, grid);
  CHECK(field.complete());
  for (const auto& pt : field.points) CHECK_FALSE(pt.sign_terms_ok.has_value());
  MESSAGE("n=8, H=0.3 monotone_in_J = " << field.monotone_in_J);

  const auto one = sweep_monotonicity(1, 0.0, grid);
  CHECK(one.monotone_in_J);
  for (const auto& pt : one.points) CHECK(pt.gap == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS(sweep_monotonicity(4, 0.0, {0.2, 0.1}));
  CHECK_THROWS(sweep_monotonicity(4, 0.0, {-0.1, 0.1}));
  CHECK_THROWS(sweep_monotonicity(4, 0.0, {}));
  CHECK_THROWS(uniform_grid(0.0, 0.5, 1));
  CHECK_THROWS(uniform_grid(0.5, 0.1, 4));
}

TEST_CASE("monotonicity summary flags drops") {
  SweepReport r;
  for (double l : {0.5, 0.6, 0.59, 0.7}) {
    SweepPoint p;
    p.lambda2 = l;
    p.gap = 1.0 - l;
    r.points.push_back(p);
  }
  summarize_monotonicity(r);
  CHECK_FALSE(r.monotone_in_J);
  CHECK(r.max_violation == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("temperature view") {
  const auto grid = uniform_grid(0.02, 0.6, 30);
  const auto r = sweep_monotonicity(8, 0.0, grid);
  const auto v1 = temperature_view(r, 1.0);
  const auto v2 = temperature_view(r, 2.0);
  REQUIRE(v1.size() == grid.size());
  CHECK(nonincreasing_in_T(v1));
  for (std::size_t i = 0; i < v1.size(); ++i) {
    CHECK(v1[i].T == doctest::Approx(1.0 / r.points[v1.size() - 1 - i].J));
    CHECK(v1[i].t_rel == r.points[v1.size() - 1 - i].t_rel);
    CHECK(v2[i].t_rel == v1[i].t_rel);
    CHECK(v2[i].T == doctest::Approx(2.0 * v1[i].T));
    if (i > 0) CHECK(v1[i].T > v1[i - 1].T);
  }
  CHECK_THROWS(temperature_view(sweep_monotonicity(4, 0.0, {0.0, 0.1}), 1.0));
  CHECK_THROWS(temperature_view(r, 0.0));
  CHECK_FALSE(nonincreasing_in_T({{1.0, 5.0}, {2.0, 6.0}}));
}

}

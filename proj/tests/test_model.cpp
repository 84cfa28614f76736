#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "glauber/model.hpp"

using namespace glauber;

TEST_SUITE("ising-core") {

TEST_CASE("params validation") {
  CHECK_NOTHROW(ModelParams{1, 0.0, 0.0}.validate());
  CHECK_NOTHROW(ModelParams{5, 0.3, -2.0}.validate());
  CHECK_THROWS_AS((ModelParams{0, 0.1, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{3, -0.1, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{3, NAN, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{3, 0.1, INFINITY}.validate()), std::invalid_argument);
}

TEST_CASE("configuration index round trip") {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto s = SpinConfiguration::from_index(n, i);
      const auto spins = s.spins();
      REQUIRE(spins.size() == static_cast<std::size_t>(n));
      int plus = 0;
      for (int x = 0; x < n; ++x) {
        CHECK(spins[x] == (((i >> x) & 1u) ? 1 : -1));
        plus += spins[x] == 1;
      }
      CHECK(s.plus_count() == plus);
      CHECK(s.magnetization() == 2 * plus - n);
      CHECK(SpinConfiguration::from_spins(spins) == s);
      CHECK(SpinConfiguration::from_spins(spins).index() == i);
    }
  }
}

TEST_CASE("bit i is spin i") {
  const std::vector<int> spins{+1, -1, -1, +1};
  const auto s = SpinConfiguration::from_spins(spins);
  CHECK(s.index() == 0b1001);
  CHECK(s.flipped(1).index() == 0b1011);
  CHECK(s.flipped(0).spin(0) == -1);
  CHECK(s.flipped(2).flipped(2) == s);
  CHECK_THROWS(s.flipped(4));
  CHECK_THROWS(SpinConfiguration::from_index(3, 8));
  const std::vector<int> bad{1, 0};
  CHECK_THROWS(SpinConfiguration::from_spins(bad));
}

TEST_CASE("logistic is stable") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(800.0) == 1.0);
  CHECK(logistic(-800.0) >= 0.0);
  CHECK(std::isfinite(logistic(-800.0)));
  CHECK(logistic(-700.0) > 0.0);
  for (double a : {-30.0, -3.0, -0.5, 0.25, 2.0, 20.0})
    CHECK(logistic(a) == doctest::Approx(1.0 / (1.0 + std::exp(-a))).epsilon(1e-14));
  CHECK(logistic(3.0) + logistic(-3.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("1/(1+cosh) is stable") {
  CHECK(inv_one_plus_cosh(0.0) == 0.5);
  for (double x : {-12.0, -1.0, 0.3, 5.0, 40.0})
    CHECK(inv_one_plus_cosh(x) == doctest::Approx(1.0 / (1.0 + std::cosh(x))).epsilon(1e-13));
  CHECK(inv_one_plus_cosh(2000.0) >= 0.0);
  CHECK(inv_one_plus_cosh(-2000.0) == inv_one_plus_cosh(2000.0));
  CHECK(std::isfinite(inv_one_plus_cosh(2000.0)));
}

TEST_CASE("log binomial") {
  CHECK(log_binomial(5, 0) == doctest::Approx(0.0));
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::exp(log_binomial(30, 15)) == doctest::Approx(155117520.0).epsilon(1e-12));
}

TEST_CASE("distribution via log-sum-exp") {
  // 1000 + log 3 is itself rounded at the 1e-13 level
  const auto d = Distribution::from_log_weights({1000.0, 1000.0 + std::log(3.0)});
  CHECK(d[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(d.log_normalizer == doctest::Approx(1000.0 + std::log(4.0)).epsilon(1e-15));
  const auto tiny = Distribution::from_log_weights({-2000.0, 0.0, -5.0});
  double sum = 0.0;
  for (double p : tiny.probabilities) {
    sum += p;
    CHECK(p >= 0.0);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tiny[1] > tiny[2]);
  CHECK_THROWS(Distribution::from_log_weights({}));
}

}

#include <doctest.h>

#include <cmath>
#include <random>

#include "lzineq/errors.hpp"
#include "lzineq/gauss.hpp"
#include "oracles.hpp"

using namespace lzineq::gauss;

TEST_CASE("normal density") {
  CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(std::abs(normal_pdf(1.0) - 0.24197072451914337) < 1e-16);
  for (double x : {0.3, 1.7, 5.0, 12.0}) CHECK(normal_pdf(x) == normal_pdf(-x));
  CHECK(normal_pdf(37.0) > 0.0);
  CHECK_THROWS_AS(normal_pdf(NAN), lzineq::domain_error);
  CHECK_THROWS_AS(normal_pdf(INFINITY), lzineq::domain_error);
}

TEST_CASE("normal distribution function") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(40.0) - 1.0) <= 1e-15);
  CHECK(std::abs(normal_cdf(1.2815515655446004) - 0.9) <= 1e-12);
  double prev = 0.0;
  for (double x = -38.0; x <= 38.0; x += 0.01) {
    const double F = normal_cdf(x);
    CHECK(F >= prev);
    prev = F;
    CHECK(std::abs(normal_cdf(-x) - (1.0 - F)) <= 1e-15);
  }
  // Relative accuracy of the upper tail far out.
  for (double x : {5.0, 10.0, 20.0, 37.0}) {
    const double ref = static_cast<double>(0.5L * std::erfc(x / std::sqrt(2.0L)));
    CHECK(normal_sf(x) == doctest::Approx(ref).epsilon(1e-13));
  }
  CHECK_THROWS_AS(normal_cdf(NAN), lzineq::domain_error);
}

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(std::abs(normal_quantile(normal_cdf(1.7)) - 1.7) <= 1e-10);
  CHECK(std::abs(normal_quantile(0.1) - -1.2815515655446004) <= 1e-14);
  CHECK(std::abs(normal_quantile(0.1) - oracle::quantile(0.1)) <= 1e-14);
  CHECK_THROWS_AS(normal_quantile(0.0), lzineq::infinite_quantile);
  CHECK_THROWS_AS(normal_quantile(1.0), lzineq::infinite_quantile);
  CHECK_THROWS_AS(normal_quantile(-0.1), lzineq::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.5), lzineq::domain_error);
  CHECK_THROWS_AS(normal_quantile(NAN), lzineq::domain_error);
}

TEST_CASE("quantile round trip on a log-spaced grid") {
  double worst = 0.0;
  double prev = -INFINITY;
  for (int k = 0; k < 10000; ++k) {
    const double p = std::pow(10.0, -300.0 + 300.0 * k / 9999.0) * 0.5;
    const double x = normal_quantile(p);
    CHECK(x > prev);
    prev = x;
    worst = std::max(worst, std::abs(normal_cdf(x) - p));
    // Upper half, down to 1 - 1e-16.
    const double q = 1.0 - std::max(p, 1e-16);
    worst = std::max(worst, std::abs(normal_cdf(normal_quantile(q)) - q));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("quantile agrees with the bisection oracle") {
  for (double p : {1e-300, 1e-100, 1e-20, 1e-5, 0.02, 0.0243, 0.3, 0.5, 0.7, 0.99, 1 - 1e-10}) {
    const double ref = p < 0.5 ? oracle::quantile(p) : -oracle::quantile(1.0 - p);
    CHECK(normal_quantile(p) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("isoperimetric function") {
  CHECK(isoperimetric(0.5) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(isoperimetric(0.0) == 0.0);
  CHECK(isoperimetric(1.0) == 0.0);
  CHECK(isoperimetric(1e-301) == 0.0);
  CHECK(std::abs(isoperimetric(0.1) - 0.17549833193248685) <= 1e-15);
  for (int k = 0; k <= 1000; ++k) {
    const double p = k / 1000.0;
    CHECK(std::abs(isoperimetric(p) - isoperimetric(1.0 - p)) <= 1e-14);
  }
  CHECK(std::exp(log_isoperimetric(0.1)) == doctest::Approx(isoperimetric(0.1)).epsilon(1e-14));
  CHECK(log_isoperimetric(0.0) == -INFINITY);
  CHECK_THROWS_AS(isoperimetric(1.1), lzineq::domain_error);
}

TEST_CASE("small-eps expansion residual") {
  // Values from a 50-digit evaluation of the same expression.
  CHECK(iso_expansion_residual(1e-4) == doctest::Approx(-0.9744179856377684).epsilon(1e-9));
  CHECK(iso_expansion_residual(1e-6) == doctest::Approx(-0.960532919801833).epsilon(1e-9));
  CHECK(iso_expansion_residual(1e-8) == doctest::Approx(-0.953046571948267).epsilon(1e-9));
  const double k4 = std::abs(iso_expansion_residual(1e-4));
  const double k6 = std::abs(iso_expansion_residual(1e-6));
  const double k8 = std::abs(iso_expansion_residual(1e-8));
  CHECK(k6 < k4);
  CHECK(k8 < k6);
  // The residual settles at -log sqrt(2 pi), not at 0.
  CHECK(iso_expansion_residual(1e-200) == doctest::Approx(-0.922985316413).epsilon(1e-8));
  CHECK(std::abs(iso_expansion_residual(1e-200) - isoperimetric_expansion_limit()) < 5e-3);
  CHECK_THROWS_AS(iso_expansion_residual(0.0), lzineq::domain_error);
  CHECK_THROWS_AS(iso_expansion_residual(0.5), lzineq::domain_error);
}

TEST_CASE("shift semigroups") {
  for (double p : {0.01, 0.37, 0.9}) {
    CHECK(shift_semigroup(p, 0.0, Shift::up) == doctest::Approx(p).epsilon(1e-15));
    CHECK(shift_semigroup(p, 0.0, Shift::down) == doctest::Approx(p).epsilon(1e-15));
  }
  const double p = 0.37;
  CHECK(std::abs(shift_semigroup(shift_semigroup(p, 0.4, Shift::up), 0.3, Shift::up) -
                 shift_semigroup(p, 0.7, Shift::up)) <= 1e-12);
  CHECK(std::abs((shift_semigroup(0.3, 1e-6, Shift::up) - 0.3) / 1e-6 - isoperimetric(0.3)) <= 1e-5);
  CHECK(shift_semigroup(0.0, 1.0, Shift::up) == 0.0);
  CHECK(shift_semigroup(1.0, 1.0, Shift::down) == 1.0);
  CHECK_THROWS_AS(shift_semigroup(0.5, -1.0, Shift::up), lzineq::domain_error);
  CHECK_THROWS_AS(shift_semigroup(1.5, 1.0, Shift::up), lzineq::domain_error);
}

TEST_CASE("semigroup properties on random inputs") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double p1 = U(gen), p2 = U(gen), lam = U(gen), r = 2.0 * U(gen);
    const double mix = lam * p1 + (1 - lam) * p2;
    CHECK(shift_semigroup(mix, r, Shift::up) >=
          lam * shift_semigroup(p1, r, Shift::up) + (1 - lam) * shift_semigroup(p2, r, Shift::up) - 1e-12);
    CHECK(shift_semigroup(mix, r, Shift::down) <=
          lam * shift_semigroup(p1, r, Shift::down) + (1 - lam) * shift_semigroup(p2, r, Shift::down) + 1e-12);
    CHECK(std::abs(shift_semigroup(p1, r, Shift::down) - (1.0 - shift_semigroup(1.0 - p1, r, Shift::up))) <= 1e-13);
  }
}

TEST_CASE("generator quotient converges") {
  double prev = INFINITY;
  for (double r : {1e-3, 1e-5, 1e-7}) {
    double worst = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double p = k / 100.0;
      worst = std::max(worst, std::abs((shift_semigroup(p, r, Shift::up) - p) / r - isoperimetric(p)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
}

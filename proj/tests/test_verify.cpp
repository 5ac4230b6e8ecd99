#include <doctest.h>

#include <cmath>
#include <vector>

#include "lzineq/errors.hpp"
#include "lzineq/gauss.hpp"
#include "lzineq/measure.hpp"
#include "lzineq/verify.hpp"
#include "oracles.hpp"

using namespace lzineq;
using namespace lzineq::verify;

TEST_CASE("bump values and derivatives") {
  const TestBump b{0.5, 2.0, 0.3};
  CHECK(b.value(0.5) == doctest::Approx(0.3));
  CHECK(b.value(2.5) == 0.0);
  CHECK(b.value(-1.6) == 0.0);
  for (double x : {-1.2, 0.0, 0.9, 2.2}) {
    const double fd = (b.value(x + 1e-6) - b.value(x - 1e-6)) / 2e-6;
    CHECK(b.derivative(x) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(oracle::simpson([&](double x) { return b.derivative(x); }, -1.5, 2.5, 4000) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bump family is seeded and stays in the window") {
  const auto a = bump_family(3, 50, -4.0, 4.0);
  const auto b = bump_family(3, 50, -4.0, 4.0);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center == b[i].center);
    CHECK(a[i].center - a[i].width >= -4.0);
    CHECK(a[i].center + a[i].width <= 4.0);
    CHECK(a[i].width >= 0.2);
    CHECK(a[i].width <= 3.0);
    CHECK(a[i].height >= 0.05);
    CHECK(a[i].height <= 1.0);
  }
  CHECK(bump_family(4, 50, -4.0, 4.0)[0].center != a[0].center);
  CHECK_THROWS_AS(bump_family(1, 3, 1.0, 1.0), domain_error);
}

TEST_CASE("gaussian inequalities hold with c = 1 and fail with c small") {
  const auto g = builtin::gaussian();
  const std::vector<double> K(g.size(), 1.0);
  const auto bumps = bump_family(1, 30, -6.0, 6.0);
  const auto tests = sample(bumps, g);
  for (const auto& r : {functional_shift_check(g, K, 1.0, tests), iso_form_check(g, K, 1.0, tests),
                        inverse_lsi_check(g, K, 1.0, tests), lsi_check(g, K, 1.0, tests)}) {
    CAPTURE(r.name);
    CHECK_FALSE(r.violated);
    CHECK_FALSE(r.inconclusive);
    CHECK(r.worst_margin >= -1e-6);
    CHECK(r.trials == 30);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->margin == r.worst_margin);
  }
  const auto bad = functional_shift_check(g, K, 0.01, tests, 42);
  CHECK(bad.violated);
  CHECK(bad.seed == 42);
  CHECK(bad.grid.n == g.size());
  CHECK(lsi_check(g, K, 3.0, tests).violated);
}

TEST_CASE("LSI is tight on exponentials") {
  // f = exp(x/2) attains equality for the gaussian LSI with constant 1.
  const auto g = builtin::gaussian();
  GridFunction f{"exp", std::vector<double>(g.size()), std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.f[i] = std::exp(g.x(i) / 2);
    f.df[i] = f.f[i] / 2;
  }
  const std::vector<double> K(g.size(), 1.0);
  const std::vector<GridFunction> tests = {f};
  const auto r = lsi_check(g, K, 1.0, tests);
  CHECK(std::abs(r.worst_margin) < 1e-9);
}

TEST_CASE("constant functions give zero margins where the left side vanishes") {
  const auto g = builtin::gaussian();
  const std::vector<double> K(g.size(), 1.0);
  const std::vector<GridFunction> tests = {constant_function(0.4, g)};
  CHECK(std::abs(lsi_check(g, K, 1.0, tests).worst_margin) < 1e-12);
  CHECK(std::abs(inverse_lsi_check(g, K, 1.0, tests).worst_margin) < 1e-12);
}

TEST_CASE("interval family covers half-lines and bounded sets") {
  const auto s = interval_family(2, 40, -2.0, 2.0);
  REQUIRE(s.size() == 40);
  CHECK(std::isinf(s[0].lo));
  CHECK(std::isinf(s[1].hi));
  CHECK(std::isfinite(s[2].lo));
  CHECK(std::isfinite(s[2].hi));
  for (const auto& a : s) CHECK(a.lo <= a.hi);
}

TEST_CASE("explicit shifts of half-lines are equalities for the gaussian") {
  const auto g = builtin::gaussian();
  const std::vector<Interval> sets = {{-INFINITY, 0.3}, {-0.2, INFINITY}};
  const std::vector<double> hs = {0.5};
  const auto r = explicit_shift_check(g, 1.0, hs, sets);
  CHECK(std::abs(r.worst_margin) < 1e-10);
  CHECK(explicit_shift_check(g, 0.5, hs, sets).violated);
  const std::vector<double> far = {3.0};
  const std::vector<Interval> edge = {{8.0, 9.0}};
  CHECK_THROWS_AS(explicit_shift_check(g, 1.0, far, edge), window_overflow);
}

TEST_CASE("entropy limit approaches its target") {
  const auto g = builtin::gaussian();
  const auto f = sample(TestBump{0.3, 1.5, 1.0}, g);
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
  const auto r = entropy_limit_check(g, f.f, eps);
  CHECK(r.target == doctest::Approx(0.22114667).epsilon(1e-6));
  CHECK(r.monotone);
  CHECK(r.quotient.back() / r.target == doctest::Approx(0.9586).epsilon(2e-3));
  const std::vector<double> huge = {2.0};
  CHECK_THROWS_AS(entropy_limit_check(g, f.f, huge), domain_error);
}

TEST_CASE("oscillating drift density") {
  const auto d = example1_density();
  CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mean(d)) < 1e-10);
  CHECK_THROWS_AS(example1_density(0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(example1_density(2.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("puncture law") {
  CHECK(puncture_constant(0.0) == 1.0);
  for (double R : {0.25, 1.0, 3.0}) {
    CAPTURE(R);
    const double C = puncture_constant(R);
    // Direct integral of the unnormalized law.
    const double mid = oracle::simpson([&](double x) { return std::exp(-R * x); }, 0.0, 2 * R, 20000) *
                       gauss::kInvSqrt2Pi;
    CHECK(C * (0.5 + mid + gauss::normal_sf(2 * R)) == doctest::Approx(1.0).epsilon(1e-12));
    const auto p = puncture_measure(R);
    CHECK(std::abs(p.mass() - 1.0) < 1e-8);
    REQUIRE(p.breakpoints().size() == 2);
    CHECK(std::abs(p.x(p.breakpoints()[0])) < 1e-12);
    CHECK(p.x(p.breakpoints()[1]) == doctest::Approx(2 * R).epsilon(1e-12));
  }
}

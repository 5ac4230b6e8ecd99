#include <doctest.h>

#include <cmath>
#include <vector>

#include "lzineq/grid_calculus.hpp"

using namespace lzineq;

namespace {

std::vector<double> tabulate(double a, double h, std::size_t n, double (*f)(double)) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(a + static_cast<double>(i) * h);
  return v;
}

}  // namespace

TEST_CASE("derivative is exact on quadratics, including the ends") {
  const double h = 0.1;
  const auto f = tabulate(-1.0, h, 21, [](double x) { return 3 * x * x - 2 * x + 1; });
  const auto d = derivative(f, h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(d[i] == doctest::Approx(6 * (-1.0 + i * h) - 2).epsilon(1e-12));
  }
}

TEST_CASE("breakpoints average one-sided derivatives") {
  const double h = 0.01;
  const auto f = tabulate(-1.0, h, 201, [](double x) { return std::abs(x); });
  const std::vector<std::size_t> bp = {100};
  const auto one = one_sided_derivatives(f, h, bp);
  CHECK(one.left[100] == doctest::Approx(-1.0));
  CHECK(one.right[100] == doctest::Approx(1.0));
  CHECK(std::abs(derivative(f, h, bp)[100]) < 1e-12);
  CHECK(derivative(f, h, bp)[99] == doctest::Approx(-1.0));
  CHECK(derivative(f, h, bp)[101] == doctest::Approx(1.0));
}

TEST_CASE("corrected trapezoid converges at fourth order") {
  const auto err = [](std::size_t n) {
    const double h = 2.0 / static_cast<double>(n - 1);
    const auto f = tabulate(0.0, h, n, [](double x) { return std::exp(x); });
    return std::abs(integrate(f, h) - (std::exp(2.0) - 1.0));
  };
  const double e1 = err(101), e2 = err(201);
  CHECK(e1 < 1e-7);
  CHECK(e1 / e2 > 12.0);
}

TEST_CASE("kinked integrands are split at breakpoints") {
  const double h = 0.01;
  const auto f = tabulate(-1.0, h, 201, [](double x) { return std::exp(-std::abs(x)); });
  const double exact = 2.0 * (1.0 - std::exp(-1.0));
  const std::vector<std::size_t> bp = {100};
  CHECK(std::abs(integrate(f, h, bp) - exact) < 1e-9);
  CHECK(std::abs(integrate(f, h) - exact) > 1e-6);
}

TEST_CASE("cumulative tables are consistent") {
  const double h = 0.05;
  const auto f = tabulate(-2.0, h, 81, [](double x) { return std::exp(-x * x); });
  const auto lo = cumulative_from_left(f, h);
  const auto up = cumulative_from_right(f, h);
  const double total = integrate(f, h);
  CHECK(lo.front() == 0.0);
  CHECK(up.back() == 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(lo[i] + up[i] == doctest::Approx(total).epsilon(1e-14));
  CHECK_THROWS(derivative(std::vector<double>{1.0, 2.0}, h));
}

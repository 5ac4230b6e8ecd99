#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "lzineq/gauss.hpp"
#include "lzineq/measure.hpp"

namespace lzineq::builtin {
namespace {

using LogDensity = std::function<double(double)>;

GridDensity1D tabulate(double x_min, double x_max, std::size_t n, const LogDensity& log_p,
                       std::vector<std::size_t> breakpoints = {}) {
  if (n < 3) throw std::invalid_argument("built-in measure: need at least 3 nodes");
  const double h = (x_max - x_min) / static_cast<double>(n - 1);
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) logs[i] = log_p(x_min + static_cast<double>(i) * h);
  return GridDensity1D::from_log_values(x_min, x_max, std::move(logs), std::move(breakpoints));
}

double log_gaussian(double x) { return -0.5 * x * x - gauss::kLogSqrt2Pi; }
double log_laplace(double x) { return -std::abs(x) - std::log(2.0); }

struct Named {
  LogDensity log_p;
  double x_min;
  double x_max;
  std::size_t n;
  // Kink location, if the law has one.
  double kink = std::numeric_limits<double>::quiet_NaN();
};

Named lookup(const std::string& name) {
  if (name == "gaussian") return {log_gaussian, -10.0, 10.0, 20001};
  if (name == "uniform") return {[](double x) { return x < 0.0 || x > 1.0 ? -INFINITY : 0.0; }, 0.0, 1.0, 1001};
  if (name == "exp1") return {[](double x) { return -x; }, 0.0, 40.0, 40001};
  if (name == "laplace") return {log_laplace, -25.0, 25.0, 50001, 0.0};
  throw std::invalid_argument("unknown built-in measure '" + name + "'");
}

}  // namespace

GridDensity1D gaussian() { return by_name("gaussian"); }

GridDensity1D gaussian_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("gaussian_c: c must be positive");
  const double log_c = std::log(c);
  return tabulate(-20.0 * c, 20.0 * c, 40001,
                  [c, log_c](double x) { return log_gaussian(x / c) - log_c; });
}

GridDensity1D uniform() { return by_name("uniform"); }
GridDensity1D exp1() { return by_name("exp1"); }
GridDensity1D laplace() { return by_name("laplace"); }

GridDensity1D by_name(const std::string& name) {
  const Named m = lookup(name);
  return by_name(name, m.x_min, m.x_max, m.n);
}

GridDensity1D by_name(const std::string& name, double x_min, double x_max, std::size_t n) {
  const Named m = lookup(name);
  if (!(x_max > x_min) || n < 3) throw std::invalid_argument("built-in measure: bad grid");
  std::vector<std::size_t> bps;
  if (std::isfinite(m.kink) && m.kink > x_min && m.kink < x_max) {
    const double t = (m.kink - x_min) / (x_max - x_min) * static_cast<double>(n - 1);
    const double r = std::round(t);
    if (std::abs(t - r) < 1e-9) bps.push_back(static_cast<std::size_t>(r));
  }
  return tabulate(x_min, x_max, n, m.log_p, std::move(bps));
}

}  // namespace lzineq::builtin

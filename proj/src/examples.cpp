#include <cmath>
#include <stdexcept>

#include "lzineq/gauss.hpp"
#include "lzineq/verify.hpp"

namespace lzineq::verify {

GridDensity1D example1_density(double a, double b, double R, double amplitude) {
  if (!(b > 0.0) || !(a >= b) || !std::isfinite(a)) {
    throw std::invalid_argument("example1_density: need 0 < b <= a");
  }
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("example1_density: need R > 0");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("example1_density: amplitude");
  const double k = 0.5 * (a + b);
  // Tail mass beyond the window is below exp(-80).
  const double half_width = R + std::sqrt(160.0 / k);
  const double h0 = 1e-3;
  const std::size_t half = static_cast<std::size_t>(std::ceil(half_width / h0));
  const std::size_t n = 2 * half + 1;
  const double L = static_cast<double>(half) * h0;
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -L + static_cast<double>(i) * h0;
    double q = 0.5 * k * x * x;
    if (std::abs(x) < R) {
      const double s = 1.0 - (x / R) * (x / R);
      q += amplitude * s * s * s * std::cos(x * x * x);
    }
    logs[i] = -q;
  }
  return normalize(GridDensity1D::from_log_values(-L, L, std::move(logs)));
}

double puncture_constant(double R) {
  if (!(R >= 0.0) || !std::isfinite(R)) throw std::invalid_argument("puncture_constant: R >= 0");
  if (R == 0.0) return 1.0;
  const double slab = -std::expm1(-2.0 * R * R) / (R * std::sqrt(2.0 * M_PI));
  return 1.0 / (0.5 + slab + gauss::normal_sf(2.0 * R));
}

GridDensity1D puncture_measure(double R) {
  const double C = puncture_constant(R);
  const double log_C = std::log(C);
  if (R == 0.0) {
    std::vector<double> logs(20001);
    for (std::size_t i = 0; i < logs.size(); ++i) {
      const double x = -10.0 + static_cast<double>(i) * 1e-3;
      logs[i] = -0.5 * x * x - gauss::kLogSqrt2Pi;
    }
    return GridDensity1D::from_log_values(-10.0, 10.0, std::move(logs));
  }
  // Even node counts keep both breakpoints on the half-resolution grid.
  const std::size_t mid = 2 * static_cast<std::size_t>(std::ceil(R / 1e-3));
  const double h = 2.0 * R / static_cast<double>(mid);
  const std::size_t side = 2 * static_cast<std::size_t>(std::ceil(5.0 / h));
  const std::size_t n = side + mid + side + 1;
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) - static_cast<double>(side)) * h;
    const bool slab = i >= side && i <= side + mid;
    logs[i] = log_C - gauss::kLogSqrt2Pi + (slab ? -R * x : -0.5 * x * x);
  }
  const double x_min = -static_cast<double>(side) * h;
  const double x_max = static_cast<double>(side + mid) * h;
  return GridDensity1D::from_log_values(x_min, x_max, std::move(logs), {side, side + mid});
}

}  // namespace lzineq::verify

#include "lzineq/gauss.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "lzineq/errors.hpp"

namespace lzineq::gauss {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872421;

// Acklam's rational approximation, relative error below 1.2e-9.
constexpr std::array<double, 6> kCentralNum = {
    -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
    1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kCentralDen = {
    -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
    6.680131188771972e+01,  -1.328068155288572e+01};
constexpr std::array<double, 6> kTailNum = {
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
    -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kTailDen = {
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
    3.754408661907416e+00};
constexpr double kTailSplit = 0.02425;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw domain_error(std::string(what) + ": non-finite argument");
  }
}

// Quantile of q in (0, 1/2]; the result is <= 0.
double lower_quantile(double q) {
  double x;
  if (q < kTailSplit) {
    const double t = std::sqrt(-2.0 * std::log(q));
    x = (((((kTailNum[0] * t + kTailNum[1]) * t + kTailNum[2]) * t + kTailNum[3]) * t +
          kTailNum[4]) * t + kTailNum[5]) /
        ((((kTailDen[0] * t + kTailDen[1]) * t + kTailDen[2]) * t + kTailDen[3]) * t + 1.0);
  } else {
    const double c = q - 0.5;
    const double r = c * c;
    x = (((((kCentralNum[0] * r + kCentralNum[1]) * r + kCentralNum[2]) * r +
           kCentralNum[3]) * r + kCentralNum[4]) * r + kCentralNum[5]) * c /
        (((((kCentralDen[0] * r + kCentralDen[1]) * r + kCentralDen[2]) * r +
           kCentralDen[3]) * r + kCentralDen[4]) * r + 1.0);
  }
  // Halley step on Phi(x) - q, using the relative-accurate lower tail.
  const double density = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (density > 0.0) {
    const double u = (0.5 * std::erfc(-x / kSqrt2) - q) / density;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace

double normal_pdf(double x) {
  require_finite(x, "normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_sf(double x) {
  require_finite(x, "normal_sf");
  return 0.5 * std::erfc(x / kSqrt2);
}

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("normal_quantile: probability outside [0, 1]");
  }
  if (p == 0.0 || p == 1.0) {
    throw infinite_quantile("normal_quantile: quantile is infinite at p = 0 or 1");
  }
  if (p <= 0.5) return lower_quantile(p);
  return -lower_quantile(1.0 - p);  // 1 - p is exact for p >= 1/2
}

double isoperimetric(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("isoperimetric: probability outside [0, 1]");
  }
  const double q = p <= 0.5 ? p : 1.0 - p;
  if (q <= 1e-300) return 0.0;
  const double x = lower_quantile(q);
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double log_isoperimetric(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("log_isoperimetric: probability outside [0, 1]");
  }
  const double q = p <= 0.5 ? p : 1.0 - p;
  if (q <= 0.0) return -std::numeric_limits<double>::infinity();
  const double x = lower_quantile(q);
  return -0.5 * x * x - kLogSqrt2Pi;
}

double iso_expansion_residual(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw domain_error("iso_expansion_residual: eps must lie in (0, 1/2)");
  }
  const double s = std::sqrt(-2.0 * std::log(eps));
  const double leading = eps * s - eps * std::log(s * s) / (2.0 * s) + eps / s;
  return (isoperimetric(eps) - leading) * s / eps;
}

double shift_semigroup(double p, double r, Shift direction) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw domain_error("shift_semigroup: shift must be finite and non-negative");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("shift_semigroup: probability outside [0, 1]");
  }
  if (p == 0.0 || p == 1.0) return p;
  const double y = normal_quantile(p) + (direction == Shift::up ? r : -r);
  return normal_cdf(y);
}

}  // namespace lzineq::gauss

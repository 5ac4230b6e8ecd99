#pragma once

// Standard normal special functions and the Gaussian isoperimetric profile.
//
// Every function here is pure; they may be called concurrently.

namespace lzineq::gauss {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

/// Standard normal density. Throws lzineq::domain_error on non-finite input.
double normal_pdf(double x);

/// Standard normal distribution function, evaluated through erfc so the
/// lower tail is accurate in relative terms.
double normal_cdf(double x);

/// Upper tail 1 - normal_cdf(x), relative-accurate for large positive x.
double normal_sf(double x);

/// Inverse of normal_cdf on (0, 1).
///
/// Rational initial guess refined by one Halley step; |normal_cdf(q(p)) - p|
/// stays below 1e-12 on [1e-300, 1 - 1e-16]. Throws lzineq::infinite_quantile
/// for p in {0, 1} and lzineq::domain_error outside [0, 1].
double normal_quantile(double p);

/// Isoperimetric function I(p) = normal_pdf(normal_quantile(p)), with
/// I(0) = I(1) = 0. Values of p within 1e-300 of the endpoints map to 0.
double isoperimetric(double p);

/// log I(p) for p in (0, 1); -infinity at the endpoints.
double log_isoperimetric(double p);

/// Residual of the three-term small-eps expansion of I:
///   kappa(eps) = [I(eps) - T1 - T2 - T3] * sqrt(2 log(1/eps)) / eps
/// with T1 = eps*s, T2 = -eps*log(s^2)/(2s), T3 = eps/s, s = sqrt(2 log(1/eps)).
/// The residual tends to -log(2*pi)/2 as eps -> 0+ (see
/// isoperimetric_expansion_limit()). Requires 0 < eps < 1/2.
double iso_expansion_residual(double eps);

/// Limit of iso_expansion_residual at eps -> 0+, equal to -log(sqrt(2*pi)).
constexpr double isoperimetric_expansion_limit() { return -kLogSqrt2Pi; }

enum class Shift { up, down };

/// R_r(p) = Phi(Phi^{-1}(p) + r) for Shift::up, S_r(p) = Phi(Phi^{-1}(p) - r)
/// for Shift::down. Endpoints 0 and 1 are fixed points. Requires r >= 0.
double shift_semigroup(double p, double r, Shift direction);

}  // namespace lzineq::gauss

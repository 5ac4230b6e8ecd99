#pragma once

// Numerical checks of the shift, isoperimetric, inverse log-Sobolev and
// weighted log-Sobolev inequalities on grid densities, the shift flow
// dPsi/dt = K(Psi) h, the small-eps entropy limit, and the example laws.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzineq/measure.hpp"

namespace lzineq::verify {

/// height * b((x - center) / width) with b(t) = exp(1 - 1/(1 - t^2)) on
/// |t| < 1 and 0 elsewhere, so b(0) = 1.
struct TestBump {
  double center = 0.0;
  double width = 1.0;
  double height = 1.0;

  double value(double x) const;
  double derivative(double x) const;
};

/// A test function sampled on a grid, with its exact derivative.
struct GridFunction {
  std::string label;
  std::vector<double> f;
  std::vector<double> df;
};

GridFunction sample(const TestBump& bump, const GridDensity1D& density);
std::vector<GridFunction> sample(std::span<const TestBump> bumps, const GridDensity1D& density);
GridFunction constant_function(double value, const GridDensity1D& density);

/// Seeded bumps whose supports lie in [lo, hi]; widths are log-uniform in
/// [0.2, min(3, (hi - lo)/2)] and heights uniform in [0.05, 1].
/// Throws domain_error for an empty window.
std::vector<TestBump> bump_family(std::uint64_t seed, std::size_t count, double lo, double hi);

struct GridInfo {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;
};

struct Witness {
  std::size_t index = 0;
  std::string label;
  double margin = 0.0;
};

struct InequalityReport {
  std::string name;
  std::size_t trials = 0;
  /// min over trials of right side minus left side.
  double worst_margin = std::numeric_limits<double>::infinity();
  bool violated = false;
  /// The discretisation error estimate is not an order below tol_report.
  bool inconclusive = false;
  double error_estimate = 0.0;
  /// The trial attaining worst_margin.
  std::optional<Witness> witness;
  std::uint64_t seed = 0;
  double tol_report = 1e-6;
  GridInfo grid;
  std::vector<double> margins;
};

inline constexpr double kTolReport = 1e-6;

/// c I(E f) - |E K f'|.
InequalityReport functional_shift_check(const GridDensity1D& density, std::span<const double> K,
                                        double c, std::span<const GridFunction> tests,
                                        std::uint64_t seed = 0);
/// I(E f) - sqrt((E I(f))^2 + (E K f')^2 / c^2).
InequalityReport iso_form_check(const GridDensity1D& density, std::span<const double> K, double c,
                                std::span<const GridFunction> tests, std::uint64_t seed = 0);
/// 2 c^2 Ent(f) E f - (E K f')^2.
InequalityReport inverse_lsi_check(const GridDensity1D& density, std::span<const double> K,
                                   double c, std::span<const GridFunction> tests,
                                   std::uint64_t seed = 0);
/// (2 / alpha) E (K f')^2 - Ent(f^2).
InequalityReport lsi_check(const GridDensity1D& density, std::span<const double> K, double alpha,
                           std::span<const GridFunction> tests, std::uint64_t seed = 0);

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Seeded mix of half-lines and bounded intervals with finite ends in [lo, hi].
std::vector<Interval> interval_family(std::uint64_t seed, std::size_t count, double lo, double hi);

/// mu(A + h) checked against S_{c|h|}(mu(A)) <= . <= R_{c|h|}(mu(A)) for
/// every (h, A). Throws window_overflow when a shifted finite end leaves the
/// grid window.
InequalityReport explicit_shift_check(const GridDensity1D& density, double c,
                                      std::span<const double> shifts,
                                      std::span<const Interval> sets, std::uint64_t seed = 0);

struct FlowOptions {
  /// Local error tolerance per step, absolute on max(1, |x|).
  double tol = 1e-12;
  double initial_step = 1e-2;
  double min_step = 1e-13;
};

struct FlowResult {
  std::vector<double> grid_map;
  std::size_t step_count = 0;
  double max_step_error_estimate = 0.0;
  /// Some trajectory left the window where the field is tabulated.
  bool escaped = false;
};

/// Adaptive RK4 (step doubling with local extrapolation) for dx/dt = field(x)
/// from each start point over [0, t_final]. Throws integration_failure when
/// the step underflows.
FlowResult flow_map(const std::function<double(double)>& field, std::span<const double> starts,
                    double t_final, const FlowOptions& opts = {});

/// Flow of x -> K(x) h with K tabulated on the density grid, interpolated
/// by cubic Hermite splines and held constant outside the window.
FlowResult flow_map(std::span<const double> K, const GridDensity1D& density, double h,
                    std::span<const double> starts, double t_final, const FlowOptions& opts = {});

/// mu(Psi_1^{-1}(A)) against the same bounds, where Psi is the flow of K h.
/// Interval ends are carried by the flow of -K h. Throws window_overflow
/// when an end leaves the window.
InequalityReport flow_shift_check(const GridDensity1D& density, std::span<const double> K,
                                  double c, std::span<const double> shifts,
                                  std::span<const Interval> sets, std::uint64_t seed = 0,
                                  const FlowOptions& opts = {});

struct EntropyLimit {
  std::vector<double> eps;
  /// (I^2(eps E f) - (E I(eps f))^2) / eps^2 for each eps.
  std::vector<double> quotient;
  /// 2 Ent(f) E f.
  double target = 0.0;
  /// quotient moves monotonically toward target as eps decreases.
  bool monotone = true;
};

/// Throws domain_error unless eps * max f < 1 for every eps.
EntropyLimit entropy_limit_check(const GridDensity1D& density, std::span<const double> f,
                                 std::span<const double> eps_list);

/// Density proportional to exp(-q) with
///   q(x) = k x^2 / 2 + amplitude (1 - (x/R)^2)^3 cos(x^3) for |x| < R,
///   q(x) = k x^2 / 2 otherwise, k = (a + b) / 2.
/// Outside [-R, R] this gives b x^2 <= -v x <= a x^2, while the cubic phase
/// makes -v' strongly negative inside. Throws std::invalid_argument unless
/// 0 < b <= a and R > 0.
GridDensity1D example1_density(double a = 2.0, double b = 0.5, double R = 3.0,
                               double amplitude = 1.0);

/// C_R / sqrt(2 pi) * exp(-R x) on [0, 2R] and C_R phi(x) elsewhere, on a
/// grid with nodes at 0 and 2R (registered as breakpoints).
GridDensity1D puncture_measure(double R);
/// C_R = 1 / (1/2 + (1 - exp(-2R^2)) / (R sqrt(2 pi)) + 1 - Phi(2R)); C_0 = 1.
double puncture_constant(double R);

}  // namespace lzineq::verify

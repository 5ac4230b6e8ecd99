#pragma once

// One-dimensional grid densities, d-dimensional discrete measures and the
// functionals built on them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lzineq {

/// Density samples on the uniform grid x_i = x_min + i*h, i = 0..n-1.
///
/// Immutable; cumulative tables are built once at construction. Optional
/// log_values carry log p exactly where p itself underflows. Breakpoints are
/// node indices where p is continuous but p' jumps; quadrature and
/// derivatives split there.
class GridDensity1D {
 public:
  GridDensity1D(double x_min, double x_max, std::vector<double> values,
                std::vector<double> log_values = {}, std::vector<std::size_t> breakpoints = {});

  static GridDensity1D from_log_values(double x_min, double x_max, std::vector<double> log_values,
                                       std::vector<std::size_t> breakpoints = {});

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept { return h_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * h_; }
  std::vector<double> nodes() const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> log_values() const noexcept { return log_values_; }
  bool has_log_values() const noexcept { return !log_values_.empty(); }
  std::span<const std::size_t> breakpoints() const noexcept { return breakpoints_; }

  /// Total mass under the corrected trapezoid rule.
  double mass() const noexcept { return mass_; }
  /// Unnormalized integral of p over [x_0, x_i].
  std::span<const double> lower_cumulative() const noexcept { return lower_; }
  /// Unnormalized integral of p over [x_i, x_{n-1}].
  std::span<const double> upper_cumulative() const noexcept { return upper_; }
  /// Unnormalized integral of p over [x_j, x_{j+1}].
  std::span<const double> panels() const noexcept { return panels_; }

  /// log p_i, from log_values when present.
  double log_value(std::size_t i) const;

 private:
  double x_min_;
  double x_max_;
  double h_;
  std::vector<double> values_;
  std::vector<double> log_values_;
  std::vector<std::size_t> breakpoints_;
  std::vector<double> panels_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double mass_;
};

/// Rescales to unit mass. Throws invalid_density for zero or non-finite mass.
GridDensity1D normalize(const GridDensity1D& density);

/// Distribution function, clamped to 0 below x_min and 1 above x_max.
/// Between nodes the density is taken piecewise linear.
double cdf(const GridDensity1D& density, double x);
/// Upper tail mass of (x, x_max], accurate where cdf rounds to 1.
double sf(const GridDensity1D& density, double x);
/// Distribution function and upper tail at every node.
std::vector<double> cdf_table(const GridDensity1D& density);
std::vector<double> sf_table(const GridDensity1D& density);

/// Inverse of cdf on (0, 1). Throws infinite_quantile at p in {0, 1}.
double quantile(const GridDensity1D& density, double p);

double mean(const GridDensity1D& density);
/// E f for grid samples f.
double expectation(const GridDensity1D& density, std::span<const double> f);

/// E(f log f) - E f log E f with 0 log 0 = 0. Throws domain_error on f < 0.
double entropy(const GridDensity1D& density, std::span<const double> f);

/// v = (log p)'. Throws division_error at a vanishing density value unless
/// log_values are available.
std::vector<double> log_gradient(const GridDensity1D& density);

/// delta(K) = -K v - K', the adjoint of K d/dx under the density.
std::vector<double> divergence_1d(std::span<const double> K, const GridDensity1D& density);

/// Linear interpolation of grid samples, constant beyond the window.
double interpolate(const GridDensity1D& density, std::span<const double> f, double x);

/// Weighted atoms in R^d. Coordinates are stored row-major.
class DiscreteMeasure {
 public:
  /// Weights must be positive; unless `renormalize` is set they must sum to
  /// 1 within 1e-12.
  DiscreteMeasure(std::size_t dim, std::vector<double> coords, std::vector<double> weights,
                  bool renormalize = false);

  /// Equal weights on n one-dimensional atoms.
  static DiscreteMeasure uniform_1d(std::vector<double> atoms);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> atom(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> weights() const noexcept { return weights_; }

  std::vector<double> mean() const;
  /// <x_i, u> for every atom.
  std::vector<double> project(std::span<const double> u) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

double expectation(const DiscreteMeasure& measure, std::span<const double> f);
double entropy(const DiscreteMeasure& measure, std::span<const double> f);

/// A scalar weight K on the grid and its divergence v = delta(K).
struct WeightPair {
  std::vector<double> K;
  std::vector<double> v;
};

WeightPair make_weight_pair(std::vector<double> K, const GridDensity1D& density);
WeightPair identity_weight(const GridDensity1D& density);

/// Image of the density under `map`, sampled by inverse transform.
///
/// Returns `count` equally weighted atoms. With `center` the sample mean is
/// subtracted, which is exact in law whenever the image is centred.
DiscreteMeasure pushforward_sample(const GridDensity1D& density,
                                   const std::function<double(double)>& map, std::size_t count,
                                   std::uint64_t seed, bool center = true);

namespace builtin {

/// N(0, 1) on [-10, 10], n = 20001.
GridDensity1D gaussian();
/// N(0, c^2) on [-20c, 20c] with step 1e-3 * c.
GridDensity1D gaussian_c(double c);
/// Uniform on [0, 1], n = 1001.
GridDensity1D uniform();
/// Exp(1) on [0, 40].
GridDensity1D exp1();
/// Laplace(0, 1) on [-25, 25] with a breakpoint at 0.
GridDensity1D laplace();

/// Looks up one of the names above; throws std::invalid_argument otherwise.
GridDensity1D by_name(const std::string& name);

/// The named law on a custom grid. The Laplace kink is registered as a
/// breakpoint when 0 falls on a node.
GridDensity1D by_name(const std::string& name, double x_min, double x_max, std::size_t n);

}  // namespace builtin

}  // namespace lzineq

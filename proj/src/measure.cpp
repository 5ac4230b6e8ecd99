#include "lzineq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "lzineq/errors.hpp"
#include "lzineq/grid_calculus.hpp"

namespace lzineq {
namespace {

// Fraction of panel j's mass lying left of x_j + s*h when p is linear
// across the panel.
double panel_fraction(double p0, double p1, double s) {
  const double denom = p0 + p1;
  if (!(denom > 0.0)) return s;
  return (2.0 * s * p0 + s * s * (p1 - p0)) / denom;
}

// Inverse of panel_fraction for w in [0, 1].
double panel_position(double p0, double p1, double w) {
  const double b = 2.0 * p0;
  const double c = w * (p0 + p1);
  const double disc = std::max(0.0, b * b + 4.0 * (p1 - p0) * c);
  const double denom = b + std::sqrt(disc);
  if (!(denom > 0.0)) return w;
  return std::clamp(2.0 * c / denom, 0.0, 1.0);
}

void require_size(std::span<const double> f, std::size_t n, const char* what) {
  if (f.size() != n) throw std::invalid_argument(std::string(what) + ": size mismatch with grid");
}

}  // namespace

GridDensity1D::GridDensity1D(double x_min, double x_max, std::vector<double> values,
                             std::vector<double> log_values, std::vector<std::size_t> breakpoints)
    : x_min_(x_min),
      x_max_(x_max),
      h_(0.0),
      values_(std::move(values)),
      log_values_(std::move(log_values)),
      breakpoints_(std::move(breakpoints)),
      mass_(0.0) {
  const std::size_t n = values_.size();
  if (n < 3) throw invalid_density("grid density needs at least 3 nodes");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw invalid_density("grid window must satisfy x_min < x_max");
  }
  for (double p : values_) {
    if (!std::isfinite(p) || p < 0.0) throw invalid_density("density values must be finite and >= 0");
  }
  if (!log_values_.empty()) {
    if (log_values_.size() != n) throw invalid_density("log_values size differs from values");
    for (double l : log_values_) {
      if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
        throw invalid_density("log_values must be finite or -inf");
      }
    }
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
  for (std::size_t b : breakpoints_) {
    if (b == 0 || b + 1 >= n) throw invalid_density("breakpoints must be interior nodes");
  }
  h_ = (x_max_ - x_min_) / static_cast<double>(n - 1);
  panels_ = panel_integrals(values_, h_, breakpoints_);
  lower_.assign(n, 0.0);
  upper_.assign(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) lower_[j + 1] = lower_[j] + panels_[j];
  for (std::size_t j = n - 1; j-- > 0;) upper_[j] = upper_[j + 1] + panels_[j];
  mass_ = lower_.back();
}

GridDensity1D GridDensity1D::from_log_values(double x_min, double x_max,
                                             std::vector<double> log_values,
                                             std::vector<std::size_t> breakpoints) {
  std::vector<double> values(log_values.size());
  std::transform(log_values.begin(), log_values.end(), values.begin(),
                 [](double l) { return std::exp(l); });
  return GridDensity1D(x_min, x_max, std::move(values), std::move(log_values),
                       std::move(breakpoints));
}

std::vector<double> GridDensity1D::nodes() const {
  std::vector<double> xs(size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
  return xs;
}

double GridDensity1D::log_value(std::size_t i) const {
  return log_values_.empty() ? std::log(values_[i]) : log_values_[i];
}

GridDensity1D normalize(const GridDensity1D& density) {
  const double m = density.mass();
  if (!(m > 0.0) || !std::isfinite(m)) throw invalid_density("density has zero or non-finite mass");
  std::vector<double> values(density.values().begin(), density.values().end());
  for (double& p : values) p /= m;
  std::vector<double> logs(density.log_values().begin(), density.log_values().end());
  const double log_m = std::log(m);
  for (double& l : logs) l -= log_m;
  return GridDensity1D(density.x_min(), density.x_max(), std::move(values), std::move(logs),
                       {density.breakpoints().begin(), density.breakpoints().end()});
}

double cdf(const GridDensity1D& density, double x) {
  if (std::isnan(x)) throw domain_error("cdf: NaN argument");
  if (x <= density.x_min()) return 0.0;
  if (x >= density.x_max()) return 1.0;
  const auto p = density.values();
  const double t = (x - density.x_min()) / density.step();
  const std::size_t i = std::min(static_cast<std::size_t>(t), density.size() - 2);
  const double w = panel_fraction(p[i], p[i + 1], t - static_cast<double>(i));
  const double F = (density.lower_cumulative()[i] + density.panels()[i] * w) / density.mass();
  return std::clamp(F, 0.0, 1.0);
}

double sf(const GridDensity1D& density, double x) {
  if (std::isnan(x)) throw domain_error("sf: NaN argument");
  if (x <= density.x_min()) return 1.0;
  if (x >= density.x_max()) return 0.0;
  const auto p = density.values();
  const double t = (x - density.x_min()) / density.step();
  const std::size_t i = std::min(static_cast<std::size_t>(t), density.size() - 2);
  const double w = panel_fraction(p[i], p[i + 1], t - static_cast<double>(i));
  const double S =
      (density.upper_cumulative()[i + 1] + density.panels()[i] * (1.0 - w)) / density.mass();
  return std::clamp(S, 0.0, 1.0);
}

std::vector<double> cdf_table(const GridDensity1D& density) {
  std::vector<double> F(density.lower_cumulative().begin(), density.lower_cumulative().end());
  for (double& v : F) v = std::clamp(v / density.mass(), 0.0, 1.0);
  return F;
}

std::vector<double> sf_table(const GridDensity1D& density) {
  std::vector<double> S(density.upper_cumulative().begin(), density.upper_cumulative().end());
  for (double& v : S) v = std::clamp(v / density.mass(), 0.0, 1.0);
  return S;
}

double quantile(const GridDensity1D& density, double p) {
  if (p == 0.0 || p == 1.0) throw infinite_quantile("quantile: p in {0, 1} has unbounded support");
  if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile: probability outside [0, 1]");
  const auto vals = density.values();
  const auto panels = density.panels();
  const std::size_t last = density.size() - 2;
  std::size_t i;
  double w;
  if (p <= 0.5) {
    const auto lower = density.lower_cumulative();
    const double target = p * density.mass();
    const auto it = std::upper_bound(lower.begin(), lower.end(), target);
    i = std::min(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - lower.begin() - 1, 0)), last);
    w = panels[i] > 0.0 ? (target - lower[i]) / panels[i] : 0.0;
  } else {
    const auto upper = density.upper_cumulative();
    const double target = (1.0 - p) * density.mass();
    const auto it = std::partition_point(upper.begin(), upper.end(),
                                         [target](double u) { return u >= target; });
    i = std::min(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - upper.begin() - 1, 0)), last);
    w = panels[i] > 0.0 ? 1.0 - (target - upper[i + 1]) / panels[i] : 1.0;
  }
  const double s = panel_position(vals[i], vals[i + 1], std::clamp(w, 0.0, 1.0));
  return density.x(i) + s * density.step();
}

double mean(const GridDensity1D& density) {
  std::vector<double> g(density.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = density.x(i) * density.values()[i];
  return integrate(g, density.step(), density.breakpoints()) / density.mass();
}

double expectation(const GridDensity1D& density, std::span<const double> f) {
  require_size(f, density.size(), "expectation");
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i] * density.values()[i];
  return integrate(g, density.step(), density.breakpoints()) / density.mass();
}

double entropy(const GridDensity1D& density, std::span<const double> f) {
  require_size(f, density.size(), "entropy");
  for (double v : f) {
    if (!(v >= 0.0)) throw domain_error("entropy: f must be nonnegative");
  }
  const double m = expectation(density, f);
  if (!(m > 0.0)) return 0.0;
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i] > 0.0 ? f[i] * std::log(f[i] / m) : 0.0;
  return std::max(0.0, expectation(density, g));
}

std::vector<double> log_gradient(const GridDensity1D& density) {
  if (density.has_log_values()) {
    for (double l : density.log_values()) {
      if (!std::isfinite(l)) throw division_error("log_gradient: density vanishes on the grid");
    }
    return derivative(density.log_values(), density.step(), density.breakpoints());
  }
  std::vector<double> logs(density.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double p = density.values()[i];
    if (!(p > 0.0)) throw division_error("log_gradient: density vanishes on the grid");
    logs[i] = std::log(p);
  }
  return derivative(logs, density.step(), density.breakpoints());
}

std::vector<double> divergence_1d(std::span<const double> K, const GridDensity1D& density) {
  require_size(K, density.size(), "divergence_1d");
  const auto v = log_gradient(density);
  const auto dK = derivative(K, density.step(), density.breakpoints());
  std::vector<double> out(K.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -K[i] * v[i] - dK[i];
  return out;
}

double interpolate(const GridDensity1D& density, std::span<const double> f, double x) {
  require_size(f, density.size(), "interpolate");
  if (x <= density.x_min()) return f.front();
  if (x >= density.x_max()) return f.back();
  const double t = (x - density.x_min()) / density.step();
  const std::size_t i = std::min(static_cast<std::size_t>(t), density.size() - 2);
  const double s = t - static_cast<double>(i);
  return (1.0 - s) * f[i] + s * f[i + 1];
}

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<double> coords,
                                 std::vector<double> weights, bool renormalize)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (dim_ == 0) throw std::invalid_argument("DiscreteMeasure: dimension must be positive");
  if (weights_.empty()) throw std::invalid_argument("DiscreteMeasure: no atoms");
  if (coords_.size() != dim_ * weights_.size()) {
    throw std::invalid_argument("DiscreteMeasure: coordinate count differs from dim * atoms");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("DiscreteMeasure: non-finite coordinate");
  }
  for (double w : weights_) {
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw std::invalid_argument("DiscreteMeasure: weights must be positive and finite");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (renormalize) {
    for (double& w : weights_) w /= total;
  } else if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("DiscreteMeasure: weights do not sum to 1");
  }
}

DiscreteMeasure DiscreteMeasure::uniform_1d(std::vector<double> atoms) {
  const std::size_t n = atoms.size();
  return DiscreteMeasure(1, std::move(atoms), std::vector<double>(n, 1.0), true);
}

std::vector<double> DiscreteMeasure::mean() const {
  std::vector<double> m(dim_, 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t k = 0; k < dim_; ++k) m[k] += weights_[i] * coords_[i * dim_ + k];
  }
  return m;
}

std::vector<double> DiscreteMeasure::project(std::span<const double> u) const {
  if (u.size() != dim_) throw std::invalid_argument("project: direction has wrong dimension");
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t k = 0; k < dim_; ++k) out[i] += coords_[i * dim_ + k] * u[k];
  }
  return out;
}

double expectation(const DiscreteMeasure& measure, std::span<const double> f) {
  require_size(f, measure.size(), "expectation");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += measure.weights()[i] * f[i];
  return s;
}

double entropy(const DiscreteMeasure& measure, std::span<const double> f) {
  require_size(f, measure.size(), "entropy");
  for (double v : f) {
    if (!(v >= 0.0)) throw domain_error("entropy: f must be nonnegative");
  }
  const double m = expectation(measure, f);
  if (!(m > 0.0)) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] > 0.0) s += measure.weights()[i] * f[i] * std::log(f[i] / m);
  }
  return std::max(0.0, s);
}

WeightPair make_weight_pair(std::vector<double> K, const GridDensity1D& density) {
  auto v = divergence_1d(K, density);
  return {std::move(K), std::move(v)};
}

WeightPair identity_weight(const GridDensity1D& density) {
  return make_weight_pair(std::vector<double>(density.size(), 1.0), density);
}

DiscreteMeasure pushforward_sample(const GridDensity1D& density,
                                   const std::function<double(double)>& map, std::size_t count,
                                   std::uint64_t seed, bool center) {
  if (count == 0) throw std::invalid_argument("pushforward_sample: count must be positive");
  std::mt19937_64 gen(seed);
  std::vector<double> ys(count);
  for (auto& y : ys) {
    const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
    y = map(quantile(density, u));
  }
  if (center) {
    const double m = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(count);
    for (auto& y : ys) y -= m;
  }
  return DiscreteMeasure::uniform_1d(std::move(ys));
}

}  // namespace lzineq

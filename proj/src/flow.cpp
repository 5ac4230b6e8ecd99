#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "detail/trials.hpp"
#include "lzineq/errors.hpp"
#include "lzineq/grid_calculus.hpp"
#include "lzineq/verify.hpp"

namespace lzineq::verify {
namespace {

using Field = std::function<double(double)>;

double rk4_step(const Field& f, double x, double dt) {
  const double k1 = f(x);
  const double k2 = f(x + 0.5 * dt * k1);
  const double k3 = f(x + 0.5 * dt * k2);
  const double k4 = f(x + dt * k3);
  return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct PointFlow {
  double x;
  std::size_t steps;
  double max_error;
};

PointFlow integrate_point(const Field& f, double x, double t_final, const FlowOptions& opts) {
  PointFlow out{x, 0, 0.0};
  if (t_final == 0.0) return out;
  const double dir = t_final > 0.0 ? 1.0 : -1.0;
  const double T = std::abs(t_final);
  double t = 0.0;
  double dt = std::min(opts.initial_step, T);
  while (t < T) {
    const bool last = t + dt >= T;
    const double step = last ? T - t : dt;
    const double full = rk4_step(f, out.x, dir * step);
    const double half = rk4_step(f, rk4_step(f, out.x, 0.5 * dir * step), 0.5 * dir * step);
    const double err = std::abs(half - full) / 15.0;
    const double scale = std::max(1.0, std::abs(out.x));
    if (!std::isfinite(err)) throw integration_failure("flow: non-finite field value");
    if (err <= opts.tol * scale) {
      out.x = half + (half - full) / 15.0;
      t = last ? T : t + step;
      ++out.steps;
      out.max_error = std::max(out.max_error, err);
    }
    const double ratio = err > 0.0 ? 0.9 * std::pow(opts.tol * scale / err, 0.2) : 4.0;
    dt = step * std::clamp(ratio, 0.1, 4.0);
    if (t < T && dt < opts.min_step) throw integration_failure("flow: step size underflow");
  }
  return out;
}

// Cubic Hermite interpolant of grid samples with finite-difference slopes,
// constant outside the window.
Field hermite_field(std::span<const double> K, const GridDensity1D& density, double scale) {
  auto values = std::make_shared<std::vector<double>>(K.begin(), K.end());
  auto slopes = std::make_shared<std::vector<double>>(
      derivative(K, density.step(), density.breakpoints()));
  const double x0 = density.x_min();
  const double x1 = density.x_max();
  const double h = density.step();
  const std::size_t n = density.size();
  return [=](double x) {
    const auto& y = *values;
    const auto& m = *slopes;
    if (x <= x0) return scale * y.front();
    if (x >= x1) return scale * y.back();
    const double t = (x - x0) / h;
    const std::size_t i = std::min(static_cast<std::size_t>(t), n - 2);
    const double s = t - static_cast<double>(i);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double v = (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * h * m[i] +
                     (-2 * s3 + 3 * s2) * y[i + 1] + (s3 - s2) * h * m[i + 1];
    return scale * v;
  };
}

}  // namespace

FlowResult flow_map(const std::function<double(double)>& field, std::span<const double> starts,
                    double t_final, const FlowOptions& opts) {
  if (!std::isfinite(t_final)) throw std::invalid_argument("flow_map: t_final must be finite");
  FlowResult res;
  res.grid_map.reserve(starts.size());
  for (double x : starts) {
    const auto p = integrate_point(field, x, t_final, opts);
    res.grid_map.push_back(p.x);
    res.step_count += p.steps;
    res.max_step_error_estimate = std::max(res.max_step_error_estimate, p.max_error);
  }
  return res;
}

FlowResult flow_map(std::span<const double> K, const GridDensity1D& density, double h,
                    std::span<const double> starts, double t_final, const FlowOptions& opts) {
  if (K.size() != density.size()) throw std::invalid_argument("flow_map: K does not match grid");
  auto res = flow_map(hermite_field(K, density, h), starts, t_final, opts);
  for (double y : res.grid_map) {
    if (y < density.x_min() || y > density.x_max()) res.escaped = true;
  }
  return res;
}

InequalityReport flow_shift_check(const GridDensity1D& density, std::span<const double> K,
                                  double c, std::span<const double> shifts,
                                  std::span<const Interval> sets, std::uint64_t seed,
                                  const FlowOptions& opts) {
  if (!(c > 0.0)) throw domain_error("flow_shift_check: c must be positive");
  if (K.size() != density.size()) throw std::invalid_argument("flow_shift_check: size mismatch");
  const std::size_t m = sets.size();

  // Preimage under Psi_1 of one finite end: the time-one flow of -K h.
  const auto pull_back = [&opts](const detail::Level& lvl, double h, double x) {
    if (!std::isfinite(x) || h == 0.0) return x;
    const double y = integrate_point(hermite_field(lvl.K, lvl.density, -h), x, 1.0, opts).x;
    if (y < lvl.density.x_min() || y > lvl.density.x_max()) {
      throw window_overflow("flow_shift_check: flowed set leaves the grid window");
    }
    return y;
  };

  return detail::run_trials(
      "flow_shift", density, K, {}, shifts.size() * m,
      [=](std::size_t i) { return detail::interval_label(shifts[i / m], sets[i % m]); },
      [=](const detail::Level& lvl, std::size_t i) {
        const double h = shifts[i / m];
        const auto& A = sets[i % m];
        const double mass_A = detail::interval_mass(lvl.density, A.lo, A.hi);
        const double lo = pull_back(lvl, h, A.lo);
        const double hi = pull_back(lvl, h, A.hi);
        const double moved = detail::interval_mass(lvl.density, lo, hi);
        return detail::shift_margin(mass_A, moved, c * std::abs(h));
      },
      seed);
}

}  // namespace lzineq::verify

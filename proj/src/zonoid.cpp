#include "lzineq/zonoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lzineq/errors.hpp"
#include "lzineq/gauss.hpp"
#include "lzineq/grid_calculus.hpp"

namespace lzineq {
namespace {

double norm(std::span<const double> u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return std::sqrt(s);
}

double radical_inverse(std::uint64_t k, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (k > 0) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::vector<double> alpha_grid(const OrderOptions& opts, const SectionProfile& profile) {
  if (opts.n_alphas < 2) throw std::invalid_argument("order_check: n_alphas must be >= 2");
  std::vector<double> alphas;
  alphas.reserve(opts.n_alphas + (opts.include_kinks ? profile.kinks().size() : 0));
  for (std::size_t k = 1; k < opts.n_alphas; ++k) {
    alphas.push_back(static_cast<double>(k) / static_cast<double>(opts.n_alphas));
  }
  if (opts.include_kinks) {
    for (double a : profile.kinks()) {
      if (a > 0.0 && a < 1.0 - 1e-15) alphas.push_back(a);
    }
  }
  return alphas;
}

struct Scan {
  double ratio = -std::numeric_limits<double>::infinity();
  double alpha = 0.0;
  std::size_t dir = 0;
};

// Largest M(alpha, u) / (I(alpha) |u|) over the tested set.
Scan scan_ratio(const DiscreteMeasure& nu, const OrderOptions& opts,
                const std::vector<std::vector<double>>& dirs) {
  Scan best;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const SectionProfile profile(nu, dirs[d]);
    const double un = norm(dirs[d]);
    for (double a : alpha_grid(opts, profile)) {
      const double ratio = profile(a) / (gauss::isoperimetric(a) * un);
      if (ratio > best.ratio) best = {ratio, a, d};
    }
  }
  return best;
}

template <class LogMoment>
MomentBound moment_search(LogMoment log_moment) {
  const double target = std::log(2.0);
  constexpr double kFloor = 1e-12;
  constexpr double kCeiling = 1e12;
  double lo = 0.0;
  double hi = 1.0;
  if (log_moment(hi) <= target) {
    lo = hi;
    while (lo < kCeiling) {
      hi = 2.0 * lo;
      if (log_moment(hi) > target) break;
      lo = hi;
    }
    if (lo >= kCeiling) return {lo, 1.0 / std::sqrt(6.0 * lo), 4.0 / std::sqrt(lo)};
  } else {
    while (true) {
      lo = 0.5 * hi;
      if (lo < kFloor) throw heavy_tail_error("no eps > 1e-12 keeps E exp(eps X^2) <= 2");
      if (log_moment(lo) <= target) break;
      hi = lo;
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_moment(mid) <= target ? lo : hi) = mid;
  }
  return {lo, 1.0 / std::sqrt(6.0 * lo), 4.0 / std::sqrt(lo)};
}

}  // namespace

double lift_support(const DiscreteMeasure& nu, const LiftSupportQuery& q) {
  const auto proj = nu.project(q.u);
  double s = 0.0;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    s += nu.weights()[i] * std::max(0.0, q.t + proj[i]);
  }
  return s;
}

double lift_support_gaussian(double c, const LiftSupportQuery& q) {
  if (!(c > 0.0)) throw domain_error("lift_support_gaussian: c must be positive");
  const double s = c * norm(q.u);
  if (s == 0.0) return std::max(q.t, 0.0);
  const double a = q.t / s;
  return s * (a * gauss::normal_cdf(a) + gauss::normal_pdf(a));
}

SectionProfile::SectionProfile(const DiscreteMeasure& nu, std::span<const double> u) {
  const auto proj = nu.project(u);
  std::vector<std::size_t> order(proj.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&proj](std::size_t a, std::size_t b) { return proj[a] > proj[b]; });
  proj_.reserve(order.size());
  cum_weight_.reserve(order.size());
  cum_value_.reserve(order.size());
  double w = 0.0;
  double v = 0.0;
  for (std::size_t i : order) {
    w += nu.weights()[i];
    v += nu.weights()[i] * proj[i];
    proj_.push_back(proj[i]);
    cum_weight_.push_back(w);
    cum_value_.push_back(v);
  }
}

double SectionProfile::operator()(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw domain_error("section_extremum: alpha outside [0, 1]");
  if (alpha == 0.0) return 0.0;
  const auto it = std::lower_bound(cum_weight_.begin(), cum_weight_.end(), alpha);
  if (it == cum_weight_.end()) return cum_value_.back();
  const std::size_t k = static_cast<std::size_t>(it - cum_weight_.begin());
  const double w_before = k == 0 ? 0.0 : cum_weight_[k - 1];
  const double v_before = k == 0 ? 0.0 : cum_value_[k - 1];
  return v_before + (alpha - w_before) * proj_[k];
}

double section_extremum(const DiscreteMeasure& nu, double alpha, std::span<const double> u) {
  return SectionProfile(nu, u)(alpha);
}

std::vector<std::vector<double>> sphere_directions(std::size_t dim, std::size_t count,
                                                   std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("sphere_directions: dimension must be positive");
  if (dim == 1) return {{1.0}, {-1.0}};
  if (dim > std::size(kPrimes)) throw std::invalid_argument("sphere_directions: dimension too large");
  if (count == 0) throw std::invalid_argument("sphere_directions: need at least one direction");
  std::vector<std::vector<double>> dirs;
  dirs.reserve(count);
  for (std::uint64_t k = seed + 1; dirs.size() < count; ++k) {
    std::vector<double> u(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      u[j] = gauss::normal_quantile(radical_inverse(k, kPrimes[j]));
    }
    const double n = norm(u);
    if (!(n > 1e-12)) continue;
    for (double& x : u) x /= n;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

OrderCertificate order_check(const DiscreteMeasure& nu, double c, const OrderOptions& opts) {
  if (!(c > 0.0)) throw domain_error("order_check: c must be positive");
  const auto dirs = sphere_directions(nu.dim(), opts.n_dirs, opts.seed);
  const Scan best = scan_ratio(nu, opts, dirs);
  OrderCertificate cert;
  cert.c = c;
  cert.tol_order = opts.tol_order;
  cert.worst_ratio = best.ratio / c;
  cert.witness = OrderWitness{best.alpha, dirs[best.dir]};
  cert.dominated = cert.worst_ratio <= 1.0 + opts.tol_order;
  return cert;
}

double minimal_dominating_c(const DiscreteMeasure& nu, const OrderOptions& opts) {
  const auto dirs = sphere_directions(nu.dim(), opts.n_dirs, opts.seed);
  return std::max(0.0, scan_ratio(nu, opts, dirs).ratio);
}

MomentBound eps_moment_search(const DiscreteMeasure& nu, std::size_t n_dirs) {
  std::vector<std::vector<double>> projections;
  for (const auto& u : sphere_directions(nu.dim(), n_dirs)) projections.push_back(nu.project(u));
  const auto w = nu.weights();
  return moment_search([&](double eps) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& y : projections) {
      double m = -std::numeric_limits<double>::infinity();
      for (double yi : y) m = std::max(m, eps * yi * yi);
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * std::exp(eps * y[i] * y[i] - m);
      worst = std::max(worst, m + std::log(s));
    }
    return worst;
  });
}

MomentBound eps_moment_search(const GridDensity1D& density, std::span<const double> v) {
  if (v.size() != density.size()) throw std::invalid_argument("eps_moment_search: size mismatch");
  std::vector<double> logp(density.size());
  for (std::size_t i = 0; i < logp.size(); ++i) logp[i] = density.log_value(i);
  const double log_mass = std::log(density.mass());
  std::vector<double> g(density.size());
  return moment_search([&](double eps) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, eps * v[i] * v[i] + logp[i]);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::exp(eps * v[i] * v[i] + logp[i] - m);
    return m + std::log(integrate(g, density.step(), density.breakpoints())) - log_mass;
  });
}

}  // namespace lzineq

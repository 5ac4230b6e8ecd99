#include "lzineq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "detail/format.hpp"
#include "detail/levels.hpp"
#include "detail/trials.hpp"
#include "lzineq/errors.hpp"
#include "lzineq/gauss.hpp"

namespace lzineq {

namespace detail {

std::optional<GridDensity1D> coarsen(const GridDensity1D& fine) {
  for (std::size_t b : fine.breakpoints()) {
    if (b % 2 != 0) return std::nullopt;
  }
  const std::size_t n = (fine.size() - 1) / 2 + 1;
  if (n < 3) return std::nullopt;
  auto values = subsample(fine.values(), n);
  auto logs = fine.has_log_values() ? subsample(fine.log_values(), n) : std::vector<double>{};
  std::vector<std::size_t> bps;
  for (std::size_t b : fine.breakpoints()) {
    if (b / 2 > 0 && b / 2 + 1 < n) bps.push_back(b / 2);
  }
  const double x_max = fine.x(2 * (n - 1));
  return GridDensity1D(fine.x_min(), x_max, std::move(values), std::move(logs), std::move(bps));
}

std::vector<double> subsample(std::span<const double> f, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f[2 * i];
  return out;
}

verify::InequalityReport run_trials(const std::string& name, const GridDensity1D& density,
                                    std::span<const double> K,
                                    std::span<const verify::GridFunction> tests,
                            std::size_t count, const LabelFn& label, const MarginFn& margin,
                            std::uint64_t seed) {
  verify::InequalityReport rep;
  rep.name = name;
  rep.trials = count;
  rep.seed = seed;
  rep.tol_report = verify::kTolReport;
  rep.grid = {density.x_min(), density.x_max(), density.size()};

  const Level fine{density, K, tests};
  rep.margins.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    rep.margins[i] = margin(fine, i);
    if (rep.margins[i] < rep.worst_margin || !rep.witness) {
      rep.worst_margin = rep.margins[i];
      rep.witness = verify::Witness{i, label(i), rep.margins[i]};
    }
  }

  if (const auto coarse = coarsen(density)) {
    const std::size_t n = coarse->size();
    const auto Kc = subsample(K, n);
    std::vector<verify::GridFunction> tc;
    tc.reserve(tests.size());
    for (const auto& t : tests) tc.push_back({t.label, subsample(t.f, n), subsample(t.df, n)});
    const Level lvl{*coarse, Kc, tc};
    for (std::size_t i = 0; i < count; ++i) {
      // Second-order components dominate, so the fine-grid error is about
      // a third of the fine/coarse difference.
      rep.error_estimate =
          std::max(rep.error_estimate, std::abs(rep.margins[i] - margin(lvl, i)) / 3.0);
    }
  }
  rep.violated = rep.worst_margin < -rep.tol_report;
  rep.inconclusive = rep.error_estimate >= 0.1 * rep.tol_report;
  return rep;
}

double interval_mass(const GridDensity1D& density, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (std::isinf(lo)) return std::isinf(hi) ? 1.0 : cdf(density, hi);
  if (std::isinf(hi)) return sf(density, lo);
  // Difference of the better-conditioned tail.
  const double F_lo = cdf(density, lo);
  if (F_lo < 0.5) return std::max(0.0, cdf(density, hi) - F_lo);
  return std::max(0.0, sf(density, lo) - sf(density, hi));
}

double shift_margin(double mass_A, double mass_moved, double r) {
  const double lower = gauss::shift_semigroup(mass_A, r, gauss::Shift::down);
  const double upper = gauss::shift_semigroup(mass_A, r, gauss::Shift::up);
  return std::min(mass_moved - lower, upper - mass_moved);
}

std::string interval_label(double h, const verify::Interval& A) {
  return "h=" + shortest(h) + " A=[" + shortest(A.lo) + "," + shortest(A.hi) + "]";
}

}  // namespace detail

namespace verify {
namespace {

using detail::Level;

double bump_template(double t) {
  if (!(std::abs(t) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

std::vector<double> product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double weighted_gradient_mean(const Level& lvl, const GridFunction& g) {
  return expectation(lvl.density, product(lvl.K, g.df));
}

void require_tests(std::span<const GridFunction> tests, const GridDensity1D& density,
                   std::span<const double> K) {
  if (K.size() != density.size()) throw std::invalid_argument("check: weight does not match grid");
  for (const auto& t : tests) {
    if (t.f.size() != density.size() || t.df.size() != density.size()) {
      throw std::invalid_argument("check: test function '" + t.label + "' does not match grid");
    }
  }
}

detail::LabelFn test_labels(std::span<const GridFunction> tests) {
  return [tests](std::size_t i) { return tests[i].label; };
}

}  // namespace

double TestBump::value(double x) const { return height * bump_template((x - center) / width); }

double TestBump::derivative(double x) const {
  const double t = (x - center) / width;
  if (!(std::abs(t) < 1.0)) return 0.0;
  const double u = 1.0 - t * t;
  return height * bump_template(t) * (-2.0 * t / (u * u)) / width;
}

GridFunction sample(const TestBump& bump, const GridDensity1D& density) {
  GridFunction g;
  g.label = "bump(center=" + detail::shortest(bump.center) +
            ", width=" + detail::shortest(bump.width) +
            ", height=" + detail::shortest(bump.height) + ")";
  g.f.resize(density.size());
  g.df.resize(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    g.f[i] = bump.value(density.x(i));
    g.df[i] = bump.derivative(density.x(i));
  }
  return g;
}

std::vector<GridFunction> sample(std::span<const TestBump> bumps, const GridDensity1D& density) {
  std::vector<GridFunction> out;
  out.reserve(bumps.size());
  for (const auto& b : bumps) out.push_back(sample(b, density));
  return out;
}

GridFunction constant_function(double value, const GridDensity1D& density) {
  return {"constant(" + detail::shortest(value) + ")", std::vector<double>(density.size(), value),
          std::vector<double>(density.size(), 0.0)};
}

std::vector<TestBump> bump_family(std::uint64_t seed, std::size_t count, double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw domain_error("bump_family: empty support window");
  }
  if (count == 0) throw std::invalid_argument("bump_family: count must be positive");
  const double w_max = std::min(3.0, 0.5 * (hi - lo));
  const double w_min = std::min(0.2, w_max);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TestBump> bumps(count);
  for (auto& b : bumps) {
    b.width = w_min * std::pow(w_max / w_min, unit(gen));
    b.center = (lo + b.width) + (hi - lo - 2.0 * b.width) * unit(gen);
    b.height = 0.05 + 0.95 * unit(gen);
  }
  return bumps;
}

InequalityReport functional_shift_check(const GridDensity1D& density, std::span<const double> K,
                                        double c, std::span<const GridFunction> tests,
                                        std::uint64_t seed) {
  require_tests(tests, density, K);
  return detail::run_trials(
      "functional_shift", density, K, tests, tests.size(), test_labels(tests),
      [c](const Level& lvl, std::size_t i) {
        const auto& g = lvl.tests[i];
        const double Ef = std::clamp(expectation(lvl.density, g.f), 0.0, 1.0);
        return c * gauss::isoperimetric(Ef) - std::abs(weighted_gradient_mean(lvl, g));
      },
      seed);
}

InequalityReport iso_form_check(const GridDensity1D& density, std::span<const double> K, double c,
                                std::span<const GridFunction> tests, std::uint64_t seed) {
  require_tests(tests, density, K);
  return detail::run_trials(
      "iso_form", density, K, tests, tests.size(), test_labels(tests),
      [c](const Level& lvl, std::size_t i) {
        const auto& g = lvl.tests[i];
        const double Ef = std::clamp(expectation(lvl.density, g.f), 0.0, 1.0);
        std::vector<double> If(g.f.size());
        for (std::size_t k = 0; k < If.size(); ++k) {
          If[k] = gauss::isoperimetric(std::clamp(g.f[k], 0.0, 1.0));
        }
        const double EIf = expectation(lvl.density, If);
        const double G = weighted_gradient_mean(lvl, g) / c;
        return gauss::isoperimetric(Ef) - std::hypot(EIf, G);
      },
      seed);
}

InequalityReport inverse_lsi_check(const GridDensity1D& density, std::span<const double> K,
                                   double c, std::span<const GridFunction> tests,
                                   std::uint64_t seed) {
  require_tests(tests, density, K);
  return detail::run_trials(
      "inverse_lsi", density, K, tests, tests.size(), test_labels(tests),
      [c](const Level& lvl, std::size_t i) {
        const auto& g = lvl.tests[i];
        const double G = weighted_gradient_mean(lvl, g);
        return 2.0 * c * c * entropy(lvl.density, g.f) * expectation(lvl.density, g.f) - G * G;
      },
      seed);
}

InequalityReport lsi_check(const GridDensity1D& density, std::span<const double> K, double alpha,
                           std::span<const GridFunction> tests, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw domain_error("lsi_check: alpha must be positive");
  require_tests(tests, density, K);
  return detail::run_trials(
      "lsi", density, K, tests, tests.size(), test_labels(tests),
      [alpha](const Level& lvl, std::size_t i) {
        const auto& g = lvl.tests[i];
        std::vector<double> kf2(g.f.size());
        std::vector<double> f2(g.f.size());
        for (std::size_t k = 0; k < f2.size(); ++k) {
          const double kf = lvl.K[k] * g.df[k];
          kf2[k] = kf * kf;
          f2[k] = g.f[k] * g.f[k];
        }
        return (2.0 / alpha) * expectation(lvl.density, kf2) - entropy(lvl.density, f2);
      },
      seed);
}

std::vector<Interval> interval_family(std::uint64_t seed, std::size_t count, double lo, double hi) {
  if (!(hi > lo)) throw domain_error("interval_family: empty window");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Interval> sets(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double a = lo + (hi - lo) * unit(gen);
    const double b = lo + (hi - lo) * unit(gen);
    switch (k % 4) {
      case 0: sets[k] = {-inf, a}; break;
      case 1: sets[k] = {a, inf}; break;
      default: sets[k] = {std::min(a, b), std::max(a, b)}; break;
    }
  }
  return sets;
}

InequalityReport explicit_shift_check(const GridDensity1D& density, double c,
                                      std::span<const double> shifts,
                                      std::span<const Interval> sets, std::uint64_t seed) {
  if (!(c > 0.0)) throw domain_error("explicit_shift_check: c must be positive");
  const std::size_t m = sets.size();
  const std::vector<double> ones(density.size(), 1.0);
  for (double h : shifts) {
    for (const auto& A : sets) {
      for (double e : {A.lo + h, A.hi + h}) {
        if (std::isfinite(e) && (e < density.x_min() || e > density.x_max())) {
          throw window_overflow("explicit_shift_check: shifted set leaves the grid window");
        }
      }
    }
  }
  return detail::run_trials(
      "explicit_shift", density, ones, {}, shifts.size() * m,
      [=](std::size_t i) { return detail::interval_label(shifts[i / m], sets[i % m]); },
      [=](const Level& lvl, std::size_t i) {
        const double h = shifts[i / m];
        const auto& A = sets[i % m];
        const double mass_A = detail::interval_mass(lvl.density, A.lo, A.hi);
        const double moved = detail::interval_mass(lvl.density, A.lo + h, A.hi + h);
        return detail::shift_margin(mass_A, moved, c * std::abs(h));
      },
      seed);
}

EntropyLimit entropy_limit_check(const GridDensity1D& density, std::span<const double> f,
                                 std::span<const double> eps_list) {
  if (f.size() != density.size()) throw std::invalid_argument("entropy_limit_check: size mismatch");
  const double f_max = *std::max_element(f.begin(), f.end());
  for (double eps : eps_list) {
    if (!(eps > 0.0) || !(eps * f_max < 1.0)) {
      throw domain_error("entropy_limit_check: need 0 < eps and eps * max f < 1");
    }
  }
  EntropyLimit out;
  const double Ef = expectation(density, f);
  out.target = 2.0 * entropy(density, f) * Ef;
  std::vector<double> If(f.size());
  for (double eps : eps_list) {
    for (std::size_t i = 0; i < f.size(); ++i) If[i] = gauss::isoperimetric(eps * f[i]);
    const double EIf = expectation(density, If);
    const double IEf = gauss::isoperimetric(eps * Ef);
    out.eps.push_back(eps);
    out.quotient.push_back((IEf - EIf) * (IEf + EIf) / (eps * eps));
  }
  for (std::size_t k = 1; k < out.quotient.size(); ++k) {
    if (std::abs(out.quotient[k] - out.target) > std::abs(out.quotient[k - 1] - out.target)) {
      out.monotone = false;
    }
  }
  return out;
}

}  // namespace verify
}  // namespace lzineq

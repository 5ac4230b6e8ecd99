#include <doctest.h>

// Worked examples and structural properties across modules.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lzineq/gauss.hpp"
#include "lzineq/grid_calculus.hpp"
#include "lzineq/lsi_weights.hpp"
#include "lzineq/measure.hpp"
#include "lzineq/verify.hpp"
#include "lzineq/zonoid.hpp"
#include "oracles.hpp"

using namespace lzineq;

namespace {

double sup_on(const GridDensity1D& d, std::span<const double> a, std::span<const double> b, double lo,
              double hi) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.x(i) >= lo && d.x(i) <= hi) m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

std::vector<double> tabulate(const GridDensity1D& d, double (*f)(double)) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = f(d.x(i));
  return out;
}

}  // namespace

TEST_CASE("normalization") {
  const auto u = normalize(GridDensity1D(0.0, 1.0, std::vector<double>(1001, 2.0)));
  for (double p : u.values()) CHECK(p == doctest::Approx(1.0).epsilon(1e-13));

  std::vector<double> raw(20001);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double x = -10.0 + 1e-3 * static_cast<double>(i);
    raw[i] = std::exp(-x * x / 2);
  }
  const auto g = normalize(GridDensity1D(-10.0, 10.0, raw));
  const auto phi = tabulate(g, gauss::normal_pdf);
  CHECK(sup_on(g, g.values(), phi, -10, 10) < 1e-8);
  const auto again = normalize(g);
  CHECK(sup_on(g, again.values(), g.values(), -10, 10) < 1e-12);
}

TEST_CASE("distribution functions of simple laws") {
  const auto g = builtin::gaussian();
  const auto u = builtin::uniform();
  CHECK(cdf(g, 0.0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(cdf(u, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(cdf(g, 1.0) - gauss::normal_cdf(1.0)) < 1e-8);
  CHECK(quantile(u, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(quantile(g, 0.9) - 1.2815515655446004) < 1e-5);
  CHECK(std::abs(quantile(u, cdf(u, 0.7)) - 0.7) < 1e-6);
  for (int k = 1; k < 200; ++k) {
    const double p = k / 200.0;
    CHECK(std::abs(cdf(g, quantile(g, p)) - p) < 1e-6);
  }
}

TEST_CASE("log gradient examples") {
  const auto g = builtin::gaussian();
  const auto v = log_gradient(g);
  const auto minus_x = tabulate(g, [](double x) { return -x; });
  CHECK(sup_on(g, v, minus_x, -5, 5) < 2e-4);

  const auto u = builtin::uniform();
  const auto vu = log_gradient(u);
  for (double s : vu) CHECK(std::abs(s) < 1e-12);

  const auto e = builtin::exp1();
  const auto ve = log_gradient(e);
  for (std::size_t i = 1; i + 1 < e.size(); i += 101) CHECK(std::abs(ve[i] + 1.0) < 1e-6);
}

TEST_CASE("divergence examples") {
  const auto g = builtin::gaussian();
  const std::vector<double> one(g.size(), 1.0), zero(g.size(), 0.0);
  const auto x = tabulate(g, [](double t) { return t; });
  CHECK(sup_on(g, divergence_1d(one, g), x, -5, 5) < 2e-4);
  for (double s : divergence_1d(zero, g)) CHECK(s == 0.0);
  CHECK(sup_on(g, divergence_1d(lsi::khat(g), g), x, -5, 5) < 2e-4);
}

TEST_CASE("integration by parts on the grid") {
  const auto g = builtin::gaussian();
  const auto v = log_gradient(g);
  const auto bumps = verify::bump_family(5, 20, -6.0, 6.0);
  std::vector<double> K(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) K[i] = 1.0 + 0.5 * std::sin(g.x(i));
  const auto pair = make_weight_pair(K, g);
  for (const auto& b : bumps) {
    const auto f = verify::sample(b, g);
    std::vector<double> vf(g.size()), Kf(g.size()), fv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      vf[i] = v[i] * f.f[i];
      Kf[i] = K[i] * f.df[i];
      fv[i] = f.f[i] * pair.v[i];
    }
    CHECK(std::abs(expectation(g, f.df) + expectation(g, vf)) <= 1e-5);
    CHECK(std::abs(expectation(g, Kf) - expectation(g, fv)) <= 1e-5);
  }
}

TEST_CASE("entropy scaling") {
  const auto g = builtin::gaussian();
  const auto f = verify::sample(verify::TestBump{0.2, 2.0, 0.8}, g);
  const double e1 = entropy(g, f.f);
  for (double lambda : {0.1, 2.0, 17.0}) {
    std::vector<double> lf(f.f);
    for (double& s : lf) s *= lambda;
    CHECK(std::abs(entropy(g, lf) - lambda * e1) < 1e-10);
  }
}

TEST_CASE("support function of small discrete laws") {
  const auto pm = DiscreteMeasure::uniform_1d({-1.0, 1.0});
  CHECK(lift_support(pm, {0.0, {1.0}}) == doctest::Approx(0.5));
  CHECK(lift_support(pm, {0.7, {0.0}}) == doctest::Approx(0.7));
  const DiscreteMeasure three(1, {3.0, 1.0, 2.0}, {0.5, 0.25, 0.25});
  CHECK(lift_support(three, {-2.0, {1.0}}) == doctest::Approx(0.5));
  CHECK(section_extremum(three, 0.6, std::vector<double>{1.0}) == doctest::Approx(1.7));
  CHECK(section_extremum(three, 0.0, std::vector<double>{1.0}) == 0.0);
  CHECK(section_extremum(three, 1.0, std::vector<double>{1.0}) == doctest::Approx(2.25));
  CHECK(lift_support_gaussian(1.0, {0.0, {1.0}}) == doctest::Approx(gauss::kInvSqrt2Pi));
  CHECK(lift_support_gaussian(3.0, {1.0, {0.0}}) == 1.0);
}

TEST_CASE("support function is sublinear and centrally symmetric") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> z;
  std::vector<double> xs(30), ws(30, 1.0);
  for (double& x : xs) x = z(gen);
  const DiscreteMeasure m(1, xs, ws, true);
  const double mu = m.mean()[0];
  for (int k = 0; k < 200; ++k) {
    const LiftSupportQuery a{z(gen), {z(gen)}}, b{z(gen), {z(gen)}};
    const LiftSupportQuery s{a.t + b.t, {a.u[0] + b.u[0]}};
    CHECK(lift_support(m, s) <= lift_support(m, a) + lift_support(m, b) + 1e-12);
    CHECK(lift_support_gaussian(1.3, s) <= lift_support_gaussian(1.3, a) + lift_support_gaussian(1.3, b) + 1e-12);
    const double lam = std::exp(z(gen));
    CHECK(lift_support(m, {lam * a.t, {lam * a.u[0]}}) == doctest::Approx(lam * lift_support(m, a)).epsilon(1e-12));
    const double center = 0.5 * a.t + 0.5 * mu * a.u[0];
    CHECK(std::abs((lift_support(m, a) - center) - (lift_support(m, {-a.t, {-a.u[0]}}) + center)) < 1e-10);
  }
}

TEST_CASE("order check examples") {
  const auto far = DiscreteMeasure::uniform_1d({-2.0, 2.0});
  const auto cert = order_check(far, 0.1);
  CHECK_FALSE(cert.dominated);
  REQUIRE(cert.witness.has_value());
  CHECK(std::abs(cert.witness->alpha - 0.5) < 0.01);

  const auto zero = DiscreteMeasure::uniform_1d({0.0});
  CHECK(minimal_dominating_c(zero) == 0.0);

  // min(a, 1-a)/I(a) peaks at a = 1/2 on the default grid.
  const auto pm = DiscreteMeasure::uniform_1d({-1.0, 1.0});
  const double c = minimal_dominating_c(pm);
  CHECK(c == doctest::Approx(0.5 / gauss::isoperimetric(0.5)).epsilon(1e-12));
  CHECK(order_check(pm, 1.01 * c).dominated);
  for (double cc : {1.3, 1.5, 3.0}) CHECK(order_check(pm, cc).dominated);

  const auto g2 = builtin::gaussian_c(2.0);
  const auto sample = pushforward_sample(g2, [](double x) { return x; }, 4000, 3);
  CHECK_FALSE(order_check(sample, 1.5).dominated);
}

TEST_CASE("moment bracket for the unit gaussian") {
  const auto g = builtin::gaussian();
  const auto b = eps_moment_search(g, g.nodes());
  CHECK(b.c_lower == doctest::Approx(1 / std::sqrt(6 * 0.375)).epsilon(1e-5));
  CHECK(b.c_upper == doctest::Approx(4 / std::sqrt(0.375)).epsilon(1e-5));
  CHECK(eps_moment_search(DiscreteMeasure::uniform_1d({-1.0, 1.0})).eps ==
        doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("weights: symmetric form, uniform profile, ratio form") {
  const auto l = builtin::laplace();
  const auto up = lsi::kbar(l, lsi::TailSide::upper);
  const auto lo = lsi::kbar(l, lsi::TailSide::lower);
  for (std::size_t i = 15000; i <= 35000; i += 500) CHECK(std::abs(up[i] - lo[i]) < 1e-8);

  const auto u = builtin::uniform();
  const auto ku = lsi::khat(u);
  CHECK(*std::max_element(ku.begin(), ku.end()) == doctest::Approx(gauss::kInvSqrt2Pi).epsilon(1e-12));
  for (double p : {0.1, 0.5, 0.9}) CHECK(lsi::iso_function(u, p) == doctest::Approx(1.0).epsilon(1e-9));

  for (const auto& d : {builtin::laplace(), verify::puncture_measure(1.0), builtin::gaussian_c(0.7)}) {
    const auto K = lsi::khat(d);
    const auto w = lsi::trusted_window(d);
    double sup = 0.0;
    for (std::size_t i = w.first; i <= w.last; ++i) sup = std::max(sup, K[i]);
    CHECK(lsi::chat_ratio_form(d) == doctest::Approx(sup * sup).epsilon(1e-5));
  }
}

TEST_CASE("khat divergence is the normal score") {
  const auto score_error = [](const GridDensity1D& d, bool slope) {
    const auto K = lsi::khat(d);
    const auto pair = make_weight_pair(K, d);
    const auto w = lsi::trusted_window(d);
    const auto dv = derivative(pair.v, d.step(), d.breakpoints());
    double err = 0.0;
    for (std::size_t i = w.first + 2; i + 2 <= w.last; ++i) {
      const double F = cdf(d, d.x(i));
      const double z = F <= 0.5 ? gauss::normal_quantile(F) : -gauss::normal_quantile(sf(d, d.x(i)));
      const double e = slope ? K[i] * dv[i] - 1.0 : pair.v[i] - z;
      err = std::max(err, std::abs(e));
    }
    return err;
  };
  CHECK(score_error(builtin::laplace(), false) < 1e-4);
  CHECK(score_error(verify::puncture_measure(1.0), false) < 1e-4);
  // K v' = 1 needs v'' on both sides, so only smooth laws.
  CHECK(score_error(builtin::gaussian_c(0.7), true) < 1e-4);
  CHECK(score_error(builtin::gaussian(), true) < 1e-4);
}

TEST_CASE("normal score pushes the law to N(0,1)") {
  const auto l = builtin::laplace();
  const auto s = pushforward_sample(
      l, [&](double x) { return gauss::normal_quantile(std::clamp(cdf(l, x), 1e-300, 1 - 1e-16)); },
      100000, 8, false);
  // 1% critical value of the KS statistic at n = 1e5.
  CHECK(oracle::ks_normal({s.coords().begin(), s.coords().end()}) < 1.628 / std::sqrt(1e5));
}

TEST_CASE("inequality family relations") {
  const auto g = builtin::gaussian();
  const std::vector<double> K(g.size(), 1.0);
  const auto tests = verify::sample(verify::bump_family(13, 25, -6.0, 6.0), g);
  const auto b1 = verify::functional_shift_check(g, K, 1.0, tests);
  const auto b2 = verify::iso_form_check(g, K, 1.0, tests);
  for (std::size_t i = 0; i < tests.size(); ++i) CHECK(b2.margins[i] <= b1.margins[i] + 1e-15);

  std::vector<verify::GridFunction> scaled(tests);
  for (auto& t : scaled) {
    for (double& s : t.f) s *= 3.0;
    for (double& s : t.df) s *= 3.0;
  }
  const auto i1 = verify::inverse_lsi_check(g, K, 1.0, tests);
  const auto i3 = verify::inverse_lsi_check(g, K, 1.0, scaled);
  for (std::size_t i = 0; i < tests.size(); ++i) CHECK(i3.margins[i] == doctest::Approx(9.0 * i1.margins[i]).epsilon(1e-9));

  const std::vector<verify::GridFunction> flat = {verify::constant_function(0.3, g)};
  CHECK(std::abs(verify::iso_form_check(g, K, 1.0, flat).worst_margin) < 1e-12);
  const std::vector<verify::GridFunction> nil = {verify::constant_function(0.0, g)};
  CHECK(verify::functional_shift_check(g, K, 1.0, nil).worst_margin == 0.0);
}

TEST_CASE("explicit shifts on random intervals") {
  const auto g = builtin::gaussian();
  const auto sets = verify::interval_family(4, 40, -3.0, 3.0);
  const std::vector<double> hs = {-1.0, -0.3, 0.3, 1.0};
  CHECK_FALSE(verify::explicit_shift_check(g, 1.0, hs, sets).violated);
  const std::vector<double> none = {0.0};
  CHECK(std::abs(verify::explicit_shift_check(g, 1.0, none, sets).worst_margin) < 1e-15);
}

TEST_CASE("flows with trivial data") {
  const auto g = builtin::gaussian();
  const std::vector<double> K(g.size(), 1.0);
  const std::vector<double> xs = {-1.0, 0.25};
  const auto r = verify::flow_map(K, g, 0.0, xs, 1.0);
  CHECK(r.grid_map == xs);
  const std::vector<double> ys = {1.0, 2.0};
  const auto e = verify::flow_map([](double x) { return x; }, ys, 0.5);
  for (std::size_t i = 0; i < ys.size(); ++i) CHECK(std::abs(e.grid_map[i] - ys[i] * std::exp(0.5)) < 1e-8);
}

TEST_CASE("example laws") {
  const auto d = verify::example1_density(1.0, 1.0, 3.0, 0.0);
  CHECK(d.mass() == doctest::Approx(1.0));
  for (double x : {-2.0, 0.0, 1.5}) CHECK(std::abs(cdf(d, x) - gauss::normal_cdf(x)) < 1e-8);

  const auto p0 = verify::puncture_measure(0.0);
  CHECK(lsi::chat_ratio_form(p0) == doctest::Approx(1.0).epsilon(1e-6));
  for (double R : {0.1, 0.5, 1.0, 5.0}) CHECK(verify::puncture_constant(R) > 1.0);

  const auto p1 = verify::puncture_measure(1.0);
  const double C = verify::puncture_constant(1.0);
  CHECK(std::abs(p1.mass() - 1.0) < 1e-8);
  const auto bp = p1.breakpoints();
  CHECK(p1.values()[bp[0]] == doctest::Approx(C * gauss::kInvSqrt2Pi).epsilon(1e-12));
  CHECK(p1.values()[bp[1]] == doctest::Approx(C * gauss::normal_pdf(2.0)).epsilon(1e-12));
  // Continuity across the breakpoints.
  CHECK(std::abs(p1.values()[bp[0] - 1] - p1.values()[bp[0] + 1]) < 1e-3);
  CHECK(std::abs(p1.values()[bp[1] - 1] - p1.values()[bp[1] + 1]) < 1e-3);
}

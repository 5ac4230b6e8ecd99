#include "lzineq/lsi_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lzineq/errors.hpp"
#include "lzineq/gauss.hpp"
#include "lzineq/grid_calculus.hpp"

namespace lzineq::lsi {
namespace {

constexpr double kTruncatedEdge = 1e-10;
constexpr double kTrustRatio = 1e-8;

void require_positive(const GridDensity1D& density, const char* what) {
  for (double p : density.values()) {
    if (!(p > 0.0)) throw division_error(std::string(what) + ": density vanishes on the grid");
  }
}

// True when the extremum at `edge` differs from the value a few nodes
// inward, i.e. the weight is still moving when the window cuts it off.
bool trending(std::span<const double> K, std::size_t edge, std::size_t inward) {
  const double scale = std::max(1.0, std::abs(K[edge]));
  return std::abs(K[edge] - K[inward]) > 1e-8 * scale;
}

}  // namespace

std::vector<double> kbar(const GridDensity1D& density, TailSide side) {
  require_positive(density, "kbar");
  const double m = mean(density);
  const std::size_t n = density.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = (density.x(i) - m) * density.values()[i];
  const auto up = cumulative_from_right(g, density.step(), density.breakpoints());
  const auto lo = cumulative_from_left(g, density.step(), density.breakpoints());
  std::vector<double> K(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool use_upper = side == TailSide::upper;
    if (side == TailSide::automatic) use_upper = density.x(i) >= m;
    const double tail = use_upper ? up[i] : -lo[i];
    K[i] = tail / density.mass() / density.values()[i];
  }
  return K;
}

std::vector<double> khat(const GridDensity1D& density) {
  require_positive(density, "khat");
  const auto F = cdf_table(density);
  const auto S = sf_table(density);
  std::vector<double> K(density.size());
  const double log_mass = std::log(density.mass());
  for (std::size_t i = 0; i < K.size(); ++i) {
    const double q = std::min(F[i], S[i]);
    K[i] = q > 0.0
               ? std::exp(gauss::log_isoperimetric(q) - (density.log_value(i) - log_mass))
               : 0.0;
  }
  return K;
}

Window trusted_window(const GridDensity1D& density) {
  const auto p = density.values();
  const std::size_t n = p.size();
  const double p_max = *std::max_element(p.begin(), p.end());
  const bool left_tail = p.front() <= kTruncatedEdge * p_max;
  const bool right_tail = p.back() <= kTruncatedEdge * p_max;
  const auto trusted = [&](std::size_t i) {
    if (left_tail && !(p.front() <= kTrustRatio * p[i])) return false;
    if (right_tail && !(p.back() <= kTrustRatio * p[i])) return false;
    return true;
  };
  Window w{0, n - 1};
  while (w.first < n && !trusted(w.first)) ++w.first;
  if (w.first == n) throw invalid_density("trusted_window: no node is clear of the window tails");
  while (w.last > w.first && !trusted(w.last)) --w.last;
  return w;
}

LsiConstants lsi_constants(std::span<const double> K, const GridDensity1D& density,
                           WeightKind kind) {
  if (K.size() != density.size()) throw std::invalid_argument("lsi_constants: size mismatch");
  const Window w = trusted_window(density);
  const auto first = K.begin() + static_cast<std::ptrdiff_t>(w.first);
  const auto last = K.begin() + static_cast<std::ptrdiff_t>(w.last) + 1;
  const auto [min_it, max_it] = std::minmax_element(first, last);
  const std::size_t i_min = static_cast<std::size_t>(min_it - K.begin());
  const std::size_t i_max = static_cast<std::size_t>(max_it - K.begin());
  const std::size_t span = w.last - w.first;
  const std::size_t probe = std::min<std::size_t>(10, span);

  LsiConstants c;
  c.kind = kind;
  c.x_lo = density.x(w.first);
  c.x_hi = density.x(w.last);
  c.beta = *max_it;
  const auto at_edge = [&](std::size_t i) {
    if (i == w.first && w.first > 0) return trending(K, i, i + probe);
    if (i == w.last && w.last + 1 < density.size()) return trending(K, i, i - probe);
    return false;
  };
  c.sup_at_edge = at_edge(i_max);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (kind == WeightKind::kbar) {
    c.alpha = *min_it;
    c.inf_at_edge = at_edge(i_min);
    c.available = c.alpha > 0.0;
    c.c_weighted = c.available ? 1.0 / c.alpha : nan;
    c.c_classical = c.available ? c.beta * c.beta / c.alpha : nan;
  } else {
    c.alpha = 1.0;
    c.available = std::isfinite(c.beta);
    c.c_weighted = 1.0;
    c.c_classical = c.available ? c.beta * c.beta : nan;
  }
  return c;
}

LsiConstants lsi_constants(const GridDensity1D& density, WeightKind kind) {
  const auto K = kind == WeightKind::kbar ? kbar(density) : khat(density);
  return lsi_constants(K, density, kind);
}

double iso_function(const GridDensity1D& density, double p) {
  const double x = quantile(density, p);
  if (density.has_log_values()) {
    std::vector<double> logs(density.log_values().begin(), density.log_values().end());
    return std::exp(interpolate(density, logs, x)) / density.mass();
  }
  return interpolate(density, density.values(), x) / density.mass();
}

double chat_ratio_form(const GridDensity1D& density, std::size_t n_probs) {
  if (n_probs < 2) throw std::invalid_argument("chat_ratio_form: need at least 2 probabilities");
  const Window w = trusted_window(density);
  const auto F = cdf_table(density);
  const double p_lo = std::max(F[w.first], 1e-300);
  const double p_hi = F[w.last];
  std::vector<double> logs(density.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = density.log_value(i);
  const double log_mass = std::log(density.mass());
  double best = 0.0;
  for (std::size_t k = 0; k < n_probs; ++k) {
    const double p = p_lo + (p_hi - p_lo) * static_cast<double>(k) / static_cast<double>(n_probs - 1);
    if (!(p > 0.0 && p < 1.0)) continue;
    const double log_imu = interpolate(density, logs, quantile(density, p)) - log_mass;
    const double r = std::exp(gauss::log_isoperimetric(p) - log_imu);
    best = std::max(best, r * r);
  }
  return best;
}

BakryEmery bakry_emery_check(const WeightPair& pair, const GridDensity1D& density) {
  const std::size_t n = density.size();
  if (pair.K.size() != n || pair.v.size() != n) {
    throw std::invalid_argument("bakry_emery_check: weight pair does not match the grid");
  }
  Window interior = trusted_window(density);
  if (interior.last < interior.first + 6) throw domain_error("bakry_emery_check: window too small");
  interior.first += 2;
  interior.last -= 2;
  for (std::size_t i = interior.first; i <= interior.last; ++i) {
    if (!(pair.K[i] > 0.0)) throw domain_error("bakry_emery_check: K must be positive");
  }
  const double h = density.step();
  const auto bps = density.breakpoints();
  const auto vmu = log_gradient(density);
  const auto dK = derivative(pair.K, h, bps);
  const auto dv = derivative(pair.v, h, bps);

  BakryEmery out;
  out.interior = interior;
  out.a_coeff.resize(n);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double K = pair.K[i];
    out.a_coeff[i] = 2.0 * K * dK[i] + K * K * vmu[i];
    b[i] = K * K;
  }
  const auto da = derivative(out.a_coeff, h, bps);
  const auto db = derivative(b, h, bps);
  const auto d2b = derivative(db, h, bps);

  out.alpha_max = std::numeric_limits<double>::infinity();
  out.alpha_gamma2 = std::numeric_limits<double>::infinity();
  std::vector<double> lhs(n, 0.0);
  for (std::size_t i = interior.first; i <= interior.last; ++i) {
    out.alpha_max = std::min(out.alpha_max, pair.K[i] * dv[i]);
    lhs[i] = 2.0 * out.a_coeff[i] * db[i] + 2.0 * b[i] * d2b[i] - 4.0 * da[i] * b[i] -
             db[i] * db[i];
    out.alpha_gamma2 = std::min(out.alpha_gamma2, lhs[i] / (4.0 * b[i]));
  }
  out.gamma2_residual.assign(n, 0.0);
  for (std::size_t i = interior.first; i <= interior.last; ++i) {
    out.gamma2_residual[i] = lhs[i] - 4.0 * out.alpha_max * b[i];
  }
  return out;
}

}  // namespace lzineq::lsi

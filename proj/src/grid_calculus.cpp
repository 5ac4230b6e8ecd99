#include "lzineq/grid_calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace lzineq {
namespace {

bool is_breakpoint(std::span<const std::size_t> bps, std::size_t i) {
  return std::binary_search(bps.begin(), bps.end(), i);
}

double forward_stencil(std::span<const double> f, std::size_t i, double h) {
  if (i + 2 < f.size()) return (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) / (2.0 * h);
  return (f[i + 1] - f[i]) / h;
}

double backward_stencil(std::span<const double> f, std::size_t i, double h) {
  if (i >= 2) return (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h);
  return (f[i] - f[i - 1]) / h;
}

}  // namespace

OneSidedDerivatives one_sided_derivatives(std::span<const double> f, double h,
                                          std::span<const std::size_t> breakpoints) {
  const std::size_t n = f.size();
  if (n < 3) throw std::invalid_argument("one_sided_derivatives: need at least 3 samples");
  OneSidedDerivatives d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (is_breakpoint(breakpoints, i)) {
      d.left[i] = backward_stencil(f, i, h);
      d.right[i] = forward_stencil(f, i, h);
    } else {
      d.left[i] = d.right[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
  }
  d.left[0] = d.right[0] = forward_stencil(f, 0, h);
  d.left[n - 1] = d.right[n - 1] = backward_stencil(f, n - 1, h);
  return d;
}

std::vector<double> derivative(std::span<const double> f, double h,
                               std::span<const std::size_t> breakpoints) {
  auto d = one_sided_derivatives(f, h, breakpoints);
  for (std::size_t i = 0; i < f.size(); ++i) d.left[i] = 0.5 * (d.left[i] + d.right[i]);
  return std::move(d.left);
}

std::vector<double> panel_integrals(std::span<const double> f, double h,
                                    std::span<const std::size_t> breakpoints) {
  const auto d = one_sided_derivatives(f, h, breakpoints);
  const double corr = h * h / 12.0;
  std::vector<double> panels(f.size() - 1);
  for (std::size_t j = 0; j + 1 < f.size(); ++j) {
    panels[j] = 0.5 * h * (f[j] + f[j + 1]) - corr * (d.left[j + 1] - d.right[j]);
  }
  return panels;
}

double integrate(std::span<const double> f, double h, std::span<const std::size_t> breakpoints) {
  const auto panels = panel_integrals(f, h, breakpoints);
  double sum = 0.0;
  for (double p : panels) sum += p;
  return sum;
}

std::vector<double> cumulative_from_left(std::span<const double> f, double h,
                                         std::span<const std::size_t> breakpoints) {
  const auto panels = panel_integrals(f, h, breakpoints);
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t j = 0; j < panels.size(); ++j) out[j + 1] = out[j] + panels[j];
  return out;
}

std::vector<double> cumulative_from_right(std::span<const double> f, double h,
                                          std::span<const std::size_t> breakpoints) {
  const auto panels = panel_integrals(f, h, breakpoints);
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t j = panels.size(); j-- > 0;) out[j] = out[j + 1] + panels[j];
  return out;
}

}  // namespace lzineq

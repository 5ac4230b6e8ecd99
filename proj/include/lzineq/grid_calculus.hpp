#pragma once

// Derivatives and quadrature for samples on a uniform grid.
//
// Derivatives are second-order central differences in the interior and
// second-order one-sided stencils at the window ends. Nodes listed as
// breakpoints mark places where the sampled function is continuous but its
// derivative jumps; there the left and right one-sided derivatives are
// formed separately and the pointwise derivative is their mean.
//
// Quadrature is the trapezoid rule with Euler-Maclaurin end corrections,
// applied piecewise between breakpoints. On smooth pieces the error is
// O(h^4).

#include <cstddef>
#include <span>
#include <vector>

namespace lzineq {

struct OneSidedDerivatives {
  std::vector<double> left;
  std::vector<double> right;
};

OneSidedDerivatives one_sided_derivatives(std::span<const double> f, double h,
                                          std::span<const std::size_t> breakpoints = {});

std::vector<double> derivative(std::span<const double> f, double h,
                               std::span<const std::size_t> breakpoints = {});

/// Corrected-trapezoid integral over the whole window.
double integrate(std::span<const double> f, double h,
                 std::span<const std::size_t> breakpoints = {});

/// Panel integrals: element j approximates the integral over [x_j, x_{j+1}].
std::vector<double> panel_integrals(std::span<const double> f, double h,
                                    std::span<const std::size_t> breakpoints = {});

/// Running integral from the left end: out[i] approximates int_{x_0}^{x_i} f.
std::vector<double> cumulative_from_left(std::span<const double> f, double h,
                                         std::span<const std::size_t> breakpoints = {});

/// Running integral to the right end: out[i] approximates int_{x_i}^{x_{n-1}} f.
std::vector<double> cumulative_from_right(std::span<const double> f, double h,
                                          std::span<const std::size_t> breakpoints = {});

}  // namespace lzineq

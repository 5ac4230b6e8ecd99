#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "lzineq/verify.hpp"

namespace lzineq::detail {

/// One resolution of a check: density, weight and test functions.
struct Level {
  const GridDensity1D& density;
  std::span<const double> K;
  std::span<const verify::GridFunction> tests;
};

using LabelFn = std::function<std::string(std::size_t)>;
using MarginFn = std::function<double(const Level&, std::size_t)>;

/// Evaluates `margin` for every trial on the grid, and again on the
/// half-resolution grid for the error estimate.
verify::InequalityReport run_trials(const std::string& name, const GridDensity1D& density,
                                    std::span<const double> K,
                                    std::span<const verify::GridFunction> tests, std::size_t count,
                                    const LabelFn& label, const MarginFn& margin,
                                    std::uint64_t seed);

double interval_mass(const GridDensity1D& density, double lo, double hi);
/// min(moved - S_r(mass_A), R_r(mass_A) - moved).
double shift_margin(double mass_A, double mass_moved, double r);
std::string interval_label(double h, const verify::Interval& A);

}  // namespace lzineq::detail

#pragma once

// Fine and half-resolution copies of a grid problem, used to estimate the
// discretisation error of a margin by comparing the two.

#include <optional>
#include <span>
#include <vector>

#include "lzineq/measure.hpp"

namespace lzineq::detail {

/// Every other node of `fine`. Empty when a breakpoint sits on an odd node.
std::optional<GridDensity1D> coarsen(const GridDensity1D& fine);

/// Every other entry, truncated to `n` entries.
std::vector<double> subsample(std::span<const double> f, std::size_t n);

}  // namespace lzineq::detail

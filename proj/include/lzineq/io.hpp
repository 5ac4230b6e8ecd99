#pragma once

// Reading densities and discrete measures from files.
//
// Density input is either a JSON object {"x_min": r, "x_max": r, "values": [...]}
// (optionally with "log_values") or CSV rows "x,p" on a uniform grid.
// Discrete measures are CSV rows of d coordinates followed by a weight.
// A non-numeric first CSV line is taken as a header. Malformed input raises
// lzineq::input_error naming the offending field.

#include <filesystem>
#include <string_view>

#include "lzineq/measure.hpp"

namespace lzineq::io {

GridDensity1D parse_density_json(std::string_view text);
GridDensity1D parse_density_csv(std::string_view text);
DiscreteMeasure parse_discrete_csv(std::string_view text);

/// Dispatches on the extension (.json or .csv), falling back to sniffing
/// the first character.
GridDensity1D read_density(const std::filesystem::path& path);
DiscreteMeasure read_discrete(const std::filesystem::path& path);

}  // namespace lzineq::io

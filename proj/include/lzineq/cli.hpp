#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lzineq::cli {

enum class Command { constants, order, verify, puncture_sweep, example1 };
enum class Format { json, csv };

struct RunConfig {
  Command command = Command::constants;
  std::optional<std::string> input;
  /// Built-in law used when no input file is given.
  std::string measure = "gaussian";
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<std::size_t> n;
  std::optional<double> c;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  Format format = Format::json;
  std::vector<double> R = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0};
  std::size_t trials = 50;
  /// identity, kbar or khat.
  std::string weight = "identity";
  std::size_t samples = 10000;
  std::size_t n_dirs = 64;
  std::size_t n_alphas = 512;
  double a = 2.0;
  double b = 0.5;
  double amplitude = 1.0;
  std::size_t stride = 100;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Executes one command. Returns 0 on success, 1 when a violation (or a
/// failed domination test) is found, 2 on input errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs; usage errors exit with status 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lzineq::cli

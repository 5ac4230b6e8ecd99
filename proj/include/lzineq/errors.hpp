#pragma once

#include <stdexcept>
#include <string>

namespace lzineq {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quantile requested at p = 0 or p = 1 of a law with unbounded support.
class infinite_quantile : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Density samples that cannot describe a probability law.
class invalid_density : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Division by a vanishing density value (log-gradient, weights).
class division_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// No positive exponent keeps the square-exponential moment below 2.
class heavy_tail_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive ODE integration could not meet its tolerance.
class integration_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A flowed point or shifted set left the tabulated window.
class window_overflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; `field()` names the offending entry.
class input_error : public std::runtime_error {
 public:
  input_error(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace lzineq

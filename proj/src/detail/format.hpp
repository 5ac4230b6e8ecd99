#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace lzineq::detail {

// Shortest decimal string that reads back to the same double.
inline std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace lzineq::detail

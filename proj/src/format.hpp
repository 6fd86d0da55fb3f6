#ifndef BRALPHA_SRC_FORMAT_HPP
#define BRALPHA_SRC_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace bralpha::detail {

/// Shortest text that parses back to the same double; "nan" for NaN.
inline std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bralpha::detail

#endif  // BRALPHA_SRC_FORMAT_HPP

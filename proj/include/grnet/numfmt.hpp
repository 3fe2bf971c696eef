#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace grnet::detail {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string round_trip(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// 6 significant digits, trailing zeros stripped. Human-facing tables.
inline std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// 6 significant digits, trailing zeros kept. Fixed-width graph attributes.
inline std::string sig6_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.6g", v);
  return buf;
}

}  // namespace grnet::detail

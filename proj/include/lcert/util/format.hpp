#pragma once

#include <charconv>
#include <string>

namespace lcert {

/// Shortest round-trip decimal form; stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

}  // namespace lcert

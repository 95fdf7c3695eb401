#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace voxnav::harness {

/// Shortest exact decimal form of a double ("0.25", "1e-05", ...); the same
/// bytes for the same value on every run.
inline std::string num_str(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

inline std::string num_str(int value) { return std::to_string(value); }

}  // namespace voxnav::harness

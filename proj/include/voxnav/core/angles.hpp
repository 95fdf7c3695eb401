#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace voxnav {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into (-pi, pi]. The -pi boundary maps to +pi.
inline double wrap_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("wrap_angle: non-finite input");
  }
  double r = std::fmod(theta, kTwoPi);
  if (r > kPi) {
    r -= kTwoPi;
  } else if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

}  // namespace voxnav

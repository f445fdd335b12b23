#pragma once

#include <cmath>
#include <numbers>

namespace phasedist {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi).
inline double principal_angle_2pi(double x) noexcept {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Reduces an angle into [-pi, pi). P(pi) = -pi.
inline double principal_angle_pi(double x) noexcept {
  double r = principal_angle_2pi(x + kPi) - kPi;
  if (r >= kPi) r = -kPi;
  return r;
}

/// Four-quadrant phase in [-pi, pi) with phase(0, 0) = 0.
inline double phase_of(double re, double im) noexcept {
  if (re == 0.0 && im == 0.0) return 0.0;
  return principal_angle_pi(std::atan2(im, re));
}

/// Shortest signed circular distance from `b` to `a`, in [-pi, pi).
inline double circular_difference(double a, double b) noexcept {
  return principal_angle_pi(a - b);
}

/// Angle expressed in units of pi (CSV convention).
inline double in_pi_units(double radians) noexcept { return radians / kPi; }

}  // namespace phasedist

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wpnc {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double log_two_pi = 1.8378770664093454836;

// Principal angle in [-pi, pi).  wrap(pi) == -pi, and the result never
// touches +pi even when rounding pushes the fmod remainder onto the seam.
inline double wrap(double x) {
  if (!std::isfinite(x)) throw std::domain_error("wrap: angle must be finite");
  double r = std::fmod(x + pi, two_pi);
  if (r < 0.0) r += two_pi;
  double out = r - pi;
  return out >= pi ? -pi : out;
}

// Distance on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::fabs(wrap(a - b));
}

}  // namespace wpnc

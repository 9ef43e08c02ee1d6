#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "angles.hpp"

namespace wpnc {

namespace detail {

inline void require_rate(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("bounds: gamma must be positive and finite");
  }
}

inline void require_duration(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::domain_error("bounds: delta must be positive and finite");
  }
}

}  // namespace detail

// Correction term of the wrapped-entropy lower bound, with u = gamma^2 delta:
//   1/2 erf(pi/sqrt(2u))
//     - (e^{-pi^2/2u} / sqrt(2 pi u)) [ pi + 4 (pi + u/pi) / (1 - e^{-pi^2/u}) ]
//     - 1/2.
// Always negative, vanishing as u -> 0.  The erf term enters as -erfc/2, and
// the geometric factor stays in log domain, so both pieces keep their sign
// down to the underflow floor instead of cancelling against 1/2.
inline double entropy_correction(double gamma, double delta) {
  detail::require_rate(gamma);
  detail::require_duration(delta);
  double u = gamma * gamma * delta;
  double y = pi * pi / u;
  double tail = std::exp(-0.5 * y) / std::sqrt(two_pi * u);
  double geo = std::exp(-0.5 * y - std::log(-std::expm1(-y)));
  return -0.5 * std::erfc(pi / std::sqrt(2.0 * u)) - pi * tail
         - 4.0 * (pi + u / pi) * geo / std::sqrt(two_pi * u);
}

// Lower bound on the entropy of the wrapped increment:
//   1/2 log(2 pi e gamma^2 delta) + entropy_correction.
inline double entropy_lower_bound(double gamma, double delta) {
  double u = gamma * gamma * delta;
  return 0.5 * std::log(two_pi * std::numbers::e * u) + entropy_correction(gamma, delta);
}

// Per-sample rate bound carried by the phase:
//   1/2 log(2 pi / (e gamma^2)) - 1/2 log(delta) - entropy_correction.
// Equals log(2 pi) - entropy_lower_bound(gamma, delta).
inline double phase_upper_bound(double gamma, double delta) {
  detail::require_rate(gamma);
  detail::require_duration(delta);
  return 0.5 * std::log(two_pi / (std::numbers::e * gamma * gamma))
         - 0.5 * std::log(delta) - entropy_correction(gamma, delta);
}

// Rate carried by the magnitude: 1/2 log(1 + snr) - 1/2 log 2.
inline double amplitude_upper_bound(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw std::domain_error("amplitude_upper_bound: snr must be nonnegative and finite");
  }
  return 0.5 * std::log1p(snr) - 0.5 * std::log(2.0);
}

namespace detail {

inline void require_exponent(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("bounds: alpha must lie in [0, 1]");
  }
}

}  // namespace detail

// Capacity growth exponents as a function of the oversampling exponent.
// The two curves coincide on [0, 1/2] and split by (alpha - 1/2)/2 beyond.
inline double prelog_upper(double alpha) {
  detail::require_exponent(alpha);
  return (1.0 + alpha) / 2.0;
}

inline double prelog_lower(double alpha) {
  detail::require_exponent(alpha);
  return 0.5 + std::min(0.5 * alpha, 0.25);
}

// Samples per symbol for the snr-coupled regime: ceil(snr^alpha).
inline long long oversampling_for(double snr, double alpha) {
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw std::domain_error("oversampling_for: snr must be positive and finite");
  }
  detail::require_exponent(alpha);
  double L = std::ceil(std::pow(snr, alpha));
  if (L >= 9.2e18) throw std::domain_error("oversampling_for: snr^alpha overflows");
  return L < 1.0 ? 1 : static_cast<long long>(L);
}

struct BoundReport {
  double snr = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  long long oversampling = 1;  // L = ceil(snr^alpha)
  double delta = 1.0;          // 1 / L
  double amplitude_bound = 0.0;
  double phase_bound = 0.0;    // 1/2 log(2 pi / (e gamma^2)) + 1/2 log L
  double g_value = 0.0;        // entropy_correction(gamma, 1/L)
  double capacity_upper = 0.0;
  double prelog_upper = 0.0;
  double prelog_lower = 0.0;
};

// Combined high-snr capacity upper bound at oversampling L = ceil(snr^alpha).
// capacity_upper == amplitude_bound + phase_bound holds to the last bit.
// phase_bound carries the rate form of the phase term, in which the
// entropy correction for the sample duration actually used is an o(1)
// remainder as L grows; that remainder is reported separately as g_value,
// and phase_upper_bound(gamma, 1/L) == phase_bound - g_value recovers the
// fixed-duration bound.
inline BoundReport capacity_upper_bound(double snr, double alpha, double gamma) {
  detail::require_rate(gamma);
  BoundReport r;
  r.snr = snr;
  r.alpha = alpha;
  r.gamma = gamma;
  r.oversampling = oversampling_for(snr, alpha);
  r.delta = 1.0 / static_cast<double>(r.oversampling);
  r.amplitude_bound = amplitude_upper_bound(snr);
  r.phase_bound = 0.5 * std::log(two_pi / (std::numbers::e * gamma * gamma))
                  + 0.5 * std::log(static_cast<double>(r.oversampling));
  r.g_value = entropy_correction(gamma, r.delta);
  r.capacity_upper = r.amplitude_bound + r.phase_bound;
  r.prelog_upper = prelog_upper(alpha);
  r.prelog_lower = prelog_lower(alpha);
  return r;
}

}  // namespace wpnc

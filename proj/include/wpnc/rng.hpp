#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "angles.hpp"

namespace wpnc {

// Counter-mode generator: a SplitMix64-style finalizer applied to
// key + counter * golden.  Each (seed, stream) pair owns a disjoint
// sequence reachable in O(1), which is what lets Monte Carlo chunks be
// keyed by chunk index instead of by worker identity.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed + kGolden) ^ mix(stream * kGolden + 0xD1B54A32D192ED03ull)) {}

  std::uint64_t next_u64() {
    counter_ += kGolden;
    return mix(key_ + counter_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [-pi, pi).
  double next_angle() { return wrap(-pi + two_pi * next_unit()); }

  // Standard normal via Box-Muller; the second coordinate is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  // Circularly symmetric complex normal with E|W|^2 = variance.
  std::complex<double> next_cgaussian(double variance) {
    double u1 = 1.0 - next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-variance * std::log(u1));
    return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
  }

  // Modulus law of a circularly symmetric normal: E X^2 = mean_square.
  double next_rayleigh(double mean_square) {
    return std::sqrt(-mean_square * std::log(1.0 - next_unit()));
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace wpnc

#pragma once

#include <cmath>
#include <stdexcept>

#include "bounds.hpp"

namespace wpnc {

// Knobs of one transmission setup.  Sample duration `delta` defaults to
// 1 / oversampling so a symbol always spans unit time; callers building
// params by hand must keep that product if they want the standard scaling.
struct ChannelParams {
  double gamma = 1.0;     // phase diffusion rate
  double snr = 1.0;       // average symbol power over unit symbol time
  int oversampling = 1;   // receiver samples per symbol
  int num_symbols = 1;    // symbols per frame
  int sub_steps = 128;    // integrator sub-steps inside one sample
  double delta = 1.0;     // sample duration

  int samples_per_frame() const { return num_symbols * oversampling; }
  double increment_variance() const { return gamma * gamma * delta; }
  double symbol_mean_square() const { return snr * delta; }  // E|X|^2

  void validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw std::invalid_argument("ChannelParams: gamma must be nonnegative and finite");
    }
    if (!(snr >= 0.0) || !std::isfinite(snr)) {
      throw std::invalid_argument("ChannelParams: snr must be nonnegative and finite");
    }
    if (oversampling < 1) throw std::invalid_argument("ChannelParams: oversampling must be >= 1");
    if (num_symbols < 1) throw std::invalid_argument("ChannelParams: num_symbols must be >= 1");
    if (sub_steps < 1) throw std::invalid_argument("ChannelParams: sub_steps must be >= 1");
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw std::invalid_argument("ChannelParams: delta must be positive and finite");
    }
  }

  // snr-coupled setup: oversampling = ceil(snr^alpha), delta = 1/oversampling.
  static ChannelParams from_alpha(double snr, double alpha, double gamma) {
    long long L = oversampling_for(snr, alpha);
    if (L > 1000000000LL) {
      throw std::invalid_argument("ChannelParams::from_alpha: oversampling too large to simulate");
    }
    ChannelParams p;
    p.gamma = gamma;
    p.snr = snr;
    p.oversampling = static_cast<int>(L);
    p.delta = 1.0 / static_cast<double>(L);
    p.validate();
    return p;
  }
};

}  // namespace wpnc

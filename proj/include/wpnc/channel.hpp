#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phase_process.hpp"

namespace wpnc {

enum class InputLaw { cs_gaussian, uniform_phase, amplitude_only };

// One symbol per block, E|X|^2 = snr * delta for every law:
//   cs_gaussian    circularly symmetric complex normal
//   uniform_phase  fixed modulus sqrt(snr * delta), phase uniform on [-pi, pi)
//   amplitude_only nonnegative real with the cs_gaussian modulus law
inline std::vector<std::complex<double>> draw_input_symbols(const ChannelParams& p,
                                                            InputLaw law, CounterRng& rng) {
  p.validate();
  double msq = p.symbol_mean_square();
  std::vector<std::complex<double>> xs;
  xs.reserve(static_cast<size_t>(p.num_symbols));
  for (int k = 0; k < p.num_symbols; ++k) {
    switch (law) {
      case InputLaw::cs_gaussian:
        xs.push_back(rng.next_cgaussian(msq));
        break;
      case InputLaw::uniform_phase: {
        double phi = rng.next_angle();
        double r = std::sqrt(msq);
        xs.emplace_back(r * std::cos(phi), r * std::sin(phi));
        break;
      }
      case InputLaw::amplitude_only:
        xs.emplace_back(rng.next_rayleigh(msq), 0.0);
        break;
    }
  }
  return xs;
}

struct FrameRealization {
  std::vector<std::complex<double>> symbols;
  std::vector<std::complex<double>> samples;
  PhasePath path;                    // per-sample carrier phase actually applied
  std::optional<FadingBlock> fading; // present for the integrated model
  int oversampling = 1;
  bool noise_suppressed = false;
};

namespace detail {

inline int infer_oversampling(size_t num_samples, size_t num_symbols, const char* who) {
  if (num_symbols == 0 || num_samples == 0 || num_samples % num_symbols != 0) {
    throw std::invalid_argument(std::string(who) + ": sample count must be a positive multiple of the symbol count");
  }
  return static_cast<int>(num_samples / num_symbols);
}

}  // namespace detail

// Rotation-only model: sample i of the frame is X_{i/L} e^{i path.thetas[i]}
// plus unit-variance complex noise.  The first sample already includes
// path.increments[0], matching the PhasePath anchoring.
inline FrameRealization transmit_simplified(std::span<const std::complex<double>> symbols,
                                            const PhasePath& path, CounterRng& rng,
                                            bool suppress_noise = false) {
  int L = detail::infer_oversampling(path.thetas.size(), symbols.size(), "transmit_simplified");
  FrameRealization frame;
  frame.symbols.assign(symbols.begin(), symbols.end());
  frame.path = path;
  frame.oversampling = L;
  frame.noise_suppressed = suppress_noise;
  frame.samples.reserve(path.thetas.size());
  for (size_t i = 0; i < path.thetas.size(); ++i) {
    std::complex<double> rot(std::cos(path.thetas[i]), std::sin(path.thetas[i]));
    std::complex<double> y = symbols[i / static_cast<size_t>(L)] * rot;
    if (!suppress_noise) y += rng.next_cgaussian(1.0);
    frame.samples.push_back(y);
  }
  return frame;
}

// Integrated model: sample i is X_{i/L} e^{i rot_i} gain_i plus noise, where
// rot_0 == theta0 exactly and rot_i adds the increments of samples 0..i-1.
// A sample's own within-interval diffusion enters only through its gain.
// The recorded path therefore has increments[0] == 0 and
// increments[i] == fading.samples[i-1].increment, with thetas[i] == rot_i.
inline FrameRealization transmit_complete(std::span<const std::complex<double>> symbols,
                                          const FadingBlock& fading, double theta0,
                                          CounterRng& rng, bool suppress_noise = false) {
  int L = detail::infer_oversampling(fading.samples.size(), symbols.size(), "transmit_complete");
  FrameRealization frame;
  frame.symbols.assign(symbols.begin(), symbols.end());
  frame.fading = fading;
  frame.oversampling = L;
  frame.noise_suppressed = suppress_noise;
  size_t n = fading.samples.size();
  frame.path.theta0 = theta0;
  frame.path.increments.resize(n);
  frame.path.thetas.resize(n);
  frame.samples.reserve(n);
  double rot = theta0;
  for (size_t i = 0; i < n; ++i) {
    frame.path.increments[i] = i == 0 ? 0.0 : fading.samples[i - 1].increment;
    rot += frame.path.increments[i];
    frame.path.thetas[i] = rot;
    std::complex<double> carrier(std::cos(rot), std::sin(rot));
    std::complex<double> y = symbols[i / static_cast<size_t>(L)] * carrier * fading.samples[i].gain;
    if (!suppress_noise) y += rng.next_cgaussian(1.0);
    frame.samples.push_back(y);
  }
  return frame;
}

}  // namespace wpnc

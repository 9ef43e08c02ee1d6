#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "params.hpp"
#include "rng.hpp"

namespace wpnc {

// Unwrapped carrier phases for one frame.  theta0 is the state *before* the
// first sample; increments[i] bridges sample i-1 -> i, so
// thetas[i] == theta0 + increments[0] + ... + increments[i] exactly and
// Var(thetas[n-1] - theta0) == n * gamma^2 * delta.
struct PhasePath {
  double theta0 = 0.0;
  std::vector<double> increments;
  std::vector<double> thetas;
};

inline PhasePath sample_phase_path(const ChannelParams& p, double theta0, CounterRng& rng) {
  p.validate();
  int n = p.samples_per_frame();
  PhasePath path;
  path.theta0 = theta0;
  path.increments.resize(static_cast<size_t>(n));
  path.thetas.resize(static_cast<size_t>(n));
  double sd = std::sqrt(p.increment_variance());
  double acc = theta0;
  for (int i = 0; i < n; ++i) {
    double step = sd * rng.next_gaussian();
    path.increments[static_cast<size_t>(i)] = step;
    acc += step;
    path.thetas[static_cast<size_t>(i)] = acc;
  }
  return path;
}

struct FadingSample {
  std::complex<double> gain{1.0, 0.0};  // time average of e^{i scale B(t)} over the sample
  double increment = 0.0;               // scale * B(1), the phase accrued across the sample
};

struct FadingBlock {
  int sub_steps = 0;
  std::vector<FadingSample> samples;
};

// Gain and increment from one standard Wiener path tabulated on the half
// grid j/(2S), j = 0..2S (so half_grid.size() == 2S + 1 and half_grid[0] is
// the pinned origin).  The gain is the midpoint-rule average of
// e^{i scale B} over the S sub-intervals, hence |gain| <= 1 always; the
// increment is scale * B(1).
inline FadingSample fading_from_fine_path(std::span<const double> half_grid, double scale) {
  if (half_grid.size() < 3 || half_grid.size() % 2 == 0) {
    throw std::invalid_argument("fading_from_fine_path: need an odd grid of size >= 3");
  }
  size_t S = (half_grid.size() - 1) / 2;
  std::complex<double> acc{0.0, 0.0};
  for (size_t m = 0; m < S; ++m) {
    double phase = scale * half_grid[2 * m + 1];
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return {acc / static_cast<double>(S), scale * half_grid.back()};
}

// One (gain, increment) pair per sample of the frame, each from a fresh
// Wiener path with 2 * sub_steps Gaussian steps of variance 1/(2 sub_steps).
inline FadingBlock sample_fading_block(const ChannelParams& p, CounterRng& rng) {
  p.validate();
  int n = p.samples_per_frame();
  int S = p.sub_steps;
  double scale = p.gamma * std::sqrt(p.delta);
  double step_sd = std::sqrt(1.0 / (2.0 * static_cast<double>(S)));
  FadingBlock block;
  block.sub_steps = S;
  block.samples.reserve(static_cast<size_t>(n));
  std::vector<double> grid(static_cast<size_t>(2 * S + 1));
  for (int i = 0; i < n; ++i) {
    grid[0] = 0.0;
    for (size_t j = 1; j < grid.size(); ++j) {
      grid[j] = grid[j - 1] + step_sd * rng.next_gaussian();
    }
    block.samples.push_back(fading_from_fine_path(grid, scale));
  }
  return block;
}

}  // namespace wpnc

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "angles.hpp"
#include "channel.hpp"

namespace wpnc {

// Sum of |y|^2 over the block.
inline double energy_statistic(std::span<const std::complex<double>> block) {
  if (block.empty()) throw std::invalid_argument("energy_statistic: empty block");
  double e = 0.0;
  for (auto y : block) e += std::norm(y);
  return e;
}

// Coherent average of the block.
inline std::complex<double> block_mean_statistic(std::span<const std::complex<double>> block) {
  if (block.empty()) throw std::invalid_argument("block_mean_statistic: empty block");
  std::complex<double> s{0.0, 0.0};
  for (auto y : block) s += y;
  return s / static_cast<double>(block.size());
}

// Phase increment seen between adjacent blocks: the angle of the first
// sample of the current block against the last sample of the previous block
// with the previous symbol divided out.  Invariant under common scaling of
// the two samples.  Defined for blocks k >= 2 only; the caller supplies the
// previous symbol (decision-directed or genie).
inline double phase_statistic(std::complex<double> block_first,
                              std::complex<double> prev_block_last,
                              std::complex<double> prev_symbol) {
  if (prev_symbol == std::complex<double>(0.0, 0.0)) {
    throw std::domain_error("phase_statistic: previous symbol must be nonzero");
  }
  std::complex<double> reference = prev_block_last / prev_symbol;
  return wrap(std::arg(block_first * std::conj(reference)));
}

struct BlockStatistics {
  int block_index = 0;  // 1-based
  double energy = 0.0;
  std::complex<double> mean{0.0, 0.0};
  // NaN for the first block of a frame, which has no reference sample.
  double phase_increment = std::numeric_limits<double>::quiet_NaN();
  double symbol_amplitude = 0.0;  // |X_k|, ground truth carried for analysis
  double symbol_phase = 0.0;      // wrap(arg X_k)
};

// Per-block receiver statistics for a realized frame, using the frame's own
// symbols as the genie reference for the phase statistic.
inline std::vector<BlockStatistics> frame_statistics(const FrameRealization& frame) {
  size_t L = static_cast<size_t>(frame.oversampling);
  size_t M = frame.symbols.size();
  if (L == 0 || frame.samples.size() != M * L) {
    throw std::invalid_argument("frame_statistics: frame sample count does not match its symbols");
  }
  std::vector<BlockStatistics> stats;
  stats.reserve(M);
  for (size_t k = 0; k < M; ++k) {
    std::span<const std::complex<double>> block(frame.samples.data() + k * L, L);
    BlockStatistics s;
    s.block_index = static_cast<int>(k) + 1;
    s.energy = energy_statistic(block);
    s.mean = block_mean_statistic(block);
    s.symbol_amplitude = std::abs(frame.symbols[k]);
    s.symbol_phase = wrap(std::arg(frame.symbols[k]));
    if (k > 0) {
      s.phase_increment = phase_statistic(frame.samples[k * L],
                                          frame.samples[k * L - 1],
                                          frame.symbols[k - 1]);
    }
    stats.push_back(s);
  }
  return stats;
}

}  // namespace wpnc

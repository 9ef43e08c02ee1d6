#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "parallel.hpp"
#include "wrapped_gaussian.hpp"

namespace wpnc {

// Cube-root rule capped at 512 cells per axis.
inline int default_bin_count(long long samples) {
  if (samples < 8) throw std::invalid_argument("default_bin_count: too few samples");
  int b = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(samples))));
  return std::clamp(b, 2, 512);
}

struct PluginMi {
  double value = 0.0;
  double stat_error = 0.0;
  double bias_hint = 0.0;
  long long occupied_joint = 0;
  int occupied_x = 0;
  int occupied_y = 0;
};

// Plug-in mutual information of a joint histogram, with the delta-method
// sampling error of the estimate and the occupied-cell bias scale
// (K_xy - K_x - K_y + 1) / (2n), reported but never applied.
inline PluginMi plugin_mi_from_counts(std::span<const long long> joint, int bins, long long n) {
  if (bins < 2 || joint.size() != static_cast<size_t>(bins) * static_cast<size_t>(bins)) {
    throw std::invalid_argument("plugin_mi_from_counts: joint size must be bins^2");
  }
  if (n <= 0) throw std::invalid_argument("plugin_mi_from_counts: empty sample");
  std::vector<double> px(static_cast<size_t>(bins), 0.0);
  std::vector<double> py(static_cast<size_t>(bins), 0.0);
  double inv_n = 1.0 / static_cast<double>(n);
  for (int i = 0; i < bins; ++i) {
    for (int j = 0; j < bins; ++j) {
      double p = static_cast<double>(joint[static_cast<size_t>(i) * bins + j]) * inv_n;
      px[static_cast<size_t>(i)] += p;
      py[static_cast<size_t>(j)] += p;
    }
  }
  PluginMi out;
  double mean = 0.0;
  double mean_sq = 0.0;
  for (int i = 0; i < bins; ++i) {
    for (int j = 0; j < bins; ++j) {
      long long c = joint[static_cast<size_t>(i) * bins + j];
      if (c <= 0) continue;
      ++out.occupied_joint;
      double p = static_cast<double>(c) * inv_n;
      double d = std::log(p / (px[static_cast<size_t>(i)] * py[static_cast<size_t>(j)]));
      mean += p * d;
      mean_sq += p * d * d;
    }
  }
  for (double p : px) out.occupied_x += p > 0.0;
  for (double p : py) out.occupied_y += p > 0.0;
  out.value = mean;
  out.stat_error = std::sqrt(std::max(0.0, mean_sq - mean * mean) * inv_n);
  out.bias_hint = static_cast<double>(out.occupied_joint - out.occupied_x - out.occupied_y + 1)
                  * 0.5 * inv_n;
  return out;
}

struct MiEstimate {
  double value = 0.0;
  // stat_error and quantization_gap combined root-sum-square; equal to
  // stat_error alone when no quantized reference exists.
  double std_error = 0.0;
  double stat_error = 0.0;
  double bias_hint = 0.0;
  double reference = std::numeric_limits<double>::quiet_NaN();
  double quantization_gap = 0.0;
  long long samples = 0;
  int bins = 0;
  bool reliable = false;  // samples >= 10 * bins^2
  std::string method;
};

namespace detail {

inline int resolve_bins(long long samples, int bins) {
  if (bins <= 0) return default_bin_count(samples);
  if (bins < 2 || bins > 4096) throw std::invalid_argument("mi: bins must lie in [2, 4096]");
  return bins;
}

// Deterministic equal-mass binning: ranks with index tie-break, then
// bin = rank * bins / n.  Every bin holds floor/ceil(n / bins) points.
inline std::vector<int> equal_mass_bins(const std::vector<double>& v, int bins) {
  size_t n = v.size();
  std::vector<long long> order(n);
  std::iota(order.begin(), order.end(), 0LL);
  std::sort(order.begin(), order.end(), [&v](long long a, long long b) {
    double va = v[static_cast<size_t>(a)];
    double vb = v[static_cast<size_t>(b)];
    return va < vb || (va == vb && a < b);
  });
  std::vector<int> bin(n);
  for (size_t r = 0; r < n; ++r) {
    bin[static_cast<size_t>(order[r])] =
        static_cast<int>(static_cast<long long>(r) * bins / static_cast<long long>(n));
  }
  return bin;
}

}  // namespace detail

// Histogram MI of one step of the phase channel: input uniform on [-pi, pi),
// output the input plus a wrapped N(0, gamma^2 delta) increment.  Bins are
// fixed-width cells of [-pi, pi).  The analytic value log(2 pi) minus the
// wrapped entropy is attached as `reference`; the binning systematic
// |exact-binned-MI - reference| is attached as `quantization_gap` and folded
// into std_error.
inline MiEstimate mi_phase_channel(double gamma, double delta, long long samples, int bins,
                                   std::uint64_t seed, int workers = 1) {
  if (!(gamma > 0.0) || !std::isfinite(gamma) || !(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("mi_phase_channel: gamma and delta must be positive and finite");
  }
  if (samples < 8) throw std::invalid_argument("mi_phase_channel: too few samples");
  int B = detail::resolve_bins(samples, bins);
  double sigma2 = gamma * gamma * delta;
  double sigma = std::sqrt(sigma2);
  double width = two_pi / static_cast<double>(B);
  auto hists = map_chunks<std::vector<long long>>(
      samples, seed, 1, workers, [B, sigma, width](CounterRng& rng, long long, long long count) {
        std::vector<long long> h(static_cast<size_t>(B) * static_cast<size_t>(B), 0);
        for (long long i = 0; i < count; ++i) {
          double u = rng.next_angle();
          double v = wrap(u + sigma * rng.next_gaussian());
          int iu = std::min(static_cast<int>((u + pi) / width), B - 1);
          int iv = std::min(static_cast<int>((v + pi) / width), B - 1);
          ++h[static_cast<size_t>(iu) * B + static_cast<size_t>(iv)];
        }
        return h;
      });
  std::vector<long long> joint(static_cast<size_t>(B) * static_cast<size_t>(B), 0);
  for (const auto& h : hists) {
    for (size_t c = 0; c < joint.size(); ++c) joint[c] += h[c];
  }
  PluginMi pm = plugin_mi_from_counts(joint, B, samples);
  MiEstimate est;
  est.value = pm.value;
  est.stat_error = pm.stat_error;
  est.bias_hint = pm.bias_hint;
  est.reference = log_two_pi - wrapped_entropy(sigma2);
  est.quantization_gap = std::fabs(binned_channel_mi(sigma2, B) - est.reference);
  est.std_error = std::hypot(pm.stat_error, est.quantization_gap);
  est.samples = samples;
  est.bins = B;
  est.reliable = samples >= 10LL * B * B;
  est.method = "histogram-fixed-width";
  return est;
}

// Histogram MI between the sent amplitude and the block-averaged received
// amplitude: X Rayleigh with E X^2 = snr / L, observed as |X + W| with W a
// circularly symmetric complex normal of variance 1/L (the average of L unit
// variance noise samples).  Both axes use equal-mass bins so the cells track
// the conditional spread at every snr; std_error is purely statistical.
inline MiEstimate mi_amplitude_channel(double snr, int oversampling, long long samples,
                                       int bins, std::uint64_t seed, int workers = 1) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw std::invalid_argument("mi_amplitude_channel: snr must be nonnegative and finite");
  }
  if (oversampling < 1) throw std::invalid_argument("mi_amplitude_channel: oversampling must be >= 1");
  if (samples < 8) throw std::invalid_argument("mi_amplitude_channel: too few samples");
  int B = detail::resolve_bins(samples, bins);
  double L = static_cast<double>(oversampling);
  double msq = snr / L;
  double noise_var = 1.0 / L;
  std::vector<double> xs(static_cast<size_t>(samples));
  std::vector<double> zs(static_cast<size_t>(samples));
  map_chunks<char>(samples, seed, 2, workers,
                   [&xs, &zs, msq, noise_var](CounterRng& rng, long long first, long long count) {
                     for (long long i = 0; i < count; ++i) {
                       double x = rng.next_rayleigh(msq);
                       std::complex<double> w = rng.next_cgaussian(noise_var);
                       xs[static_cast<size_t>(first + i)] = x;
                       zs[static_cast<size_t>(first + i)] = std::hypot(x + w.real(), w.imag());
                     }
                     return char{0};
                   });
  std::vector<int> bx = detail::equal_mass_bins(xs, B);
  std::vector<int> bz = detail::equal_mass_bins(zs, B);
  std::vector<long long> joint(static_cast<size_t>(B) * static_cast<size_t>(B), 0);
  for (size_t i = 0; i < xs.size(); ++i) {
    ++joint[static_cast<size_t>(bx[i]) * B + static_cast<size_t>(bz[i])];
  }
  PluginMi pm = plugin_mi_from_counts(joint, B, samples);
  MiEstimate est;
  est.value = pm.value;
  est.stat_error = pm.stat_error;
  est.std_error = pm.stat_error;
  est.bias_hint = pm.bias_hint;
  est.samples = samples;
  est.bins = B;
  est.reliable = samples >= 10LL * B * B;
  est.method = "histogram-equal-mass";
  return est;
}

// Least-squares slope of rate against log(snr).  Demands at least three
// points spanning two decades of snr.
inline double prelog_slope(std::span<const std::pair<double, double>> snr_rate) {
  if (snr_rate.size() < 3) {
    throw std::invalid_argument("prelog_slope: need at least 3 points");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (auto [snr, rate] : snr_rate) {
    if (!(snr > 0.0) || !std::isfinite(snr) || !std::isfinite(rate)) {
      throw std::invalid_argument("prelog_slope: snr must be positive and rates finite");
    }
    lo = std::min(lo, snr);
    hi = std::max(hi, snr);
  }
  if (std::log10(hi / lo) < 2.0 - 1e-9) {
    throw std::invalid_argument("prelog_slope: snr grid must span at least two decades");
  }
  double mx = 0.0, my = 0.0;
  for (auto [snr, rate] : snr_rate) {
    mx += std::log(snr);
    my += rate;
  }
  mx /= static_cast<double>(snr_rate.size());
  my /= static_cast<double>(snr_rate.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [snr, rate] : snr_rate) {
    double dx = std::log(snr) - mx;
    sxy += dx * (rate - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace wpnc

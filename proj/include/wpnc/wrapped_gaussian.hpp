#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "angles.hpp"
#include "quadrature.hpp"

namespace wpnc {

namespace detail {

inline void require_variance(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::domain_error("wrapped gaussian: variance must be positive and finite");
  }
}

}  // namespace detail

// Smallest K such that keeping the 2K+1 central image terms of the wrapped
// density leaves a tail below tail_tol everywhere on [-pi, pi).  The omitted
// terms are dominated by a geometric series with ratio e^{-4 pi^2 (K+1)/s2},
// whose lead term sits at distance (2K+1) pi.
inline int wrapped_alias_terms(double sigma2, double tail_tol = 1e-14) {
  detail::require_variance(sigma2);
  for (int k = 0;; ++k) {
    double edge = (2.0 * k + 1.0) * pi;
    double lead = std::exp(-edge * edge / (2.0 * sigma2)) / std::sqrt(two_pi * sigma2);
    double ratio = std::exp(-4.0 * pi * pi * (k + 1.0) / sigma2);
    if (2.0 * lead / (1.0 - ratio) < tail_tol) return k;
    if (k > 100000) throw std::runtime_error("wrapped_alias_terms: no convergence");
  }
}

// Density of a centred normal with variance sigma2 reduced mod 2 pi onto
// [-pi, pi).  Evaluated as the truncated series of Gaussian images.
inline double wrapped_gauss_pdf(double x, double sigma2) {
  detail::require_variance(sigma2);
  if (!std::isfinite(x) || x < -pi || x >= pi) {
    throw std::domain_error("wrapped_gauss_pdf: x must lie in [-pi, pi)");
  }
  int terms = wrapped_alias_terms(sigma2);
  double sum = 0.0;
  for (int k = -terms; k <= terms; ++k) {
    double d = x + two_pi * static_cast<double>(k);
    sum += std::exp(-d * d / (2.0 * sigma2));
  }
  return sum / std::sqrt(two_pi * sigma2);
}

// Closed-form dominating curve for the same density:
//   (2 pi s2)^{-1/2} [ e^{-x^2 / 2 s2} + 2 e^{-pi^2 / 2 s2} / (1 - e^{-pi^2 / s2}) ].
// The geometric factor is evaluated in log domain via expm1 so it stays
// accurate for both tiny and huge sigma2.
inline double wrapped_gauss_pdf_bound(double x, double sigma2) {
  detail::require_variance(sigma2);
  if (!std::isfinite(x) || x < -pi || x >= pi) {
    throw std::domain_error("wrapped_gauss_pdf_bound: x must lie in [-pi, pi)");
  }
  double y = pi * pi / sigma2;
  double alias = std::exp(-0.5 * y - std::log(-std::expm1(-y)));
  return (std::exp(-x * x / (2.0 * sigma2)) + 2.0 * alias) / std::sqrt(two_pi * sigma2);
}

// Differential entropy of the wrapped density, by quadrature.  The domain is
// clipped to [-min(pi, 16 sigma), +min(pi, 16 sigma)]; outside it the
// integrand is below e^{-128}/sqrt(2 pi s2) times log factors.
inline double wrapped_entropy(double sigma2, QuadratureOptions opt = {}) {
  detail::require_variance(sigma2);
  double a = std::min(pi, 16.0 * std::sqrt(sigma2));
  auto integrand = [sigma2](double x) {
    double p = wrapped_gauss_pdf(x >= pi ? -pi : x, sigma2);
    return p > 0.0 ? -p * std::log(p) : 0.0;
  };
  return integrate(integrand, -a, a, opt).value;
}

// E[X^2] under the wrapped density, by quadrature on the same clipped domain.
inline double second_moment(double sigma2, QuadratureOptions opt = {}) {
  detail::require_variance(sigma2);
  double a = std::min(pi, 16.0 * std::sqrt(sigma2));
  auto integrand = [sigma2](double x) {
    return x * x * wrapped_gauss_pdf(x >= pi ? -pi : x, sigma2);
  };
  return integrate(integrand, -a, a, opt).value;
}

// Closed-form lower bound on E[X^2]:
//   s2 erf(pi / sqrt(2 s2)) - sqrt(2 pi s2) e^{-pi^2 / 2 s2}.
inline double second_moment_lower_bound(double sigma2) {
  detail::require_variance(sigma2);
  return sigma2 * std::erf(pi / std::sqrt(2.0 * sigma2))
         - std::sqrt(two_pi * sigma2) * std::exp(-pi * pi / (2.0 * sigma2));
}

namespace detail {

// Sum over image indices of e^{-2 pi k (pi k + x)/s2} + e^{-2 pi k (pi k - x)/s2},
// k >= 1, plus the k = 0 term (= 1).  This is the integrand of the tilted
// moment after the Gaussian factor cancels.
inline double exp_tilt_series(double x, double sigma2) {
  double sum = 1.0;
  for (int k = 1;; ++k) {
    double kk = static_cast<double>(k);
    double base = 2.0 * pi * kk / sigma2;
    double a = base * (pi * kk + x);
    double b = base * (pi * kk - x);
    double term = (a > 745.0 ? 0.0 : std::exp(-a)) + (b > 745.0 ? 0.0 : std::exp(-b));
    sum += term;
    // Past this point every remaining term is below e^{-45}.
    if (base * (pi * kk - pi) > 45.0 && k > 1) break;
    if (k > 2000000) throw std::runtime_error("exp_tilt_series: no convergence");
  }
  return sum;
}

}  // namespace detail

// E[e^{X^2 / (2 s2)}] under the wrapped density.  The integrand
// exp_tilt_series(x)/sqrt(2 pi s2) is smooth at moderate sigma2; for small
// sigma2 it is 1 except in boundary layers of width ~s2/(2 pi) at +-pi, so
// the layers are integrated on their own subintervals.
inline double exp_tilt_moment(double sigma2, QuadratureOptions opt = {}) {
  detail::require_variance(sigma2);
  double norm = std::sqrt(two_pi * sigma2);
  if (sigma2 >= 0.5) {
    auto f = [sigma2](double x) { return detail::exp_tilt_series(x, sigma2); };
    return integrate(f, -pi, pi, opt).value / norm;
  }
  double c = std::min(pi, 50.0 * sigma2);
  auto layer = [sigma2](double x) { return detail::exp_tilt_series(x, sigma2) - 1.0; };
  double left = integrate(layer, -pi, -pi + c, opt).value;
  double right = integrate(layer, pi - c, pi, opt).value;
  return (two_pi + left + right) / norm;
}

// Closed-form upper bound on the same moment: 2 (pi + s2/pi) / sqrt(2 pi s2).
inline double exp_tilt_moment_bound(double sigma2) {
  detail::require_variance(sigma2);
  return 2.0 * (pi + sigma2 / pi) / std::sqrt(two_pi * sigma2);
}

// Law of the bin-index lag for the quantized uniform-phase channel with
// `bins` equal cells on [-pi, pi): q[m] is the probability that the output
// bin leads the input bin by m (mod bins).  Conditioned on the wrapped noise
// landing at t, the lag law is the triangular overlap of t with the cell
// grid, so q[m] integrates the wrapped density against a unit hat centred on
// m cell-widths.  By symmetry q[m] == q[bins - m].
inline std::vector<double> binned_lag_distribution(double sigma2, int bins) {
  detail::require_variance(sigma2);
  if (bins < 2) throw std::invalid_argument("binned_lag_distribution: bins must be >= 2");
  double w = two_pi / static_cast<double>(bins);
  QuadratureOptions opt;
  opt.initial_panels = 64;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  std::vector<double> q(static_cast<size_t>(bins), 0.0);
  for (int m = 0; m <= bins / 2; ++m) {
    double s = w * static_cast<double>(m);
    auto hat = [sigma2, w, s](double t) {
      double weight = 1.0 - std::fabs(t - s) / w;
      return weight <= 0.0 ? 0.0 : wrapped_gauss_pdf(wrap(t), sigma2) * weight;
    };
    // Split at the kink so Simpson sees two smooth pieces.
    double val = integrate(hat, s - w, s, opt).value + integrate(hat, s, s + w, opt).value;
    q[static_cast<size_t>(m)] = val;
    if (m != 0 && m != bins - m) q[static_cast<size_t>(bins - m)] = val;
  }
  return q;
}

// Exact mutual information of the quantized channel: log(bins) minus the
// entropy of the lag law (the joint histogram is circulant).
inline double binned_channel_mi(double sigma2, int bins) {
  std::vector<double> q = binned_lag_distribution(sigma2, bins);
  double total = 0.0;
  for (double v : q) total += v;
  double h = 0.0;
  for (double v : q) {
    double p = v / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::log(static_cast<double>(bins)) - h;
}

}  // namespace wpnc

// End to end acceptance gate.  Each criterion prints exactly one PASS/FAIL
// line; the process exits 0 only if every criterion holds.  Tolerances are
// pinned here, next to the checks they guard.  argv[1] is the CLI binary,
// used by the reproducibility criterion.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wpnc/wpnc.hpp"

namespace fs = std::filesystem;

namespace {

int g_failed = 0;

void criterion(int k, bool ok, const std::string& detail) {
  if (!ok) ++g_failed;
  std::cout << "CRITERION " << k << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << '\n';
  std::cout.flush();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

int run(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Growth exponent curves: pinned values at five grid points and exact
//    coincidence of the two curves on [0, 1/2].
void criterion_prelog() {
  const double kTol = 1e-12;
  const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const double uppers[] = {0.5, 0.625, 0.75, 0.875, 1.0};
  const double lowers[] = {0.5, 0.625, 0.75, 0.75, 0.75};
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    double du = std::fabs(wpnc::prelog_upper(alphas[i]) - uppers[i]);
    double dl = std::fabs(wpnc::prelog_lower(alphas[i]) - lowers[i]);
    worst = std::max({worst, du, dl});
    ok = ok && du <= kTol && dl <= kTol;
  }
  bool coincide = true;
  for (int i = 0; i <= 50; ++i) {
    double a = i / 100.0;
    coincide = coincide && wpnc::prelog_upper(a) == wpnc::prelog_lower(a);
  }
  ok = ok && coincide;
  criterion(1, ok,
            "growth exponent curves: pinned values and bitwise overlap on [0,1/2] " +
                fmt("(worst dev %.3e, coincide=%g)", worst, coincide ? 1.0 : 0.0));
}

// 2. Analytic dominance: density bound over the density, moment bounds over
//    the moments, and the entropy sandwich, across a gamma x delta grid.
void criterion_dominance() {
  const double kSlack = 1e-9;
  const int kPdfPoints = 10000;
  const double gammas[] = {0.1, 1.0};
  const double deltas[] = {1.0, 0.1, 0.01, 0.001};
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (double gamma : gammas) {
    for (double delta : deltas) {
      double u = gamma * gamma * delta;
      for (int i = 0; i < kPdfPoints; ++i) {
        double x = -wpnc::pi + wpnc::two_pi * (i + 0.5) / kPdfPoints;
        double margin = wpnc::wrapped_gauss_pdf_bound(x, u) - wpnc::wrapped_gauss_pdf(x, u);
        worst = std::min(worst, margin);
        ok = ok && margin >= -kSlack;
      }
      double sm = wpnc::second_moment(u) - wpnc::second_moment_lower_bound(u);
      double em = wpnc::exp_tilt_moment_bound(u) - wpnc::exp_tilt_moment(u);
      double h = wpnc::wrapped_entropy(u);
      double lo = h - wpnc::entropy_lower_bound(gamma, delta);
      double hi = 0.5 * std::log(wpnc::two_pi * std::numbers::e * u) - h;
      for (double margin : {sm, em, lo, hi}) {
        worst = std::min(worst, margin);
        ok = ok && margin >= -kSlack;
      }
    }
  }
  criterion(2, ok,
            "bound dominance on 2x4 parameter grid, 10000 density points each " +
                fmt("(worst margin %.3e)", worst));
}

// 3. Vanishing correction: at u = 1e-6 the correction term is below 1e-6 and
//    the entropy lower bound meets the true entropy to 1e-4.
void criterion_limit() {
  double g = wpnc::entropy_correction(1.0, 1e-6);
  double gap = std::fabs(wpnc::entropy_lower_bound(1.0, 1e-6) - wpnc::wrapped_entropy(1e-6));
  bool ok = std::fabs(g) < 1e-6 && gap < 1e-4;
  criterion(3, ok, "small-variance limit " + fmt("(|g| = %.3e, entropy gap = %.3e)",
                                                 std::fabs(g), gap));
}

// 4. Phase channel Monte Carlo: estimates sit within 3 combined standard
//    errors of the quadrature reference and below the analytic bound.
void criterion_phase_mi() {
  const long long kSamples = 1000000;
  const std::uint64_t kSeed = 2024;
  const int kWorkers = 4;
  struct Case {
    double delta;
    double frozen_reference;
  };
  const Case cases[] = {{0.1, 1.5702310797016956}, {0.01, 2.7215236261987184}};
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    wpnc::MiEstimate e = wpnc::mi_phase_channel(1.0, c.delta, kSamples, 0, kSeed, kWorkers);
    double bound = wpnc::phase_upper_bound(1.0, c.delta);
    bool ref_ok = std::fabs(e.reference - c.frozen_reference) <= 1e-8;
    bool near = std::fabs(e.value - e.reference) <= 3.0 * e.std_error;
    bool below = e.value <= bound + 3.0 * e.std_error;
    ok = ok && ref_ok && near && below;
    detail += fmt("[delta=%g dev=%.2gse", c.delta,
                  std::fabs(e.value - e.reference) / e.std_error) +
              fmt(" bound_slack=%.3g] ", bound + 3.0 * e.std_error - e.value);
  }
  criterion(4, ok, "phase channel estimates vs reference and bound " + detail);
}

// 5. Amplitude channel Monte Carlo: each rate stays below the closed-form
//    cap (+0.05 nat) and the fitted growth slope lands in [0.40, 0.55].
void criterion_amplitude_mi() {
  const long long kSamples = 1000000;
  const int kBins = 512;
  const std::uint64_t kSeed = 1;
  const int kWorkers = 4;
  const double snrs[] = {1e3, 1e4, 1e5};
  bool ok = true;
  std::vector<std::pair<double, double>> points;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (double snr : snrs) {
    wpnc::MiEstimate e = wpnc::mi_amplitude_channel(snr, 1, kSamples, kBins, kSeed, kWorkers);
    double cap = wpnc::amplitude_upper_bound(snr);
    worst_slack = std::min(worst_slack, cap + 0.05 - e.value);
    ok = ok && e.value <= cap + 0.05;
    points.emplace_back(snr, e.value);
  }
  double slope = wpnc::prelog_slope(points);
  ok = ok && slope >= 0.40 && slope <= 0.55;
  criterion(5, ok,
            "amplitude channel rates under cap, half-log growth " +
                fmt("(slope = %.4f, worst cap slack = %.3f)", slope, worst_slack));
}

// 6. Integrated fading: empirical mean gain matches (1 - e^{-u/2})/(u/2)
//    within 3 standard errors, imaginary part is centered, and the fading
//    concentrates at 1 as the sample duration shrinks.
void criterion_fading() {
  const int kDraws = 100000;
  const double deltas[] = {1.0, 0.1, 0.01};
  bool ok = true;
  std::vector<double> mean_dev;
  std::string detail;
  for (size_t i = 0; i < 3; ++i) {
    wpnc::ChannelParams p;
    p.gamma = 1.0;
    p.snr = 1.0;
    p.oversampling = 1;
    p.num_symbols = kDraws;
    p.sub_steps = 128;
    p.delta = deltas[i];
    wpnc::CounterRng rng(77, 6000 + i);
    wpnc::FadingBlock block = wpnc::sample_fading_block(p, rng);
    double sr = 0.0, si = 0.0, srr = 0.0, sii = 0.0, sdev = 0.0;
    for (const auto& s : block.samples) {
      sr += s.gain.real();
      si += s.gain.imag();
      srr += s.gain.real() * s.gain.real();
      sii += s.gain.imag() * s.gain.imag();
      sdev += std::abs(s.gain - std::complex<double>(1.0, 0.0));
    }
    double n = kDraws;
    double mr = sr / n, mi = si / n;
    double se_r = std::sqrt((srr / n - mr * mr) / n);
    double se_i = std::sqrt((sii / n - mi * mi) / n);
    double u = p.gamma * p.gamma * p.delta;
    double expected = (1.0 - std::exp(-0.5 * u)) / (0.5 * u);
    bool re_ok = std::fabs(mr - expected) <= 3.0 * se_r;
    bool im_ok = std::fabs(mi) <= 3.0 * se_i;
    ok = ok && re_ok && im_ok;
    mean_dev.push_back(sdev / n);
    detail += fmt("[u=%g re_dev=%.2fse im_dev=%.2fse] ", u,
                  std::fabs(mr - expected) / std::max(se_r, 1e-300),
                  std::fabs(mi) / std::max(se_i, 1e-300));
  }
  bool shrinking = mean_dev[0] > mean_dev[1] && mean_dev[1] > mean_dev[2];
  ok = ok && shrinking;
  criterion(6, ok,
            "integrated fading mean and concentration " + detail +
                fmt("E|F-1|: %.4f > %.4f > %.4f", mean_dev[0], mean_dev[1], mean_dev[2]));
}

// 7. High-snr offset: total bound minus (1+alpha)/2 log snr approaches
//    (1/2) log(pi / e) for gamma = 1, independent of alpha.
void criterion_offset() {
  const double kConstant = 0.0723649429247001;
  const double kTol = 1e-2;
  const double kSnr = 1e10;
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.0, 0.5, 1.0}) {
    wpnc::BoundReport r = wpnc::capacity_upper_bound(kSnr, alpha, 1.0);
    double offset = r.capacity_upper - r.prelog_upper * std::log(kSnr);
    worst = std::max(worst, std::fabs(offset - kConstant));
    ok = ok && std::fabs(offset - kConstant) <= kTol;
  }
  criterion(7, ok,
            "high snr capacity offset at alpha in {0, 1/2, 1} " +
                fmt("(worst |offset - %.10f| = %.3e)", kConstant, worst));
}

// 8. Reproducibility of the CLI: identical runs produce identical bytes, and
//    the worker count does not change any output.
void criterion_reproducible(const std::string& cli) {
  fs::path dir = "acceptance_tmp";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto at = [&dir](const std::string& n) { return (dir / n).string(); };
  bool ok = true;
  std::string detail;
  auto compare = [&](const std::string& name, const fs::path& a, const fs::path& b) {
    std::string sa = slurp(a), sb = slurp(b);
    bool same = !sa.empty() && sa == sb;
    ok = ok && same;
    detail += name + (same ? "=identical " : "=DIFFERS ");
  };

  std::string bounds = " bounds --snr 100 10000 --alpha 0 0.5 1 --gamma 0.5 1 --out ";
  ok = ok && run(cli + bounds + at("b1.csv")) == 0;
  ok = ok && run(cli + bounds + at("b2.csv")) == 0;
  compare("bounds", at("b1.csv"), at("b2.csv"));

  ok = ok && run(cli + " prelog --points 21 --out " + at("p1") + " >/dev/null") == 0;
  ok = ok && run(cli + " prelog --points 21 --out " + at("p2") + " >/dev/null") == 0;
  compare("prelog_csv", at("p1.csv"), at("p2.csv"));
  compare("prelog_svg", at("p1.svg"), at("p2.svg"));

  std::string sim = " simulate --model complete --gamma 1 --snr 10 --oversampling 4"
                    " --symbols 32 --substeps 64 --frames 2 --seed 11";
  ok = ok && run(cli + sim + " --dump-frames " + at("f1.csv") + " --dump-stats " + at("s1.csv") +
                 " >/dev/null") == 0;
  ok = ok && run(cli + sim + " --dump-frames " + at("f2.csv") + " --dump-stats " + at("s2.csv") +
                 " >/dev/null") == 0;
  compare("sim_frames", at("f1.csv"), at("f2.csv"));
  compare("sim_stats", at("s1.csv"), at("s2.csv"));

  std::string mi = " mi-sweep --channel phase --gamma 1 --delta 0.1 --samples 50000"
                   " --bins 32 --seed 3 --out ";
  ok = ok && run(cli + mi + at("m4a.ndjson") + " --workers 4") == 0;
  ok = ok && run(cli + mi + at("m4b.ndjson") + " --workers 4") == 0;
  ok = ok && run(cli + mi + at("m1.ndjson") + " --workers 1") == 0;
  compare("mi_repeat", at("m4a.ndjson"), at("m4b.ndjson"));
  compare("mi_workers", at("m4a.ndjson"), at("m1.ndjson"));

  std::string amp = " mi-sweep --channel amplitude --snr 100 10000 --samples 40000"
                    " --bins 64 --seed 3 --out ";
  ok = ok && run(cli + amp + at("a1.ndjson") + " --workers 1") == 0;
  ok = ok && run(cli + amp + at("a3.ndjson") + " --workers 3") == 0;
  compare("amp_workers", at("a1.ndjson"), at("a3.ndjson"));

  criterion(8, ok, "CLI reproducibility: " + detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  criterion_prelog();
  criterion_dominance();
  criterion_limit();
  criterion_phase_mi();
  criterion_amplitude_mi();
  criterion_fading();
  criterion_offset();
  criterion_reproducible(argv[1]);
  if (g_failed == 0) {
    std::cout << "acceptance: all 8 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failed << " criteria failed\n";
  return 1;
}

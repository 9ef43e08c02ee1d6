// Command line front end: analytic bound tables, growth-exponent curves,
// inequality validation, frame simulation, and Monte Carlo rate sweeps.
//
// Exit codes: 0 success, 1 a validation check or runtime step failed,
// 2 usage or configuration error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpnc/wpnc.hpp"

using nlohmann::json;

namespace {

struct BoundsOpts {
  std::vector<double> snr{1e4};
  std::vector<double> alpha{0.5};
  std::vector<double> gamma{1.0};
  std::string format = "csv";
  std::string out;
  std::string config;
};

struct PrelogOpts {
  int points = 101;
  std::string format = "both";
  std::string out;
  std::string config;
};

struct ValidateOpts {
  std::vector<double> gamma{0.1, 1.0};
  std::vector<double> delta{1.0, 0.1, 0.01, 0.001};
  int pdf_points = 10000;
  double slack = 1e-9;
  std::string config;
};

struct SimulateOpts {
  std::string model = "simplified";
  std::string law = "gaussian";
  double gamma = 1.0;
  double snr = 10.0;
  int oversampling = 4;
  int symbols = 16;
  int sub_steps = 128;
  int frames = 1;
  std::string theta0 = "uniform";
  bool suppress_noise = false;
  std::uint64_t seed = 1;
  std::string dump_frames;
  std::string dump_stats;
  std::string config;
};

struct MiOpts {
  std::string channel;
  std::vector<double> gamma{1.0};
  std::vector<double> delta{0.01};
  std::vector<double> snr{1e3, 1e4, 1e5};
  int oversampling = 1;
  long long samples = 1000000;
  int bins = 0;  // 0 = cube-root rule
  std::uint64_t seed = 1;
  int workers = 4;
  std::string out;
  std::string config;
};

// The config file is a flat JSON object whose keys mirror the long option
// names of the subcommand; values may be scalars or arrays for grid options.
// Flags given on the command line override config values.
json load_config_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config is not valid JSON: " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object: " + path);
  return cfg;
}

std::vector<double> as_list(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw std::invalid_argument("config key '" + key + "' must be numeric");
      out.push_back(e.get<double>());
    }
  } else if (v.is_number()) {
    out.push_back(v.get<double>());
  } else {
    throw std::invalid_argument("config key '" + key + "' must be a number or array");
  }
  return out;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw std::invalid_argument("config key '" + key + "' must be numeric");
  return v.get<double>();
}

// Pulls "--config <path>" out of argv ahead of the normal parse so the file
// can preload option defaults.
std::string prescan_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  }
  return {};
}

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_ = wpnc::open_output(path);
      out_ = &file_;
    } else {
      out_ = &std::cout;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

void require_grid(const std::vector<double>& v, const std::string& name) {
  if (v.empty()) throw std::invalid_argument("empty grid for --" + name);
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value in --" + name);
  }
}

json bound_report_record(const wpnc::BoundReport& r) {
  return json{{"schema_version", 1},
              {"record", "bound_report"},
              {"snr", r.snr},
              {"alpha", r.alpha},
              {"gamma", r.gamma},
              {"L", r.oversampling},
              {"delta", r.delta},
              {"amplitude_bound", r.amplitude_bound},
              {"phase_bound", r.phase_bound},
              {"g_value", r.g_value},
              {"capacity_upper", r.capacity_upper},
              {"prelog_upper", r.prelog_upper},
              {"prelog_lower", r.prelog_lower}};
}

int cmd_bounds(const BoundsOpts& o) {
  require_grid(o.snr, "snr");
  require_grid(o.alpha, "alpha");
  require_grid(o.gamma, "gamma");
  if (o.format != "csv" && o.format != "json") {
    throw std::invalid_argument("--format must be csv or json");
  }
  OutputTarget target(o.out);
  std::ostream& out = target.stream();
  if (o.format == "csv") wpnc::write_bound_report_header(out);
  for (double snr : o.snr) {
    for (double alpha : o.alpha) {
      for (double gamma : o.gamma) {
        wpnc::BoundReport r = wpnc::capacity_upper_bound(snr, alpha, gamma);
        if (o.format == "csv") {
          wpnc::write_bound_report_row(out, r);
        } else {
          out << bound_report_record(r).dump() << '\n';
        }
      }
    }
  }
  return 0;
}

int cmd_prelog(const PrelogOpts& o) {
  if (o.points < 2) throw std::invalid_argument("--points must be at least 2");
  if (o.format != "csv" && o.format != "svg" && o.format != "both") {
    throw std::invalid_argument("--format must be csv, svg, or both");
  }
  bool want_csv = o.format != "svg";
  bool want_svg = o.format != "csv";
  std::vector<wpnc::PlotSeries> series(2);
  series[0].label = "upper";
  series[1].label = "lower";
  std::ostringstream csv;
  wpnc::CsvWriter w(csv);
  csv << "alpha,prelog_upper,prelog_lower\n";
  for (int i = 0; i < o.points; ++i) {
    double alpha = static_cast<double>(i) / (o.points - 1);
    double up = wpnc::prelog_upper(alpha);
    double lo = wpnc::prelog_lower(alpha);
    w.row(alpha, up, lo);
    series[0].points.emplace_back(alpha, up);
    series[1].points.emplace_back(alpha, lo);
  }
  if (o.out.empty()) {
    if (want_csv) {
      std::cout << csv.str();
    } else {
      wpnc::write_line_plot(std::cout, "capacity growth exponents",
                            "oversampling exponent alpha", "pre-log", series);
    }
    return 0;
  }
  std::string wrote;
  if (want_csv) {
    std::ofstream f = wpnc::open_output(o.out + ".csv");
    f << csv.str();
    wrote = o.out + ".csv";
  }
  if (want_svg) {
    std::ofstream f = wpnc::open_output(o.out + ".svg");
    wpnc::write_line_plot(f, "capacity growth exponents", "oversampling exponent alpha",
                          "pre-log", series);
    if (!wrote.empty()) wrote += " and ";
    wrote += o.out + ".svg";
  }
  std::cout << "wrote " << wrote << '\n';
  return 0;
}

struct CheckLine {
  bool ok = false;
  std::string name;
  double gamma = 0.0;
  double delta = 0.0;
  double margin = 0.0;
};

void print_check(const CheckLine& c) {
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << c.name;
  for (size_t i = c.name.size(); i < 18; ++i) std::cout << ' ';
  char buf[96];
  std::snprintf(buf, sizeof buf, "gamma=%-6g delta=%-8g margin=%.6e", c.gamma, c.delta, c.margin);
  std::cout << buf << '\n';
}

int cmd_validate(const ValidateOpts& o) {
  require_grid(o.gamma, "gamma");
  require_grid(o.delta, "delta");
  if (o.pdf_points < 2) throw std::invalid_argument("--pdf-points must be at least 2");
  if (!(o.slack >= 0.0)) throw std::invalid_argument("--slack must be nonnegative");
  int failures = 0;
  auto emit = [&failures](CheckLine c) {
    failures += !c.ok;
    print_check(c);
  };
  for (double gamma : o.gamma) {
    for (double delta : o.delta) {
      double u = gamma * gamma * delta;

      double pdf_margin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < o.pdf_points; ++i) {
        double x = -wpnc::pi + wpnc::two_pi * (i + 0.5) / o.pdf_points;
        pdf_margin = std::min(pdf_margin, wpnc::wrapped_gauss_pdf_bound(x, u) -
                                              wpnc::wrapped_gauss_pdf(x, u));
      }
      emit({pdf_margin >= -o.slack, "pdf-dominance", gamma, delta, pdf_margin});

      double sm_margin = wpnc::second_moment(u) - wpnc::second_moment_lower_bound(u);
      emit({sm_margin >= -o.slack, "second-moment", gamma, delta, sm_margin});

      double em_margin = wpnc::exp_tilt_moment_bound(u) - wpnc::exp_tilt_moment(u);
      emit({em_margin >= -o.slack, "tilted-moment", gamma, delta, em_margin});

      double h = wpnc::wrapped_entropy(u);
      double lb_margin = h - wpnc::entropy_lower_bound(gamma, delta);
      emit({lb_margin >= -o.slack, "entropy-lower", gamma, delta, lb_margin});

      double ub_margin = 0.5 * std::log(wpnc::two_pi * std::numbers::e * u) - h;
      emit({ub_margin >= -o.slack, "entropy-upper", gamma, delta, ub_margin});
    }
  }
  std::cout << (failures == 0 ? "all checks passed" : "checks FAILED") << " ("
            << o.gamma.size() * o.delta.size() << " parameter points)\n";
  return failures == 0 ? 0 : 1;
}

wpnc::InputLaw parse_law(const std::string& s) {
  if (s == "gaussian") return wpnc::InputLaw::cs_gaussian;
  if (s == "uniform-phase") return wpnc::InputLaw::uniform_phase;
  if (s == "amplitude") return wpnc::InputLaw::amplitude_only;
  throw std::invalid_argument("--input-law must be gaussian, uniform-phase, or amplitude");
}

int cmd_simulate(const SimulateOpts& o) {
  if (o.model != "simplified" && o.model != "complete") {
    throw std::invalid_argument("--model must be simplified or complete");
  }
  wpnc::InputLaw law = parse_law(o.law);
  if (o.frames < 1) throw std::invalid_argument("--frames must be at least 1");
  wpnc::ChannelParams p;
  p.gamma = o.gamma;
  p.snr = o.snr;
  p.oversampling = o.oversampling;
  p.num_symbols = o.symbols;
  p.sub_steps = o.sub_steps;
  p.delta = 1.0 / o.oversampling;
  p.validate();

  bool uniform_theta0 = o.theta0 == "uniform";
  double fixed_theta0 = 0.0;
  if (!uniform_theta0) {
    size_t used = 0;
    try {
      fixed_theta0 = std::stod(o.theta0, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--theta0 must be a number or 'uniform'");
    }
    if (used != o.theta0.size() || !std::isfinite(fixed_theta0)) {
      throw std::invalid_argument("--theta0 must be a number or 'uniform'");
    }
  }

  std::ofstream frames_out;
  std::ofstream stats_out;
  if (!o.dump_frames.empty()) {
    frames_out = wpnc::open_output(o.dump_frames);
    frames_out << "frame,n,re_y,im_y,block\n";
  }
  if (!o.dump_stats.empty()) {
    stats_out = wpnc::open_output(o.dump_stats);
    stats_out << "frame,block,energy,re_mean,im_mean,phase_stat,true_amp,true_phase\n";
  }

  double power_acc = 0.0;
  long long sample_count = 0;
  for (int f = 0; f < o.frames; ++f) {
    wpnc::CounterRng rng(o.seed, 1000 + static_cast<std::uint64_t>(f));
    double theta0 = uniform_theta0 ? rng.next_angle() : fixed_theta0;
    auto xs = wpnc::draw_input_symbols(p, law, rng);
    wpnc::FrameRealization frame;
    if (o.model == "simplified") {
      wpnc::PhasePath path = wpnc::sample_phase_path(p, theta0, rng);
      frame = wpnc::transmit_simplified(xs, path, rng, o.suppress_noise);
    } else {
      wpnc::FadingBlock fading = wpnc::sample_fading_block(p, rng);
      frame = wpnc::transmit_complete(xs, fading, theta0, rng, o.suppress_noise);
    }
    for (size_t i = 0; i < frame.samples.size(); ++i) {
      power_acc += std::norm(frame.samples[i]);
      ++sample_count;
      if (frames_out.is_open()) {
        wpnc::CsvWriter w(frames_out);
        w.row(f + 1, static_cast<long long>(i) + 1, frame.samples[i].real(),
              frame.samples[i].imag(), static_cast<long long>(i) / o.oversampling + 1);
      }
    }
    if (stats_out.is_open()) {
      wpnc::CsvWriter w(stats_out);
      for (const auto& s : wpnc::frame_statistics(frame)) {
        w.row(f + 1, s.block_index, s.energy, s.mean.real(), s.mean.imag(), s.phase_increment,
              s.symbol_amplitude, s.symbol_phase);
      }
    }
  }
  std::cout << "simulate model=" << o.model << " law=" << o.law << " frames=" << o.frames
            << " samples=" << sample_count << " mean_power=" << power_acc / sample_count << '\n';
  return 0;
}

// Worker count is deliberately absent: estimates are worker-invariant, so
// records from differently parallel runs stay byte-identical.
json mi_record_common(const wpnc::MiEstimate& e, const MiOpts& o) {
  return json{{"schema_version", 1},       {"record", "mi"},
              {"value", e.value},          {"std_error", e.std_error},
              {"stat_error", e.stat_error},{"bias_hint", e.bias_hint},
              {"samples", e.samples},      {"bins", e.bins},
              {"reliable", e.reliable},    {"method", e.method},
              {"seed", o.seed}};
}

int cmd_mi(const MiOpts& o) {
  if (o.channel != "phase" && o.channel != "amplitude") {
    throw std::invalid_argument("--channel must be phase or amplitude");
  }
  if (o.workers < 1) throw std::invalid_argument("--workers must be at least 1");
  OutputTarget target(o.out);
  std::ostream& out = target.stream();
  if (o.channel == "phase") {
    require_grid(o.gamma, "gamma");
    require_grid(o.delta, "delta");
    for (double gamma : o.gamma) {
      for (double delta : o.delta) {
        wpnc::MiEstimate e =
            wpnc::mi_phase_channel(gamma, delta, o.samples, o.bins, o.seed, o.workers);
        json rec = mi_record_common(e, o);
        rec["channel"] = "phase";
        rec["gamma"] = gamma;
        rec["delta"] = delta;
        rec["sigma2"] = gamma * gamma * delta;
        rec["reference"] = e.reference;
        rec["quantization_gap"] = e.quantization_gap;
        out << rec.dump() << '\n';
      }
    }
    return 0;
  }
  require_grid(o.snr, "snr");
  std::vector<std::pair<double, double>> points;
  for (double snr : o.snr) {
    wpnc::MiEstimate e =
        wpnc::mi_amplitude_channel(snr, o.oversampling, o.samples, o.bins, o.seed, o.workers);
    json rec = mi_record_common(e, o);
    rec["channel"] = "amplitude";
    rec["snr"] = snr;
    rec["oversampling"] = o.oversampling;
    out << rec.dump() << '\n';
    points.emplace_back(snr, e.value);
  }
  try {
    double slope = wpnc::prelog_slope(points);
    double lo = points[0].first, hi = points[0].first;
    for (auto [snr, rate] : points) {
      lo = std::min(lo, snr);
      hi = std::max(hi, snr);
    }
    json rec{{"schema_version", 1}, {"record", "prelog_slope"}, {"channel", "amplitude"},
             {"oversampling", o.oversampling}, {"num_points", points.size()},
             {"snr_min", lo},      {"snr_max", hi},             {"slope", slope},
             {"samples", o.samples}, {"bins", o.bins}, {"seed", o.seed}};
    out << rec.dump() << '\n';
  } catch (const std::invalid_argument& e) {
    json rec{{"schema_version", 1},
             {"record", "warning"},
             {"channel", "amplitude"},
             {"message", std::string("no slope fit: ") + e.what()}};
    out << rec.dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wiener phase noise channel: bounds, validation, simulation, rate estimates"};
  app.require_subcommand(1);

  BoundsOpts bounds_opts;
  PrelogOpts prelog_opts;
  ValidateOpts validate_opts;
  SimulateOpts simulate_opts;
  MiOpts mi_opts;

  // Config preloading happens before CLI11 sees argv, so file values act as
  // defaults and explicit flags override them.
  std::string config_path = prescan_config(argc, argv);
  json cfg;
  if (!config_path.empty()) {
    try {
      cfg = load_config_or_throw(config_path);
      auto get = [&cfg](const char* key) -> const json* {
        auto it = cfg.find(key);
        return it == cfg.end() ? nullptr : &*it;
      };
      if (const json* v = get("snr")) {
        bounds_opts.snr = as_list(*v, "snr");
        mi_opts.snr = bounds_opts.snr;
        if (!bounds_opts.snr.empty()) simulate_opts.snr = bounds_opts.snr.front();
      }
      if (const json* v = get("alpha")) bounds_opts.alpha = as_list(*v, "alpha");
      if (const json* v = get("gamma")) {
        bounds_opts.gamma = as_list(*v, "gamma");
        validate_opts.gamma = bounds_opts.gamma;
        mi_opts.gamma = bounds_opts.gamma;
        if (!bounds_opts.gamma.empty()) simulate_opts.gamma = bounds_opts.gamma.front();
      }
      if (const json* v = get("delta")) {
        validate_opts.delta = as_list(*v, "delta");
        mi_opts.delta = validate_opts.delta;
      }
      if (const json* v = get("points")) prelog_opts.points = static_cast<int>(as_number(*v, "points"));
      if (const json* v = get("format")) {
        if (!v->is_string()) throw std::invalid_argument("config key 'format' must be a string");
        bounds_opts.format = v->get<std::string>();
        prelog_opts.format = bounds_opts.format;
      }
      if (const json* v = get("pdf-points")) validate_opts.pdf_points = static_cast<int>(as_number(*v, "pdf-points"));
      if (const json* v = get("slack")) validate_opts.slack = as_number(*v, "slack");
      if (const json* v = get("samples")) mi_opts.samples = static_cast<long long>(as_number(*v, "samples"));
      if (const json* v = get("bins")) mi_opts.bins = static_cast<int>(as_number(*v, "bins"));
      if (const json* v = get("seed")) {
        mi_opts.seed = static_cast<std::uint64_t>(as_number(*v, "seed"));
        simulate_opts.seed = mi_opts.seed;
      }
      if (const json* v = get("workers")) mi_opts.workers = static_cast<int>(as_number(*v, "workers"));
      if (const json* v = get("oversampling")) {
        mi_opts.oversampling = static_cast<int>(as_number(*v, "oversampling"));
        simulate_opts.oversampling = mi_opts.oversampling;
      }
      if (const json* v = get("symbols")) simulate_opts.symbols = static_cast<int>(as_number(*v, "symbols"));
      if (const json* v = get("substeps")) simulate_opts.sub_steps = static_cast<int>(as_number(*v, "substeps"));
      if (const json* v = get("frames")) simulate_opts.frames = static_cast<int>(as_number(*v, "frames"));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }

  CLI::App* bounds = app.add_subcommand("bounds", "analytic capacity bound table over a grid");
  bounds->add_option("--snr", bounds_opts.snr, "snr grid");
  bounds->add_option("--alpha", bounds_opts.alpha, "oversampling exponent grid, each in [0,1]");
  bounds->add_option("--gamma", bounds_opts.gamma, "phase diffusion rate grid");
  bounds->add_option("--format", bounds_opts.format, "csv or json");
  bounds->add_option("--out", bounds_opts.out, "output path (stdout if omitted)");
  bounds->add_option("--config", bounds_opts.config, "JSON defaults file; flags override");

  CLI::App* prelog = app.add_subcommand("prelog", "growth exponent curves as csv and svg");
  prelog->add_option("--points", prelog_opts.points, "grid points on alpha in [0,1]");
  prelog->add_option("--format", prelog_opts.format, "csv, svg, or both");
  prelog->add_option("--out", prelog_opts.out, "output base path; writes .csv and/or .svg");
  prelog->add_option("--config", prelog_opts.config, "JSON defaults file; flags override");

  CLI::App* validate =
      app.add_subcommand("validate-appendix", "check the inequality chain behind the bounds");
  validate->add_option("--gamma", validate_opts.gamma, "diffusion rate grid");
  validate->add_option("--delta", validate_opts.delta, "sample duration grid");
  validate->add_option("--pdf-points", validate_opts.pdf_points, "density scan resolution");
  validate->add_option("--slack", validate_opts.slack, "allowed numerical slack");
  validate->add_option("--config", validate_opts.config, "JSON defaults file; flags override");

  CLI::App* simulate = app.add_subcommand("simulate", "generate frames and receiver statistics");
  simulate->add_option("--model", simulate_opts.model, "simplified or complete");
  simulate->add_option("--input-law", simulate_opts.law, "gaussian, uniform-phase, or amplitude");
  simulate->add_option("--gamma", simulate_opts.gamma, "phase diffusion rate");
  simulate->add_option("--snr", simulate_opts.snr, "average symbol power");
  simulate->add_option("--oversampling", simulate_opts.oversampling, "samples per symbol");
  simulate->add_option("--symbols", simulate_opts.symbols, "symbols per frame");
  simulate->add_option("--substeps", simulate_opts.sub_steps, "integrator sub-steps per sample");
  simulate->add_option("--frames", simulate_opts.frames, "number of frames");
  simulate->add_option("--theta0", simulate_opts.theta0, "initial phase value, or 'uniform'");
  simulate->add_flag("--suppress-noise", simulate_opts.suppress_noise, "disable additive noise");
  simulate->add_option("--seed", simulate_opts.seed, "random seed");
  simulate->add_option("--dump-frames", simulate_opts.dump_frames, "per-sample csv path");
  simulate->add_option("--dump-stats", simulate_opts.dump_stats, "per-block csv path");
  simulate->add_option("--config", simulate_opts.config, "JSON defaults file; flags override");

  CLI::App* mi = app.add_subcommand("mi-sweep", "Monte Carlo rate estimates as NDJSON");
  mi->add_option("--channel", mi_opts.channel, "phase or amplitude")->required();
  mi->add_option("--gamma", mi_opts.gamma, "diffusion rate grid (phase channel)");
  mi->add_option("--delta", mi_opts.delta, "sample duration grid (phase channel)");
  mi->add_option("--snr", mi_opts.snr, "snr grid (amplitude channel)");
  mi->add_option("--oversampling", mi_opts.oversampling, "samples per symbol (amplitude channel)");
  mi->add_option("--samples", mi_opts.samples, "Monte Carlo sample count");
  mi->add_option("--bins", mi_opts.bins, "histogram bins per axis; 0 = cube-root rule");
  mi->add_option("--seed", mi_opts.seed, "random seed");
  mi->add_option("--workers", mi_opts.workers, "worker threads (result is worker-invariant)");
  mi->add_option("--out", mi_opts.out, "output path (stdout if omitted)");
  mi->add_option("--config", mi_opts.config, "JSON defaults file; flags override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(bounds_opts);
    if (prelog->parsed()) return cmd_prelog(prelog_opts);
    if (validate->parsed()) return cmd_validate(validate_opts);
    if (simulate->parsed()) return cmd_simulate(simulate_opts);
    if (mi->parsed()) return cmd_mi(mi_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

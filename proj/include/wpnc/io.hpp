#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "bounds.hpp"

namespace wpnc {

// Round-trip exact decimal form; parsing the string recovers the same bits.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

namespace detail {

inline std::string csv_cell(const std::string& s) { return s; }
inline std::string csv_cell(const char* s) { return s; }
inline std::string csv_cell(double x) { return format_double(x); }
inline std::string csv_cell(int x) { return std::to_string(x); }
inline std::string csv_cell(long long x) { return std::to_string(x); }

}  // namespace detail

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  template <class... Ts>
  void row(const Ts&... cells) {
    const std::string parts[] = {detail::csv_cell(cells)...};
    for (size_t i = 0; i < sizeof...(Ts); ++i) {
      if (i) out_ << ',';
      out_ << parts[i];
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

inline constexpr const char* kBoundReportColumns =
    "snr,alpha,gamma,L,delta,amplitude_bound,phase_bound,g_value,capacity_upper,"
    "prelog_upper,prelog_lower";

inline void write_bound_report_header(std::ostream& out) { out << kBoundReportColumns << '\n'; }

inline void write_bound_report_row(std::ostream& out, const BoundReport& r) {
  CsvWriter w(out);
  w.row(r.snr, r.alpha, r.gamma, r.oversampling, r.delta, r.amplitude_bound, r.phase_bound,
        r.g_value, r.capacity_upper, r.prelog_upper, r.prelog_lower);
}

}  // namespace wpnc

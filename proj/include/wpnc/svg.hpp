#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpnc {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace detail

// Self-contained line plot: one <polyline> per series, fixed 760x480 canvas,
// deterministic output for identical input.
inline void write_line_plot(std::ostream& out, const std::string& title,
                            const std::string& x_label, const std::string& y_label,
                            std::span<const PlotSeries> series) {
  if (series.empty()) throw std::invalid_argument("write_line_plot: no series");
  constexpr double W = 760, H = 480, ml = 80, mr = 24, mt = 48, mb = 56;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool first = true;
  for (const auto& s : series) {
    if (s.points.empty()) throw std::invalid_argument("write_line_plot: empty series");
    for (auto [x, y] : s.points) {
      if (first) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        first = false;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi - x_lo <= 0) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  double pad = (y_hi - y_lo) * 0.05;
  if (pad <= 0) pad = 0.5;
  y_lo -= pad;
  y_hi += pad;
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y_lo) / (y_hi - y_lo) * (H - mt - mb); };

  static const char* palette[] = {"#1f6fb4", "#c4423b", "#3a8f4d", "#8157a8"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\" "
         "font-family=\"sans-serif\">" << title << "</text>\n";

  // Axes and ticks.
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    double fx = x_lo + (x_hi - x_lo) * t / kTicks;
    double fy = y_lo + (y_hi - y_lo) * t / kTicks;
    double gx = px(fx), gy = py(fy);
    out << "<line x1=\"" << detail::svg_num(gx) << "\" y1=\"" << H - mb << "\" x2=\""
        << detail::svg_num(gx) << "\" y2=\"" << H - mb + 6 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << detail::svg_num(gx) << "\" y=\"" << H - mb + 22
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
        << detail::tick_label(fx) << "</text>\n";
    out << "<line x1=\"" << ml - 6 << "\" y1=\"" << detail::svg_num(gy) << "\" x2=\"" << ml
        << "\" y2=\"" << detail::svg_num(gy) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 10 << "\" y=\"" << detail::svg_num(gy + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
        << detail::tick_label(fy) << "</text>\n";
  }
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">" << x_label
      << "</text>\n";
  out << "<text x=\"20\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 20 " << (mt + H - mb) / 2 << ")\">" << y_label << "</text>\n";

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < series[s].points.size(); ++i) {
      if (i) out << ' ';
      out << detail::svg_num(px(series[s].points[i].first)) << ','
          << detail::svg_num(py(series[s].points[i].second));
    }
    out << "\"/>\n";
    double ly = mt + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << W - mr - 150 << "\" y1=\"" << detail::svg_num(ly) << "\" x2=\""
        << W - mr - 122 << "\" y2=\"" << detail::svg_num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << W - mr - 116 << "\" y=\"" << detail::svg_num(ly + 4)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace wpnc

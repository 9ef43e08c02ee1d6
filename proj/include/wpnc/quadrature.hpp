#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wpnc {

struct QuadratureOptions {
  long initial_panels = 2048;
  int max_doublings = 12;
  double abs_tol = 1e-9;
  double rel_tol = 1e-12;
};

struct QuadratureResult {
  double value = 0.0;
  long panels = 0;
  bool converged = false;
};

// Composite Simpson on [a, b]; each panel contributes its midpoint, so the
// rule evaluates f at 2 * panels + 1 abscissae.
template <class F>
double simpson(F&& f, double a, double b, long panels) {
  double h = (b - a) / static_cast<double>(panels);
  double ends = f(a) + f(b);
  double mids = 0.0;
  double interior = 0.0;
  for (long i = 0; i < panels; ++i) {
    mids += f(a + h * (static_cast<double>(i) + 0.5));
    if (i > 0) interior += f(a + h * static_cast<double>(i));
  }
  return (h / 6.0) * (ends + 4.0 * mids + 2.0 * interior);
}

// Doubles the panel count until two successive estimates agree to
// abs_tol + rel_tol * |I|.  converged stays false if the budget runs out;
// the last estimate is still returned.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, QuadratureOptions opt = {}) {
  if (!(b > a)) throw std::invalid_argument("integrate: interval is empty");
  long panels = opt.initial_panels;
  double prev = simpson(f, a, b, panels);
  for (int d = 0; d < opt.max_doublings; ++d) {
    panels *= 2;
    double cur = simpson(f, a, b, panels);
    if (std::fabs(cur - prev) <= opt.abs_tol + opt.rel_tol * std::fabs(cur)) {
      return {cur, panels, true};
    }
    prev = cur;
  }
  return {prev, panels, false};
}

}  // namespace wpnc

#include "qeraser/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qeraser {

Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi > lo)) throw std::invalid_argument("golden_section_max: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

Maximum grid_max(const std::function<double(double)>& f, double lo, double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("grid_max: need at least two points");
  Maximum best{lo, f(lo)};
  for (std::size_t i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

Maximum refined_max(const std::function<double(double)>& f, double lo, double hi, std::size_t points,
                    double tol) {
  Maximum coarse = grid_max(f, lo, hi, points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  const double a = std::max(lo, coarse.x - step);
  const double b = std::min(hi, coarse.x + step);
  Maximum fine = golden_section_max(f, a, b, tol);
  return fine.value >= coarse.value ? fine : coarse;
}

Maximum2d grid_max_2d(const std::function<double(double, double)>& f, double xlo, double xhi, double ylo,
                      double yhi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("grid_max_2d: need at least two points");
  Maximum2d best{xlo, ylo, f(xlo, ylo)};
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = xlo + (xhi - xlo) * static_cast<double>(i) / n;
    for (std::size_t j = 0; j < points; ++j) {
      const double y = ylo + (yhi - ylo) * static_cast<double>(j) / n;
      const double v = f(x, y);
      if (v > best.value) best = {x, y, v};
    }
  }
  return best;
}

}  // namespace qeraser

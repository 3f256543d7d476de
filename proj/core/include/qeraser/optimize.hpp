// One-dimensional maximizers used to cross-check closed-form optima.
#pragma once

#include <cstddef>
#include <functional>

namespace qeraser {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

struct Maximum2d {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than `tol`.
Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-10);

/// Best of `points` evenly spaced samples including both endpoints.
Maximum grid_max(const std::function<double(double)>& f, double lo, double hi, std::size_t points);

/// Grid search followed by golden-section refinement inside the best cell.
Maximum refined_max(const std::function<double(double)>& f, double lo, double hi,
                    std::size_t points = 1001, double tol = 1e-10);

Maximum2d grid_max_2d(const std::function<double(double, double)>& f, double xlo, double xhi,
                      double ylo, double yhi, std::size_t points);

}  // namespace qeraser

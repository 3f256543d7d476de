#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qeraser/hilbert.hpp"

namespace qeraser::testing {

inline StateVector random_state(const Basis& basis, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(n(gen), n(gen));
  return StateVector(basis, v / v.norm());
}

inline double random_angle(std::mt19937_64& gen, double lo = -kPi, double hi = kPi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qeraser::testing

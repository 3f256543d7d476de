#include "qeraser/binary_attack.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qeraser/binary_protocol.hpp"

namespace qeraser::binary_attack {

namespace {

const Basis kBasis = Basis::path_polarization();

StateVector combo(double a, const StateVector& x, double b, const StateVector& y) { return a * x + b * y; }

bool near_multiple_of_pi(double g) {
  const double r = std::remainder(g, kPi);
  return std::abs(r) < 1e-12;
}

}  // namespace

EraserBasis eraser_basis(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  auto lab = [](Path p, Pol q) { return Label{p, q}; };
  return {
      StateVector::from_terms(kBasis, {{lab(Path::U, Pol::V), c}, {lab(Path::L, Pol::H), s}}),
      StateVector::from_terms(kBasis, {{lab(Path::U, Pol::H), c}, {lab(Path::L, Pol::V), -s}}),
      StateVector::from_terms(kBasis, {{lab(Path::U, Pol::H), s}, {lab(Path::L, Pol::V), c}}),
      StateVector::from_terms(kBasis, {{lab(Path::U, Pol::V), s}, {lab(Path::L, Pol::H), -c}}),
  };
}

std::array<StateVector, 2> two_state_measurement(double kappa) {
  const EraserBasis e = eraser_basis();
  const double c = std::cos(kappa), s = std::sin(kappa);
  return {combo(c, e.phi1_plus, s, e.phi2_plus), combo(s, e.phi1_plus, -c, e.phi2_plus)};
}

std::array<StateVector, 4> four_state_measurement(double kappa1, double kappa2) {
  const EraserBasis e = eraser_basis();
  const double c1 = std::cos(kappa1), s1 = std::sin(kappa1);
  const double c2 = std::cos(kappa2), s2 = std::sin(kappa2);
  return {combo(c1, e.phi1_plus, s1, e.phi2_plus), combo(s1, e.phi1_plus, -c1, e.phi2_plus),
          combo(c2, e.phi1_minus, s2, e.phi2_minus), combo(s2, e.phi1_minus, -c2, e.phi2_minus)};
}

double p_correct_two_state(double kappa) {
  const double c = std::cos(kappa), s = std::sin(kappa);
  return 0.25 * (c + s) * (c + s) + 0.5 * s * s;
}

double p_correct_two_state_closed(double kappa) {
  return 0.5 + 0.25 * std::sin(2.0 * kappa) - 0.25 * std::cos(2.0 * kappa);
}

double p_correct_two_state_born(double kappa) {
  const auto alpha = two_state_measurement(kappa);
  const auto phi0 = binary::channel_state(0, binary::PolSign::Plus, kPi / 4).vector;
  const auto phi1 = binary::channel_state(1, binary::PolSign::Plus, kPi / 4).vector;
  return 0.5 * born_probability(phi0, alpha[0]) + 0.5 * born_probability(phi1, alpha[1]);
}

Maximum two_state_optimum() { return {3.0 * kPi / 8.0, p_correct_two_state_closed(3.0 * kPi / 8.0)}; }

double p_correct_four_state(double kappa1, double kappa2) {
  const double c1 = std::cos(kappa1), s1 = std::sin(kappa1);
  const double c2 = std::cos(kappa2), s2 = std::sin(kappa2);
  return 0.25 * (0.5 * (c1 + s1) * (c1 + s1) + s1 * s1 + 0.5 * (c2 - s2) * (c2 - s2) + s2 * s2);
}

double p_correct_four_state_born(double kappa1, double kappa2) {
  const auto alpha = four_state_measurement(kappa1, kappa2);
  using binary::PolSign;
  const std::array<StateVector, 4> states = {
      binary::channel_state(0, PolSign::Plus, kPi / 4).vector, binary::channel_state(1, PolSign::Plus, kPi / 4).vector,
      binary::channel_state(0, PolSign::Minus, kPi / 4).vector, binary::channel_state(1, PolSign::Minus, kPi / 4).vector};
  double p = 0.0;
  for (std::size_t i = 0; i < 4; ++i) p += 0.25 * born_probability(states[i], alpha[i]);
  return p;
}

std::array<double, 4> four_state_marginals(double kappa1, double kappa2) {
  const auto alpha = four_state_measurement(kappa1, kappa2);
  using binary::PolSign;
  const std::array<StateVector, 4> states = {
      binary::channel_state(0, PolSign::Plus, kPi / 4).vector, binary::channel_state(1, PolSign::Plus, kPi / 4).vector,
      binary::channel_state(0, PolSign::Minus, kPi / 4).vector, binary::channel_state(1, PolSign::Minus, kPi / 4).vector};
  std::array<double, 4> m{};
  for (std::size_t j = 0; j < 4; ++j)
    for (const auto& s : states) m[j] += 0.25 * born_probability(s, alpha[j]);
  return m;
}

double p_correct_random_pol(double omega) {
  const double c = std::cos(omega), s = std::sin(omega);
  return 0.5 * (c * c + 0.5 * (c + s) * (c + s));
}

double random_pol_balance(double omega) {
  const double c = std::cos(omega), s = std::sin(omega);
  return c * c - 0.5 * (c + s) * (c + s);
}

double random_pol_optimum_omega() { return 0.5 * std::atan(1.0); }

Bb84Analysis bb84_analysis(double kappa_prime) {
  const Basis pol = Basis::polarization();
  const double c = std::cos(kappa_prime), s = std::sin(kappa_prime), r = 1.0 / std::sqrt(2.0);
  const Label H{std::nullopt, Pol::H}, V{std::nullopt, Pol::V};
  const std::array<StateVector, 4> states = {
      StateVector::basis_state(pol, H), StateVector::basis_state(pol, V),
      StateVector::from_terms(pol, {{H, r}, {V, r}}), StateVector::from_terms(pol, {{H, r}, {V, -r}})};
  const std::array<StateVector, 2> alpha = {StateVector::from_terms(pol, {{H, c}, {V, s}}),
                                            StateVector::from_terms(pol, {{H, -s}, {V, c}})};
  Bb84Analysis out;
  out.bit_success = 0.5 * (c + s) * c + 0.25;
  out.state_reproduction = 0.5 * out.bit_success;
  double map = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    double best = 0.0, marginal = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double p = born_probability(states[i], alpha[j]);
      best = std::max(best, p);
      marginal += 0.25 * p;
    }
    map += 0.25 * best;
    (j == 0 ? out.marginal_alpha1 : out.marginal_alpha2) = marginal;
  }
  out.map_state_reproduction = map;
  return out;
}

Maximum bb84_best_map_state_reproduction() {
  return grid_max([](double k) { return bb84_analysis(k).map_state_reproduction; }, 0.0, kPi, 3601);
}

double b_value(double alpha, double gamma_A) {
  const double a = std::sin(alpha + gamma_A), b = std::cos(alpha);
  return 0.5 * (a * a + b * b);
}

BPole b_pole(double gamma_A, int k) {
  if (gamma_A < -kPi / 2 - 1e-12 || gamma_A > kPi / 2 + 1e-12)
    throw std::invalid_argument("gamma_A must lie in [-pi/2, pi/2]");
  const double alpha = k * kPi / 2.0 + kPi / 4.0 - gamma_A / 2.0;
  return {alpha, b_value(alpha, gamma_A), near_multiple_of_pi(gamma_A)};
}

double b_pole_envelope(double gamma_A) {
  return std::max(b_pole(gamma_A, 0).probability, b_pole(gamma_A, 1).probability);
}

Maximum b_numeric_max(double gamma_A) {
  return refined_max([gamma_A](double a) { return b_value(a, gamma_A); }, 0.0, kPi, 3601, 1e-12);
}

double helstrom(double overlap) {
  if (overlap < 0.0 || overlap > 1.0) throw std::invalid_argument("overlap must lie in [0, 1]");
  return 0.5 * (1.0 + std::sqrt(1.0 - overlap * overlap));
}

}  // namespace qeraser::binary_attack

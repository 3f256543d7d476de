#include "qeraser/ternary_attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qeraser/ternary_protocol.hpp"

namespace qeraser::ternary_attack {

namespace {

const double kS3 = std::sqrt(3.0);

Label lab(Path p, Pol q) { return {p, q}; }

std::array<double, 2> rotate(const std::array<double, 2>& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v[0] - s * v[1], s * v[0] + c * v[1]};
}

// Calls f(outcomes, probability) for every outcome triple of the three rows of p
// taken in the given order.
template <class F>
void for_each_triple(const Eigen::MatrixXd& p, const std::array<int, 3>& rows, F&& f) {
  const int k = static_cast<int>(p.cols());
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) f(std::array<int, 3>{a, b, c}, p(rows[0], a) * p(rows[1], b) * p(rows[2], c));
}

PatternClass class_of(const std::array<int, 3>& o) {
  if (o[0] == o[1] && o[1] == o[2]) return PatternClass::Q1;
  if (o[0] != o[1] && o[1] != o[2] && o[0] != o[2]) return PatternClass::Q3;
  return PatternClass::Q2;
}

void require_rows(const Eigen::MatrixXd& p) {
  if (p.rows() != 3 || p.cols() < 1) throw std::invalid_argument("expected a 3-row detection matrix");
}

}  // namespace

std::array<StateVector, 4> phi_basis() {
  const Basis b = Basis::path_polarization();
  const double r = 1.0 / std::sqrt(2.0);
  return {
      StateVector::from_terms(b, {{lab(Path::U, Pol::H), r}, {lab(Path::L, Pol::H), r}}),
      StateVector::from_terms(b, {{lab(Path::U, Pol::V), r}, {lab(Path::L, Pol::V), r}}),
      StateVector::from_terms(b, {{lab(Path::U, Pol::V), r}, {lab(Path::L, Pol::V), -r}}),
      StateVector::from_terms(b, {{lab(Path::U, Pol::H), r}, {lab(Path::L, Pol::H), -r}}),
  };
}

std::array<StateVector, 3> channel_states() {
  const Basis b = Basis::path_polarization();
  const double r = 1.0 / std::sqrt(2.0);
  const double h = -0.5 * r, v = 0.5 * kS3 * r;
  return {
      StateVector::from_terms(b, {{lab(Path::U, Pol::H), r}, {lab(Path::L, Pol::H), r}}),
      StateVector::from_terms(
          b, {{lab(Path::U, Pol::H), h}, {lab(Path::U, Pol::V), v}, {lab(Path::L, Pol::H), h}, {lab(Path::L, Pol::V), -v}}),
      StateVector::from_terms(
          b, {{lab(Path::U, Pol::H), h}, {lab(Path::U, Pol::V), -v}, {lab(Path::L, Pol::H), h}, {lab(Path::L, Pol::V), v}}),
  };
}

LinearMap rotation_120() {
  const auto phi = phi_basis();
  Eigen::MatrixXcd basis(4, 4);
  for (int k = 0; k < 4; ++k) basis.col(k) = phi[static_cast<std::size_t>(k)].amplitudes();
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(4, 4);
  const double c = std::cos(2 * kPi / 3), s = std::sin(2 * kPi / 3);
  r(0, 0) = c;
  r(0, 2) = -s;
  r(2, 0) = s;
  r(2, 2) = c;
  return {Basis::path_polarization(), basis * r * basis.adjoint()};
}

SymmetricPovm SymmetricPovm::from_ratio(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("ratio must be finite; use from_angle");
  return from_angle(std::atan(r));
}

SymmetricPovm SymmetricPovm::from_angle(double t) {
  const double n = std::sqrt(2.0 / 3.0);
  return {n * std::cos(t), n * std::sin(t)};
}

double SymmetricPovm::ratio() const {
  return l10_ == 0.0 ? std::numeric_limits<double>::infinity() : l12_ / l10_;
}

std::array<std::array<double, 2>, 3> SymmetricPovm::coefficients() const {
  const std::array<double, 2> v1 = {l10_, l12_};
  return {v1, rotate(v1, 2 * kPi / 3), rotate(v1, -2 * kPi / 3)};
}

std::array<StateVector, 3> SymmetricPovm::effects() const {
  const auto phi = phi_basis();
  const auto c = coefficients();
  return {c[0][0] * phi[0] + c[0][1] * phi[2], c[1][0] * phi[0] + c[1][1] * phi[2],
          c[2][0] * phi[0] + c[2][1] * phi[2]};
}

std::array<StateVector, 4> SymmetricPovm::naimark_basis() const {
  const auto phi = phi_basis();
  const auto e = effects();
  const cplx w = 1.0 / kS3;
  std::array<StateVector, 3> alpha = {e[0] + w * phi[3], e[1] + w * phi[3], e[2] + w * phi[3]};
  std::optional<StateVector> best;
  double best_norm = -1.0;
  for (const StateVector& candidate : phi) {
    StateVector residual = candidate;
    for (const StateVector& a : alpha) residual = residual - inner(a, residual) * a;
    const double n = residual.amplitudes().norm();
    if (n > best_norm) {
      best_norm = n;
      best = residual;
    }
  }
  return {alpha[0], alpha[1], alpha[2], best->normalized()};
}

Eigen::MatrixXd detection_matrix(const SymmetricPovm& povm) { return detection_matrix(povm, channel_states()); }

Eigen::MatrixXd detection_matrix(const SymmetricPovm& povm, const std::array<StateVector, 3>& states) {
  const auto alpha = povm.naimark_basis();
  Eigen::MatrixXd p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      p(i, j) = born_probability(states[static_cast<std::size_t>(i)], alpha[static_cast<std::size_t>(j)]);
  return p;
}

double single_photon_map_success(const Eigen::MatrixXd& p) {
  double s = 0.0;
  for (int i = 0; i < p.rows(); ++i) s += p.row(i).maxCoeff();
  return s / static_cast<double>(p.rows());
}

ClassFractions pattern_fractions_closed(double r) {
  const double r2 = r * r;
  const double qt = 52.0 + 144.0 * r2 + 108.0 * r2 * r2;
  ClassFractions f;
  f.q1 = 3.0 * (1.0 - 3.0 * r2) * (1.0 - 3.0 * r2) / qt;
  f.q3 = (19.0 - 18.0 * r2 + 27.0 * r2 * r2) / qt;
  f.q2 = 1.0 - f.q1 - f.q3;
  return f;
}

ExactClassFractions pattern_fractions_exact(const Eigen::MatrixXd& p) {
  require_rows(p);
  ExactClassFractions f;
  for_each_triple(p, {0, 1, 2}, [&](const std::array<int, 3>& o, double w) {
    const int zero = o[0], plus = o[1], minus = o[2];
    if (zero == plus && plus == minus) f.q1 += w;
    else if (zero != plus && plus != minus && zero != minus) f.q3 += w;
    else if (plus == minus) f.q21 += w;
    else if (zero == plus) f.q22 += w;
    else f.q23 += w;
  });
  return f;
}

double conditional_success_closed(PatternClass cls, double r) {
  const double up = 1.0 + kS3 * r, um = 1.0 - kS3 * r;
  const double up2 = up * up, um2 = um * um;
  switch (cls) {
    case PatternClass::Q1: return 1.0 / 6.0;
    case PatternClass::Q2: return 0.5 * (up2 + um2) / (up2 + um2 + 0.25 * up2 * up2 + 0.25 * um2 * um2);
    case PatternClass::Q3: return 1.0 / (1.0 + 3.0 / 16.0 * up2 * um2 + (up2 * up2 * up2 + um2 * um2 * um2) / 64.0);
  }
  return 0.0;
}

ClassFractions conditional_success_exact(const Eigen::MatrixXd& p) {
  require_rows(p);
  const int k = static_cast<int>(p.cols());
  const auto& perms = ternary::Permutation::all();
  std::array<double, 3> hit{}, mass{};
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const std::array<int, 3> o = {a, b, c};
        double best = 0.0, total = 0.0;
        for (const auto& sigma : perms) {
          double w = 1.0;
          for (int s = 0; s < 3; ++s) w *= p(ternary::index(sigma.at(s)), o[static_cast<std::size_t>(s)]);
          best = std::max(best, w);
          total += w;
        }
        const auto cls = static_cast<std::size_t>(class_of(o));
        hit[cls] += best;
        mass[cls] += total;
      }
  auto ratio = [](double h, double m) { return m > 0.0 ? h / m : 0.0; };
  return {ratio(hit[0], mass[0]), ratio(hit[1], mass[1]), ratio(hit[2], mass[2])};
}

double total_success_closed(double r) {
  const ClassFractions f = pattern_fractions_closed(r);
  return f.q1 * conditional_success_closed(PatternClass::Q1, r) + f.q2 * conditional_success_closed(PatternClass::Q2, r) +
         f.q3 * conditional_success_closed(PatternClass::Q3, r);
}

Maximum optimize_total_success() { return golden_section_max(total_success_closed, -1.5, 1.5, 1e-6); }

double ordering_map_success(const Eigen::MatrixXd& p) {
  require_rows(p);
  const int k = static_cast<int>(p.cols());
  const auto& perms = ternary::Permutation::all();
  double success = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const std::array<int, 3> o = {a, b, c};
        double best = 0.0;
        for (const auto& sigma : perms) {
          double w = 1.0;
          for (int s = 0; s < 3; ++s) w *= p(ternary::index(sigma.at(s)), o[static_cast<std::size_t>(s)]);
          best = std::max(best, w);
        }
        success += best;
      }
  return success / 6.0;
}

double oracle_map_success() { return ordering_map_success(detection_matrix(SymmetricPovm::from_ratio(0.0))); }

namespace {

Eigen::MatrixXd two_outcome_matrix(double angle) {
  const Basis pol = Basis::polarization();
  const Label H{std::nullopt, Pol::H}, V{std::nullopt, Pol::V};
  const double c = std::cos(angle), s = std::sin(angle);
  const StateVector m1 = StateVector::from_terms(pol, {{H, c}, {V, s}});
  const StateVector m2 = StateVector::from_terms(pol, {{H, -s}, {V, c}});
  Eigen::MatrixXd p(3, 2);
  for (ternary::Trine t : ternary::kTrines) {
    const StateVector a = ternary::trine_state(t);
    p(ternary::index(t), 0) = born_probability(a, m1);
    p(ternary::index(t), 1) = born_probability(a, m2);
  }
  return p;
}

}  // namespace

Eigen::MatrixXd strategy_a_matrix() { return two_outcome_matrix(0.0); }

double strategy_a_success() { return ordering_map_success(strategy_a_matrix()); }

StrategyB strategy_b_success() {
  Eigen::MatrixXd ideal(3, 2);
  ideal << 1.0, 0.0, 0.0, 1.0, 0.5, 0.5;
  const double q = std::cos(deg(15.0));
  return {ordering_map_success(ideal), q * q, ordering_map_success(two_outcome_matrix(deg(15.0)))};
}

NaiveBound naive_composite_bound() {
  NaiveBound b;
  b.single_photon = single_photon_map_success(detection_matrix(SymmetricPovm::from_ratio(0.0)));
  b.assignment = 1.0 / 3.0;
  b.product = b.single_photon * b.assignment;
  return b;
}

FourthDetector fourth_detector_check(const SymmetricPovm& povm) {
  const auto alpha = povm.naimark_basis();
  const auto psi = channel_states();
  const auto phi = phi_basis();
  FourthDetector out;
  for (std::size_t i = 0; i < 3; ++i) out.overlaps[i] = std::abs(inner(alpha[3], psi[i]));
  out.lambda40 = std::abs(inner(phi[0], alpha[3]));
  out.lambda42 = std::abs(inner(phi[2], alpha[3]));
  return out;
}

}  // namespace qeraser::ternary_attack

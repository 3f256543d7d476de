#include "qeraser/imperfections.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser::imperfect {

namespace {

constexpr int kModes = 8;

int mode(Path p) { return static_cast<int>(p); }

Basis path_modes() {
  std::vector<Label> labels;
  for (Path p : {Path::U, Path::L, Path::Du, Path::Dl, Path::du1, Path::du2, Path::dl1, Path::dl2})
    labels.push_back({p, std::nullopt});
  return Basis(std::move(labels));
}

LinearMap on_paths(const Eigen::MatrixXcd& m) {
  return tensor(LinearMap(path_modes(), m), LinearMap::identity(Basis::polarization()));
}

LinearMap first_splitter(double theta) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(kModes, kModes);
  const double c = std::cos(theta), s = std::sin(theta);
  m(mode(Path::U), mode(Path::U)) = c;
  m(mode(Path::L), mode(Path::U)) = s;
  m(mode(Path::U), mode(Path::L)) = s;
  m(mode(Path::L), mode(Path::L)) = -c;
  return on_paths(m);
}

LinearMap decoherence(double sigma_u, double sigma_l) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(kModes, kModes);
  auto mix = [&](Path a, Path d, double sigma) {
    const double c = std::cos(sigma), s = std::sin(sigma);
    m(mode(a), mode(a)) = c;
    m(mode(d), mode(a)) = s;
    m(mode(a), mode(d)) = -s;
    m(mode(d), mode(d)) = c;
  };
  mix(Path::U, Path::Du, sigma_u);
  mix(Path::L, Path::Dl, sigma_l);
  return on_paths(m);
}

// Unitary completion of the BS2 routing; only the images of U, L, D_u, D_l
// are reached by the propagated state.
LinearMap second_splitter(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kModes, kModes);
  auto set = [&](Path to, Path from, double v) { m(mode(to), mode(from)) = v; };
  set(Path::U, Path::U, c);
  set(Path::L, Path::U, s);
  set(Path::U, Path::L, s);
  set(Path::L, Path::L, -c);
  set(Path::du1, Path::Du, c);
  set(Path::du2, Path::Du, s);
  set(Path::du1, Path::du1, s);
  set(Path::du2, Path::du1, -c);
  set(Path::Du, Path::du2, 1.0);
  set(Path::dl1, Path::Dl, s);
  set(Path::dl2, Path::Dl, -c);
  set(Path::dl1, Path::dl1, c);
  set(Path::dl2, Path::dl1, s);
  set(Path::Dl, Path::dl2, 1.0);
  return on_paths(m);
}

// Per-arm polarization rotators; output modes d_* are untouched.
LinearMap arm_rotators(const LinearMap& upper, const LinearMap& lower) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * kModes, 2 * kModes);
  for (Path p : {Path::U, Path::Du}) m.block(2 * mode(p), 2 * mode(p), 2, 2) = upper.matrix();
  for (Path p : {Path::L, Path::Dl}) m.block(2 * mode(p), 2 * mode(p), 2, 2) = lower.matrix();
  return {Basis::extended(), m};
}

}  // namespace

Case parse_case(const std::string& name) {
  if (name == "neither") return Case::Neither;
  if (name == "both") return Case::Both;
  if (name == "alice_only" || name == "alice-only") return Case::AliceOnly;
  if (name == "bob_only" || name == "bob-only") return Case::BobOnly;
  throw std::invalid_argument("unknown encoding case: " + name);
}

std::string to_string(Case c) {
  switch (c) {
    case Case::Neither: return "neither";
    case Case::Both: return "both";
    case Case::AliceOnly: return "alice_only";
    case Case::BobOnly: return "bob_only";
  }
  return "?";
}

DetectorProbabilities detection_probs(Case c, const Params& p) {
  if (p.sigma_u != p.sigma_l) throw std::invalid_argument("closed forms require sigma_u == sigma_l");
  const double sigma = p.sigma_u;
  const double dt = p.delta_theta();
  const double ss = std::sin(sigma) * std::sin(sigma);
  const double cs = std::cos(sigma) * std::cos(sigma);
  const double base = std::cos(dt) * std::cos(dt);
  double d1 = 0.0;
  if (c == Case::Neither) {
    const double t = p.theta1();
    d1 = base - 0.5 * ss * std::sin(2 * t) * std::sin(2 * (t + dt));
  } else {
    const double x = c == Case::Both ? p.gamma_mismatch() : (c == Case::AliceOnly ? p.mu_A : p.mu_B);
    const double sx = std::sin(x);
    d1 = base - (sx * sx * cs + 0.5 * ss) * std::cos(2 * dt);
  }
  return {d1, 1.0 - d1};
}

StateVector propagate(Case c, const Params& p) {
  const Basis ext = Basis::extended();
  const double r = 1.0 / std::sqrt(2.0);
  StateVector psi = StateVector::from_terms(ext, {{{Path::U, Pol::H}, r}, {{Path::U, Pol::V}, r}});
  psi = first_splitter(p.theta1()).apply(psi);
  psi = decoherence(p.sigma_u, p.sigma_l).apply(psi);
  if (c == Case::Both || c == Case::AliceOnly)
    psi = arm_rotators(rotator(Rotation::Left, p.beta_A), rotator(Rotation::Right, p.mu_A)).apply(psi);
  if (c == Case::Both || c == Case::BobOnly)
    psi = arm_rotators(rotator(Rotation::Right, p.mu_B), rotator(Rotation::Left, p.beta_B)).apply(psi);
  return second_splitter(p.theta2()).apply(psi);
}

DetectorProbabilities simulate_imperfect(Case c, const Params& p) { return detect(propagate(c, p)); }

Visibility visibility(double delta_A, double delta_B) {
  const double d = delta_A + delta_B;
  Visibility v;
  v.v = std::abs(std::cos(d));
  v.p_d2_exact = 0.5 * (1.0 - v.v);
  v.p_d2_small_angle = 0.25 * d * d;
  return v;
}

Params visibility_params(double delta_A, double delta_B) {
  Params p;
  p.beta_A = p.mu_A = kPi / 4 + 0.5 * delta_A;
  p.beta_B = p.mu_B = kPi / 4 - 0.5 * delta_B;
  return p;
}

}  // namespace qeraser::imperfect

#include "qeraser/binary_protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser::binary {

namespace {

void require_bit(int b, const char* who) {
  if (b != 0 && b != 1) throw std::invalid_argument(std::string(who) + " bit must be 0 or 1");
}

Label ph(Path p, Pol q) { return {p, q}; }

}  // namespace

StateVector source_polarization(PolSign sign) {
  const double r = 1.0 / std::sqrt(2.0);
  const double v = sign == PolSign::Plus ? r : -r;
  return StateVector::from_terms(Basis::polarization(), {{{std::nullopt, Pol::H}, r}, {{std::nullopt, Pol::V}, v}});
}

ChannelState channel_state(int alice_bit, PolSign sign, double theta) {
  require_bit(alice_bit, "alice");
  if (!(theta > 0.0 && theta < kPi / 2)) throw std::invalid_argument("theta must lie in (0, pi/2)");
  const double c = std::cos(theta), s = std::sin(theta);
  const Basis b = Basis::path_polarization();
  if (alice_bit == 0) {
    StateVector path = StateVector::from_terms(Basis::path(), {{{Path::U, std::nullopt}, c}, {{Path::L, std::nullopt}, s}});
    return {sign == PolSign::Plus ? ChannelLabel::Phi0Plus : ChannelLabel::Phi0Minus,
            tensor(path, source_polarization(sign))};
  }
  if (sign == PolSign::Plus)
    return {ChannelLabel::Phi1Plus, StateVector::from_terms(b, {{ph(Path::U, Pol::V), c}, {ph(Path::L, Pol::H), s}})};
  return {ChannelLabel::Phi1Minus, StateVector::from_terms(b, {{ph(Path::U, Pol::H), c}, {ph(Path::L, Pol::V), -s}})};
}

StateVector state_before_second_splitter(const RoundConfig& config) {
  require_bit(config.alice_bit, "alice");
  require_bit(config.bob_bit, "bob");
  StateVector input = tensor(StateVector::basis_state(Basis::path(), {Path::U, std::nullopt}),
                             source_polarization(config.initial_pol));
  StateVector psi = beam_splitter(config.theta).apply(input);
  if (config.alice_bit == 1) psi = encoder(Party::Alice, {config.gamma_A, config.gamma_A}).apply(psi);
  if (config.bob_bit == 1) psi = encoder(Party::Bob, {config.gamma_B, config.gamma_B}).apply(psi);
  return psi;
}

DetectorProbabilities detection_probabilities(const RoundConfig& config) {
  return detect(beam_splitter(config.theta).apply(state_before_second_splitter(config)));
}

std::vector<SiftedBit> sift(const std::vector<Round>& rounds) {
  std::vector<SiftedBit> key;
  for (const Round& r : rounds) {
    require_bit(r.alice_bit, "alice");
    require_bit(r.bob_bit, "bob");
    if (r.detector == Detector::D2) key.push_back({r.alice_bit, 1 - r.bob_bit});
  }
  return key;
}

double efficiency(double gamma_A, double gamma_B, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double o = std::cos(gamma_A) * c2 + std::cos(gamma_B) * s2;
  return 0.5 * (1.0 - o * o);
}

double efficiency_from_mismatch(double gamma_A, double theta) {
  const double c = std::cos(gamma_A), s = std::sin(gamma_A), c2t = std::cos(2.0 * theta);
  return 0.5 * (1.0 - c * c - s * s * c2t * c2t);
}

double efficiency_from_pipeline(double gamma_A, double gamma_B, double theta) {
  RoundConfig cfg;
  cfg.theta = theta;
  cfg.gamma_A = gamma_A;
  cfg.gamma_B = gamma_B;
  cfg.alice_bit = 1;
  cfg.bob_bit = 0;
  const double p10 = detection_probabilities(cfg).d2;
  cfg.alice_bit = 0;
  cfg.bob_bit = 1;
  const double p01 = detection_probabilities(cfg).d2;
  return 0.25 * (p10 + p01);
}

}  // namespace qeraser::binary

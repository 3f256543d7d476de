// Binary quantum eraser: channel states, detector statistics, sifting and
// the efficiency side of the security/efficiency trade-off.
#pragma once

#include <cstdint>
#include <vector>

#include "qeraser/hilbert.hpp"

namespace qeraser::binary {

enum class PolSign : std::uint8_t { Plus, Minus };  // |D⟩ or |A⟩ at the source
enum class Detector : std::uint8_t { D1, D2 };

struct RoundConfig {
  int alice_bit = 0;
  int bob_bit = 0;
  double theta = kPi / 4;
  PolSign initial_pol = PolSign::Plus;
  double gamma_A = kPi / 4;
  double gamma_B = kPi / 4;
};

enum class ChannelLabel : std::uint8_t { Phi0Plus, Phi0Minus, Phi1Plus, Phi1Minus };

struct ChannelState {
  ChannelLabel label;
  StateVector vector;
};

/// |D⟩ for Plus, |A⟩ for Minus, on the polarization basis.
StateVector source_polarization(PolSign sign);

/// Closed-form channel state after Alice's station:
///   φ0± = (cosθ|U⟩ + sinθ|L⟩)|D or A⟩,  φ1+ = cosθ|UV⟩ + sinθ|LH⟩,  φ1− = cosθ|UH⟩ − sinθ|LV⟩.
ChannelState channel_state(int alice_bit, PolSign sign, double theta);

/// State just before BS2 (BS1, then the active encoders).
StateVector state_before_second_splitter(const RoundConfig& config);

/// Full pipeline BS1 → T_A → T_B → BS2 → detectors.
DetectorProbabilities detection_probabilities(const RoundConfig& config);

struct Round {
  int alice_bit = 0;
  int bob_bit = 0;
  Detector detector = Detector::D1;
};

/// Each party's view of one sifted bit. Alice records her own bit, Bob the
/// complement of his, so (A=1,B=0) → 1 and (A=0,B=1) → 0.
struct SiftedBit {
  int alice = 0;
  int bob = 0;
};

std::vector<SiftedBit> sift(const std::vector<Round>& rounds);

/// ½[1 − (cosγ_A cos²θ + cosγ_B sin²θ)²].
double efficiency(double gamma_A, double gamma_B, double theta);

/// ½[1 − cos²γ_A − sin²γ_A cos²2θ], from the mismatch detection probability.
double efficiency_from_mismatch(double gamma_A, double theta);

/// ¼[P(D2 | 1,0) + P(D2 | 0,1)] from the simulated pipeline.
double efficiency_from_pipeline(double gamma_A, double gamma_B, double theta);

}  // namespace qeraser::binary

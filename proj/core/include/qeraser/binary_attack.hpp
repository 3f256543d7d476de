// Eve's single-photon measurements against the binary eraser and BB84.
#pragma once

#include <array>

#include "qeraser/hilbert.hpp"
#include "qeraser/optimize.hpp"

namespace qeraser::binary_attack {

/// Orthonormal basis {φ1+, φ1−, φ2+, φ2−} of path ⊗ polarization:
///   φ2+ = sinθ|UH⟩ + cosθ|LV⟩,  φ2− = sinθ|UV⟩ − cosθ|LH⟩.
struct EraserBasis {
  StateVector phi1_plus;
  StateVector phi1_minus;
  StateVector phi2_plus;
  StateVector phi2_minus;
};

EraserBasis eraser_basis(double theta = kPi / 4);

/// α1 = cosκ φ1+ + sinκ φ2+,  α2 = sinκ φ1+ − cosκ φ2+.
std::array<StateVector, 2> two_state_measurement(double kappa);
/// α1, α2 as above for κ1, then α3 = cosκ2 φ1− + sinκ2 φ2−, α4 = sinκ2 φ1− − cosκ2 φ2−.
std::array<StateVector, 4> four_state_measurement(double kappa1, double kappa2);

/// ¼(cosκ + sinκ)² + ½sin²κ.
double p_correct_two_state(double kappa);
/// ½ + ¼sin2κ − ¼cos2κ.
double p_correct_two_state_closed(double kappa);
/// Same quantity from Born probabilities of the α-measurement on φ0+, φ1+.
double p_correct_two_state_born(double kappa);
/// Exact optimum κ = 3π/8.
Maximum two_state_optimum();

double p_correct_four_state(double kappa1, double kappa2);
double p_correct_four_state_born(double kappa1, double kappa2);
/// P(α1..α4) with uniform priors over the four channel states.
std::array<double, 4> four_state_marginals(double kappa1, double kappa2);

/// ½[cos²ω + ½(cosω + sinω)²].
double p_correct_random_pol(double omega);
/// cos²ω − ½(cosω + sinω)²; zero when both detectors click equally often.
double random_pol_balance(double omega);
/// Stationary point from tan2ω = 1.
double random_pol_optimum_omega();

struct Bb84Analysis {
  double bit_success = 0.0;
  double state_reproduction = 0.0;   // bit_success / 2
  double map_state_reproduction = 0.0;  // four-state MAP after the same measurement
  double marginal_alpha1 = 0.0;
  double marginal_alpha2 = 0.0;
};

/// BB84 states H, V, D, A; Eve measures α1′ = cosκ′H + sinκ′V, α2′ = −sinκ′H + cosκ′V.
Bb84Analysis bb84_analysis(double kappa_prime);
/// Best four-state MAP reproduction over all κ′ (found numerically).
Maximum bb84_best_map_state_reproduction();

/// B(α, γ) = ½[sin²(α + γ) + cos²α].
double b_value(double alpha, double gamma_A);

struct BPole {
  double alpha_star = 0.0;
  double probability = 0.0;
  bool degenerate = false;  // γ_A ≡ 0 (mod π): B is flat in α
};

/// Stationary point α = kπ/2 + π/4 − γ_A/2 and B there.
BPole b_pole(double gamma_A, int k);
/// Upper envelope over k ∈ {0, 1}; k and −k give the same B.
double b_pole_envelope(double gamma_A);
/// Numeric argmax of B over α ∈ [0, π).
Maximum b_numeric_max(double gamma_A);

/// ½(1 + √(1 − |⟨φi|φj⟩|²)).
double helstrom(double overlap);

}  // namespace qeraser::binary_attack

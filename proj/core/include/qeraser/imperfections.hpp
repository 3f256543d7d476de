/*
 * Imperfect binary interferometer: beam-splitter deviations, path
 * decoherence and rotator miscalibration.
 *
 *   θ1 = π/4 + δ1,  θ2 = π/4 + δ2,  Δθ = δ2 − δ1,  Γ = μ_B − β_A
 *   decoherence:  |U⟩ → cosσ_u|U⟩ + sinσ_u|D_u⟩,  |L⟩ → cosσ_l|L⟩ + sinσ_l|D_l⟩
 *   BS2 on decohered modes:  D_u → cosθ2 d_u1 + sinθ2 d_u2,  D_l → sinθ2 d_l1 − cosθ2 d_l2
 *
 * Alice applies S_L(β_A) on the upper arm and S_R(μ_A) on the lower arm; Bob
 * applies S_R(μ_B) upper and S_L(β_B) lower. Detector D1 collects U, d_u1,
 * d_l1 and D2 collects L, d_u2, d_l2.
 */
#pragma once

#include <cstdint>
#include <string>

#include "qeraser/hilbert.hpp"

namespace qeraser::imperfect {

struct Params {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double sigma_u = 0.0;
  double sigma_l = 0.0;
  double beta_A = kPi / 4;
  double mu_A = kPi / 4;
  double beta_B = kPi / 4;
  double mu_B = kPi / 4;

  double theta1() const { return kPi / 4 + delta1; }
  double theta2() const { return kPi / 4 + delta2; }
  double delta_theta() const { return delta2 - delta1; }
  double gamma_mismatch() const { return mu_B - beta_A; }
};

enum class Case : std::uint8_t { Neither, Both, AliceOnly, BobOnly };

Case parse_case(const std::string& name);
std::string to_string(Case c);

/// Closed forms with σ = σ_u = σ_l:
///   neither:  P(D1) = cos²Δθ − ½sin²σ sin2θ1 sin2(θ1 + Δθ)
///   others:   P(D1) = cos²Δθ − (sin²X cos²σ + ½sin²σ) cos2Δθ,  X = Γ, μ_A or μ_B
/// Throws std::invalid_argument when σ_u ≠ σ_l.
DetectorProbabilities detection_probs(Case c, const Params& p);

/// Full state propagation on the 16-dimensional extended basis.
DetectorProbabilities simulate_imperfect(Case c, const Params& p);

/// State after BS2 on the extended basis, before detection.
StateVector propagate(Case c, const Params& p);

struct Visibility {
  double v = 1.0;
  double p_d2_exact = 0.0;
  double p_d2_small_angle = 0.0;
};

/// V = |cos(δ_A + δ_B)|,  P(D2) = (1 − V)/2 ≈ (δ_A + δ_B)²/4.
Visibility visibility(double delta_A, double delta_B);

/// Rotator settings under which the simulated both-active interferometer has
/// net arm rotation δ_A + δ_B: β_A = μ_A = π/4 + δ_A/2, β_B = μ_B = π/4 − δ_B/2.
Params visibility_params(double delta_A, double delta_B);

}  // namespace qeraser::imperfect

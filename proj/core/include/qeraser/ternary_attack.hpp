/*
 * Eve's attack on the Method II trine groups.
 *
 * On path ⊗ polarization the three channel states span {φ0, φ2}:
 *   φ0 = (|UH⟩+|LH⟩)/√2, φ1 = (|UV⟩+|LV⟩)/√2, φ2 = (|UV⟩−|LV⟩)/√2, φ3 = (|UH⟩−|LH⟩)/√2
 *   ψ0 = φ0,  ψ± = −½φ0 ± (√3/2)φ2.
 *
 * Eve measures each photon with a three-outcome POVM whose effect vectors in
 * the (φ0, φ2) plane are v1 = (λ10, λ12), v2 = R(120°)v1, v3 = R(−120°)v1,
 * with λ10² + λ12² = 2/3 and r = λ12/λ10. She then guesses the ordering σ.
 */
#pragma once

#include <array>

#include <Eigen/Dense>

#include "qeraser/hilbert.hpp"
#include "qeraser/optimize.hpp"

namespace qeraser::ternary_attack {

/// φ0..φ3 on Basis::path_polarization().
std::array<StateVector, 4> phi_basis();

/// ψ0, ψ+, ψ− built from their path/polarization expansion.
std::array<StateVector, 3> channel_states();

/// R(120°) in the (φ0, φ2) plane, identity on φ1 and φ3, as a map on path ⊗ polarization.
LinearMap rotation_120();

class SymmetricPovm {
 public:
  static SymmetricPovm from_ratio(double r);
  /// t = atan(r); t = ±π/2 is the λ10 → 0 limit.
  static SymmetricPovm from_angle(double t);

  double lambda10() const { return l10_; }
  double lambda12() const { return l12_; }
  /// λ12/λ10; infinite when λ10 = 0.
  double ratio() const;

  /// (λ_j0, λ_j2) for detectors j = 1..3.
  std::array<std::array<double, 2>, 3> coefficients() const;
  /// Subnormalized effect vectors λ_j0 φ0 + λ_j2 φ2.
  std::array<StateVector, 3> effects() const;
  /// Orthonormal α1..α4: α_j = effect_j + φ3/√3, α4 from the orthogonal complement.
  std::array<StateVector, 4> naimark_basis() const;

 private:
  SymmetricPovm(double l10, double l12) : l10_(l10), l12_(l12) {}
  double l10_;
  double l12_;
};

/// P(α_j | ψ_i); rows are states, columns detectors.
Eigen::MatrixXd detection_matrix(const SymmetricPovm& povm);
Eigen::MatrixXd detection_matrix(const SymmetricPovm& povm, const std::array<StateVector, 3>& states);

/// (1/3) Σ_i max_j P(j | i).
double single_photon_map_success(const Eigen::MatrixXd& p);

struct ClassFractions {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

struct ExactClassFractions {
  double q1 = 0.0;
  double q21 = 0.0;  // ψ+ and ψ− share a detector
  double q22 = 0.0;  // ψ0 and ψ+ share a detector
  double q23 = 0.0;  // ψ0 and ψ− share a detector
  double q3 = 0.0;
  double q2() const { return q21 + q22 + q23; }
};

enum class PatternClass { Q1, Q2, Q3 };

/// Closed forms in u± = 1 ± √3 r (Q2 truncated):
///   Q1/QT = 3(1−3r²)²/(52+144r²+108r⁴),  Q3/QT = (19−18r²+27r⁴)/(52+144r²+108r⁴).
ClassFractions pattern_fractions_closed(double r);
/// Enumeration over the 27 detector triples for the state triple (ψ0, ψ+, ψ−).
ExactClassFractions pattern_fractions_exact(const Eigen::MatrixXd& p);

/// Q1 → 1/6;  Q2 → ½(u+²+u−²)/(u+²+u−²+¼u+⁴+¼u−⁴);  Q3 → 1/(1 + 3/16 u+²u−² + (u+⁶+u−⁶)/64).
double conditional_success_closed(PatternClass cls, double r);
/// MAP ordering success conditioned on the observed class.
ClassFractions conditional_success_exact(const Eigen::MatrixXd& p);

/// Σ_class (Q/QT) · P(success | class) from the closed forms.
double total_success_closed(double r);
/// Golden-section maximum of total_success_closed over r ∈ [−1.5, 1.5].
Maximum optimize_total_success();

/// MAP guess of σ from the ordered outcomes of the three photons, averaged
/// over uniform σ. `p` has one row per state and one column per outcome.
double ordering_map_success(const Eigen::MatrixXd& p);
/// ordering_map_success at the r = 0 POVM.
double oracle_map_success();

/// H/V measurement statistics for A1, A2, A3 (columns: H, V).
Eigen::MatrixXd strategy_a_matrix();
double strategy_a_success();

struct StrategyB {
  double idealized = 0.0;          // two states perfectly separated, third random
  double discriminator_quality = 0.0;  // cos²15°
  double realistic = 0.0;          // MAP with M1 = cos15°H + sin15°V
};
StrategyB strategy_b_success();

struct NaiveBound {
  double single_photon = 0.0;
  double assignment = 0.0;
  double product = 0.0;
};
/// Single-photon trine bound times the 1/3 ordering-assignment factor.
NaiveBound naive_composite_bound();

struct FourthDetector {
  std::array<double, 3> overlaps{};  // |⟨α4|ψ_i⟩|
  double lambda40 = 0.0;
  double lambda42 = 0.0;
};
FourthDetector fourth_detector_check(const SymmetricPovm& povm);

}  // namespace qeraser::ternary_attack

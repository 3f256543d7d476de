/*
 * Ternary protocol on trine polarization states.
 *
 *   A1 = |H⟩ (0°),  A2 at +120°,  A3 at −120°;  ⟨Ai|Aj⟩ = −½ for i ≠ j.
 *
 * Bob's operation B_j rotates by −angle(A_j), so the matched photon always
 * leaves as |H⟩ and a mismatched one gives V with probability ¾.
 *
 * Method I sends photon pairs (six signals, key symbol = signal index / 2)
 * and keeps double-V events. Method II sends all three trine states in an
 * order σ ∈ S3 and keeps patterns with exactly one H; the H slot and σ
 * reveal Bob's operation to Alice.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qeraser/hilbert.hpp"
#include "qeraser/rng.hpp"

namespace qeraser::ternary {

enum class Trine : std::uint8_t { A1, A2, A3 };
enum class BobOp : std::uint8_t { B1, B2, B3 };
enum class Outcome : std::uint8_t { H, V };
enum class Method : std::uint8_t { M1, M2 };

inline constexpr std::array<Trine, 3> kTrines = {Trine::A1, Trine::A2, Trine::A3};
inline constexpr std::array<BobOp, 3> kBobOps = {BobOp::B1, BobOp::B2, BobOp::B3};

inline int index(Trine t) { return static_cast<int>(t); }
inline int index(BobOp b) { return static_cast<int>(b); }

double trine_angle(Trine t);
StateVector trine_state(Trine t);

double bob_rotation(BobOp op);
LinearMap bob_operator(BobOp op);

struct HvProbabilities {
  double p_H = 0.0;
  double p_V = 0.0;
};

HvProbabilities measure_after_bob(Trine state, BobOp op);

/// Non-negative fraction in lowest terms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Exact p_H, p_V from cos(Δ) ∈ {1, −½} for the angle Δ between A_i and B_j's target.
std::array<Fraction, 2> exact_after_bob(Trine state, BobOp op);

/// Ordering of the three trine states over three time slots.
class Permutation {
 public:
  constexpr Permutation() = default;
  constexpr explicit Permutation(std::array<Trine, 3> slots) : slots_(slots) {}

  /// σ1..σ6 = (A1A2A3), (A1A3A2), (A2A1A3), (A2A3A1), (A3A1A2), (A3A2A1).
  static const std::array<Permutation, 6>& all();
  static Permutation from_index(int i) { return all().at(static_cast<std::size_t>(i)); }

  Trine at(int slot) const { return slots_.at(static_cast<std::size_t>(slot)); }
  int slot_of(Trine t) const;
  int index() const;
  const std::array<Trine, 3>& slots() const { return slots_; }

  /// (a ∘ b)(k) = a(b(k)) as bijections on {0,1,2}.
  Permutation compose(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_valid() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::array<Trine, 3> slots_ = {Trine::A1, Trine::A2, Trine::A3};
};

using Pattern = std::array<Outcome, 3>;
using PairPattern = std::array<Outcome, 2>;

std::string to_string(const Pattern& p);

/// All eight three-slot patterns, slot 0 most significant, H before V.
const std::array<Pattern, 8>& all_patterns();

// Method I ------------------------------------------------------------------

enum class M1Signal : std::uint8_t { S0, S0p, S1, S1p, S2, S2p };

inline constexpr std::array<M1Signal, 6> kM1Signals = {M1Signal::S0, M1Signal::S0p, M1Signal::S1,
                                                      M1Signal::S1p, M1Signal::S2, M1Signal::S2p};

/// Polarization angles (radians) of the two photons.
std::array<double, 2> m1_signal_angles(M1Signal s);
/// Shared key symbol of a signal: 0, 0′ → 0; 1, 1′ → 1; 2, 2′ → 2.
int m1_symbol(M1Signal s);
/// Bob's Method I rotation for op 0, 1, 2: +120°, −120°, 0°.
double m1_bob_rotation(int op);

/// P(HH), P(HV), P(VH), P(VV).
std::array<double, 4> method1_pattern_probabilities(M1Signal s, int op);
PairPattern method1_round(M1Signal s, int op, Rng& rng);

// Method II -----------------------------------------------------------------

double method2_pattern_probability(const Permutation& sigma, BobOp op, const Pattern& pattern);
Pattern method2_round(const Permutation& sigma, BobOp op, Rng& rng);

/// Bob's operation index (0 for B1, 1 for B2, 2 for B3), or nullopt unless the
/// pattern has exactly one H.
std::optional<int> extract_key(const Permutation& sigma, const Pattern& pattern);

/// Exact posterior over B1..B3 given a one-H pattern, uniform σ and op.
std::array<Fraction, 3> announcement_posterior(const Pattern& pattern);

struct EfficiencyMetrics {
  Fraction p_sift;
  double eta_raw = 0.0;  // P_sift / m
  double eta_bin = 0.0;  // log2(3) / m · P_sift
};

EfficiencyMetrics efficiency_metrics(Method method);

}  // namespace qeraser::ternary

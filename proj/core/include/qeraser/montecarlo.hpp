/*
 * Trial-based simulation of full protocol runs with an optional
 * intercept-resend adversary.
 *
 * Trial i draws all of its randomness from Rng(seed, i), and threads tally
 * disjoint trial ranges into integer counters that are summed afterwards, so
 * results do not depend on the thread count.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qeraser/imperfections.hpp"
#include "qeraser/rng.hpp"
#include "qeraser/ternary_protocol.hpp"

namespace qeraser::mc {

enum class Protocol : std::uint8_t { Binary, TernaryM1, TernaryM2, Bb84 };
enum class Eve : std::uint8_t { None, OptimalBinary, TrineMap, HvStrategyA };

Protocol parse_protocol(const std::string& name);
Eve parse_eve(const std::string& name);
std::string to_string(Protocol p);
std::string to_string(Eve e);

struct RunConfig {
  Protocol protocol = Protocol::Binary;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  Eve eve = Eve::None;
  std::optional<imperfect::Params> imperfections;
  /// 0 picks the hardware concurrency capped by QERASER_THREADS.
  unsigned threads = 0;
};

/// Throws std::invalid_argument for zero trials or unsupported combinations.
void validate(const RunConfig& config);

struct Rate {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;

  double value() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
  /// √(p(1−p)/N).
  double standard_error() const;
};

struct RunStats {
  std::uint64_t trials = 0;
  std::map<std::string, std::uint64_t> detector_counts;
  std::uint64_t sift_count = 0;
  std::uint64_t key_agree = 0;
  std::array<std::uint64_t, 3> key_symbols{};  // Alice's sifted symbols
  std::uint64_t eve_attempts = 0;
  std::uint64_t eve_success = 0;
  std::map<std::string, std::uint64_t> eve_outcomes;
  std::uint64_t matched_rounds = 0;  // binary: a == b
  std::uint64_t matched_d2 = 0;
  /// Method II: sifted pattern → count of Bob's operation B1..B3.
  std::map<std::string, std::array<std::uint64_t, 3>> announcements;

  Rate sift_rate() const { return {sift_count, trials}; }
  Rate key_agreement() const { return {key_agree, sift_count}; }
  Rate qber() const { return {sift_count - key_agree, sift_count}; }
  Rate eve_success_rate() const { return {eve_success, eve_attempts}; }
  Rate matched_d2_rate() const { return {matched_d2, matched_rounds}; }

  void merge(const RunStats& other);
  friend bool operator==(const RunStats&, const RunStats&) = default;
};

unsigned resolve_threads(unsigned requested);

RunStats run(const RunConfig& config);

// Eve's intercept-resend step, exposed for testing.

struct BinaryInterception {
  int outcome = 0;  // 0 for α1, 1 for α2
  int guess = 0;    // guessed and resent Alice bit
};
/// κ = 3π/8 measurement on φ_a^+, resend φ_guess^+.
BinaryInterception intercept_binary(int alice_bit, Rng& rng);

struct TernaryInterception {
  std::array<int, 3> outcomes{};
  ternary::Permutation guess;  // resent trine order
};
/// Per-photon measurement (trine_map: r = 0 POVM, hv_strategy_a: H/V), MAP
/// ordering guess with ties broken toward the lowest permutation index.
TernaryInterception intercept_ternary(Eve strategy, const ternary::Permutation& sigma, Rng& rng);

}  // namespace qeraser::mc

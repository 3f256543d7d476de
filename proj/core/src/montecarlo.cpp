#include "qeraser/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qeraser/binary_attack.hpp"
#include "qeraser/binary_protocol.hpp"
#include "qeraser/ternary_attack.hpp"

namespace qeraser::mc {

namespace {

using ternary::BobOp;
using ternary::Outcome;
using ternary::Pattern;
using ternary::Permutation;
using ternary::Trine;

struct TernaryEveModel {
  Eigen::MatrixXd p;                  // rows A1..A3, columns outcomes
  std::vector<int> guess_by_outcome;  // outcome code → permutation index
};

TernaryEveModel build_ternary_model(const Eigen::MatrixXd& p) {
  const int k = static_cast<int>(p.cols());
  TernaryEveModel model{p, {}};
  model.guess_by_outcome.resize(static_cast<std::size_t>(k * k * k));
  for (int code = 0; code < k * k * k; ++code) {
    const std::array<int, 3> o = {code / (k * k), (code / k) % k, code % k};
    int best = 0;
    double best_w = -1.0;
    for (int s = 0; s < 6; ++s) {
      const Permutation sigma = Permutation::from_index(s);
      double w = 1.0;
      for (int slot = 0; slot < 3; ++slot) w *= p(ternary::index(sigma.at(slot)), o[static_cast<std::size_t>(slot)]);
      if (w > best_w + 1e-12) {
        best_w = w;
        best = s;
      }
    }
    model.guess_by_outcome[static_cast<std::size_t>(code)] = best;
  }
  return model;
}

const TernaryEveModel& ternary_model(Eve strategy) {
  static const TernaryEveModel trine =
      build_ternary_model(ternary_attack::detection_matrix(ternary_attack::SymmetricPovm::from_ratio(0.0)));
  static const TernaryEveModel hv = build_ternary_model(ternary_attack::strategy_a_matrix());
  if (strategy == Eve::TrineMap) return trine;
  if (strategy == Eve::HvStrategyA) return hv;
  throw std::invalid_argument("strategy does not apply to ternary groups");
}

// P(α1 | φ_a^+) for the κ = 3π/8 measurement.
const std::array<double, 2>& binary_eve_alpha1() {
  static const std::array<double, 2> table = [] {
    const auto alpha = binary_attack::two_state_measurement(3.0 * kPi / 8.0);
    std::array<double, 2> t{};
    for (int a = 0; a < 2; ++a)
      t[static_cast<std::size_t>(a)] =
          born_probability(binary::channel_state(a, binary::PolSign::Plus, kPi / 4).vector, alpha[0]);
    return t;
  }();
  return table;
}

int sample(const Eigen::MatrixXd& p, int row, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  const int last = static_cast<int>(p.cols()) - 1;
  for (int j = 0; j < last; ++j) {
    acc += p(row, j);
    if (u < acc) return j;
  }
  return last;
}

struct Tables {
  std::array<std::array<double, 2>, 2> binary_d2{};  // [alice][bob]
  std::array<std::array<double, 3>, 3> ternary_pv{};  // [trine][op]
  std::array<std::array<std::array<double, 2>, 3>, 6> m1_pv{};  // [signal][op][photon]
};

Tables build_tables(const RunConfig& cfg) {
  Tables t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double d2 = 0.0;
      if (cfg.imperfections) {
        const imperfect::Case c = a ? (b ? imperfect::Case::Both : imperfect::Case::AliceOnly)
                                    : (b ? imperfect::Case::BobOnly : imperfect::Case::Neither);
        d2 = imperfect::simulate_imperfect(c, *cfg.imperfections).d2;
      } else {
        binary::RoundConfig rc;
        rc.alice_bit = a;
        rc.bob_bit = b;
        d2 = binary::detection_probabilities(rc).d2;
      }
      t.binary_d2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = d2;
    }
  for (Trine s : ternary::kTrines)
    for (BobOp op : ternary::kBobOps)
      t.ternary_pv[static_cast<std::size_t>(ternary::index(s))][static_cast<std::size_t>(ternary::index(op))] =
          ternary::measure_after_bob(s, op).p_V;
  for (std::size_t s = 0; s < 6; ++s)
    for (int op = 0; op < 3; ++op) {
      const auto pr = ternary::method1_pattern_probabilities(ternary::kM1Signals[s], op);
      t.m1_pv[s][static_cast<std::size_t>(op)] = {pr[2] + pr[3], pr[1] + pr[3]};
    }
  return t;
}

void binary_trial(const RunConfig& cfg, const Tables& t, Rng& rng, RunStats& st) {
  const int a = static_cast<int>(rng.below(2));
  const int b = static_cast<int>(rng.below(2));
  int sent = a;
  if (cfg.eve == Eve::OptimalBinary) {
    const BinaryInterception e = intercept_binary(a, rng);
    ++st.eve_attempts;
    if (e.guess == a) ++st.eve_success;
    ++st.eve_outcomes[e.outcome == 0 ? "alpha1" : "alpha2"];
    sent = e.guess;
  }
  const bool d2 = rng.bernoulli(t.binary_d2[static_cast<std::size_t>(sent)][static_cast<std::size_t>(b)]);
  ++st.detector_counts[d2 ? "D2" : "D1"];
  if (a == b) {
    ++st.matched_rounds;
    if (d2) ++st.matched_d2;
  }
  if (!d2) return;
  const auto bit = binary::sift({{a, b, binary::Detector::D2}}).front();
  ++st.sift_count;
  ++st.key_symbols[static_cast<std::size_t>(bit.alice)];
  if (bit.alice == bit.bob) ++st.key_agree;
}

void bb84_trial(const RunConfig& cfg, Rng& rng, RunStats& st) {
  const int bit = static_cast<int>(rng.below(2));
  const int alice_basis = static_cast<int>(rng.below(2));
  const int bob_basis = static_cast<int>(rng.below(2));
  // Polarization angle of the photon reaching Bob.
  double angle = alice_basis == 0 ? (bit ? kPi / 2 : 0.0) : (bit ? -kPi / 4 : kPi / 4);
  if (cfg.eve == Eve::OptimalBinary) {
    const double kp = kPi / 8;
    const double c = std::cos(angle - kp);
    const int outcome = rng.bernoulli(c * c) ? 0 : 1;
    ++st.eve_attempts;
    if (outcome == bit) ++st.eve_success;
    ++st.eve_outcomes[outcome == 0 ? "alpha1" : "alpha2"];
    angle = outcome == 0 ? kp : kp + kPi / 2;
  }
  const double reference = bob_basis == 0 ? 0.0 : kPi / 4;
  const double c = std::cos(angle - reference);
  const int result = rng.bernoulli(c * c) ? 0 : 1;
  ++st.detector_counts[result == 0 ? "bit0" : "bit1"];
  if (alice_basis != bob_basis) return;
  ++st.sift_count;
  ++st.key_symbols[static_cast<std::size_t>(bit)];
  if (result == bit) ++st.key_agree;
}

void m1_trial(const Tables& t, Rng& rng, RunStats& st) {
  const auto s = rng.below(6);
  const auto op = rng.below(3);
  const auto& pv = t.m1_pv[s][op];
  const bool v0 = rng.bernoulli(pv[0]);
  const bool v1 = rng.bernoulli(pv[1]);
  std::string label = {v0 ? 'V' : 'H', v1 ? 'V' : 'H'};
  ++st.detector_counts[label];
  if (!(v0 && v1)) return;
  const int alice = ternary::m1_symbol(ternary::kM1Signals[s]);
  ++st.sift_count;
  ++st.key_symbols[static_cast<std::size_t>(alice)];
  if (alice == static_cast<int>(op)) ++st.key_agree;
}

void m2_trial(const RunConfig& cfg, const Tables& t, Rng& rng, RunStats& st) {
  const Permutation sigma = Permutation::from_index(static_cast<int>(rng.below(6)));
  const auto op = static_cast<BobOp>(rng.below(3));
  Permutation received = sigma;
  if (cfg.eve != Eve::None) {
    const TernaryInterception e = intercept_ternary(cfg.eve, sigma, rng);
    ++st.eve_attempts;
    if (e.guess == sigma) ++st.eve_success;
    for (int o : e.outcomes) ++st.eve_outcomes["d" + std::to_string(o + 1)];
    received = e.guess;
  }
  Pattern pattern{};
  for (int k = 0; k < 3; ++k) {
    const double pv = t.ternary_pv[static_cast<std::size_t>(ternary::index(received.at(k)))]
                                  [static_cast<std::size_t>(ternary::index(op))];
    pattern[static_cast<std::size_t>(k)] = rng.bernoulli(pv) ? Outcome::V : Outcome::H;
  }
  const std::string label = ternary::to_string(pattern);
  ++st.detector_counts[label];
  const auto alice = ternary::extract_key(sigma, pattern);
  if (!alice) return;
  ++st.sift_count;
  ++st.key_symbols[static_cast<std::size_t>(*alice)];
  if (*alice == ternary::index(op)) ++st.key_agree;
  ++st.announcements[label][static_cast<std::size_t>(ternary::index(op))];
}

RunStats run_range(const RunConfig& cfg, const Tables& t, std::uint64_t begin, std::uint64_t end) {
  RunStats st;
  for (std::uint64_t i = begin; i < end; ++i) {
    Rng rng(cfg.seed, i);
    ++st.trials;
    switch (cfg.protocol) {
      case Protocol::Binary: binary_trial(cfg, t, rng, st); break;
      case Protocol::Bb84: bb84_trial(cfg, rng, st); break;
      case Protocol::TernaryM1: m1_trial(t, rng, st); break;
      case Protocol::TernaryM2: m2_trial(cfg, t, rng, st); break;
    }
  }
  return st;
}

}  // namespace

Protocol parse_protocol(const std::string& name) {
  if (name == "binary") return Protocol::Binary;
  if (name == "ternary_m1" || name == "ternary-m1") return Protocol::TernaryM1;
  if (name == "ternary_m2" || name == "ternary-m2") return Protocol::TernaryM2;
  if (name == "bb84") return Protocol::Bb84;
  throw std::invalid_argument("unknown protocol: " + name);
}

Eve parse_eve(const std::string& name) {
  if (name == "none") return Eve::None;
  if (name == "optimal_binary" || name == "optimal-binary") return Eve::OptimalBinary;
  if (name == "trine_map" || name == "trine-map") return Eve::TrineMap;
  if (name == "hv_strategy_a" || name == "hv-strategy-a") return Eve::HvStrategyA;
  throw std::invalid_argument("unknown eve strategy: " + name);
}

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::Binary: return "binary";
    case Protocol::TernaryM1: return "ternary_m1";
    case Protocol::TernaryM2: return "ternary_m2";
    case Protocol::Bb84: return "bb84";
  }
  return "?";
}

std::string to_string(Eve e) {
  switch (e) {
    case Eve::None: return "none";
    case Eve::OptimalBinary: return "optimal_binary";
    case Eve::TrineMap: return "trine_map";
    case Eve::HvStrategyA: return "hv_strategy_a";
  }
  return "?";
}

void validate(const RunConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
  const bool binary_like = cfg.protocol == Protocol::Binary || cfg.protocol == Protocol::Bb84;
  switch (cfg.eve) {
    case Eve::None: break;
    case Eve::OptimalBinary:
      if (!binary_like) throw std::invalid_argument("optimal_binary applies to binary and bb84 only");
      break;
    case Eve::TrineMap:
    case Eve::HvStrategyA:
      if (cfg.protocol != Protocol::TernaryM2) throw std::invalid_argument("trine strategies apply to ternary_m2 only");
      break;
  }
  if (cfg.imperfections && cfg.protocol != Protocol::Binary)
    throw std::invalid_argument("imperfections are modeled for the binary protocol only");
}

double Rate::standard_error() const {
  if (total == 0) return 0.0;
  const double p = value();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

void RunStats::merge(const RunStats& o) {
  trials += o.trials;
  for (const auto& [k, v] : o.detector_counts) detector_counts[k] += v;
  sift_count += o.sift_count;
  key_agree += o.key_agree;
  for (std::size_t i = 0; i < 3; ++i) key_symbols[i] += o.key_symbols[i];
  eve_attempts += o.eve_attempts;
  eve_success += o.eve_success;
  for (const auto& [k, v] : o.eve_outcomes) eve_outcomes[k] += v;
  matched_rounds += o.matched_rounds;
  matched_d2 += o.matched_d2;
  for (const auto& [k, v] : o.announcements) {
    auto& dst = announcements[k];
    for (std::size_t i = 0; i < 3; ++i) dst[i] += v[i];
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QERASER_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

RunStats run(const RunConfig& cfg) {
  validate(cfg);
  const Tables tables = build_tables(cfg);
  if (cfg.eve != Eve::None && cfg.protocol == Protocol::TernaryM2) (void)ternary_model(cfg.eve);
  if (cfg.eve == Eve::OptimalBinary) (void)binary_eve_alpha1();

  const std::uint64_t threads = std::min<std::uint64_t>(resolve_threads(cfg.threads), cfg.trials);
  std::vector<RunStats> parts(threads);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = cfg.trials / threads, extra = cfg.trials % threads;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < threads; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    workers.emplace_back([&, w, begin, end] { parts[w] = run_range(cfg, tables, begin, end); });
    begin = end;
  }
  for (auto& th : workers) th.join();
  RunStats total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

BinaryInterception intercept_binary(int alice_bit, Rng& rng) {
  if (alice_bit != 0 && alice_bit != 1) throw std::invalid_argument("alice bit must be 0 or 1");
  const int outcome = rng.bernoulli(binary_eve_alpha1()[static_cast<std::size_t>(alice_bit)]) ? 0 : 1;
  return {outcome, outcome};
}

TernaryInterception intercept_ternary(Eve strategy, const Permutation& sigma, Rng& rng) {
  const TernaryEveModel& m = ternary_model(strategy);
  const int k = static_cast<int>(m.p.cols());
  TernaryInterception out;
  int code = 0;
  for (int slot = 0; slot < 3; ++slot) {
    const int o = sample(m.p, ternary::index(sigma.at(slot)), rng);
    out.outcomes[static_cast<std::size_t>(slot)] = o;
    code = code * k + o;
  }
  out.guess = Permutation::from_index(m.guess_by_outcome[static_cast<std::size_t>(code)]);
  return out;
}

}  // namespace qeraser::mc

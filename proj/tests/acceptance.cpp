/*
 * Acceptance run: one PASS/FAIL line per primary criterion. Exit status is
 * nonzero when a criterion fails that is not listed in kKnownRed.
 */
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qeraser/binary_attack.hpp"
#include "qeraser/binary_protocol.hpp"
#include "qeraser/imperfections.hpp"
#include "qeraser/montecarlo.hpp"
#include "qeraser/optimize.hpp"
#include "qeraser/ternary_attack.hpp"
#include "qeraser/ternary_protocol.hpp"

using namespace qeraser;
namespace ba = qeraser::binary_attack;
namespace ta = qeraser::ternary_attack;

namespace {

// Tolerances as stated by the criteria.
constexpr double kTolBound = 1e-9;
constexpr double kTolArgmax = 1e-4;
constexpr double kTolMarginal = 1e-12;
constexpr double kTolRandomPol = 1e-3;
constexpr double kTolBalance = 1e-12;
constexpr double kTolRepro = 1e-4;
constexpr double kTolEta = 1e-4;
constexpr double kTolClass = 1e-3;
constexpr double kTolRounded = 0.01;
constexpr double kTolTotal = 0.02;
constexpr double kTolImperfect = 1e-9;
constexpr double kTolOrth = 1e-12;
// "Exactly" for a double evaluated through cos/sin: a few ulps of 0.25.
constexpr double kTolExactFp = 1e-15;
constexpr double kSigmas = 4.0;
constexpr double kMaxSeconds = 1.0;
constexpr std::uint64_t kMcTrials = 1'000'000;

const double kBound = (1.0 + 1.0 / std::sqrt(2.0)) / 2.0;

struct Outcome {
  bool pass;
  std::string detail;
};

// Criteria whose stated target contradicts the exact value; they stay red and
// do not affect the exit status.
const std::vector<std::pair<std::string, std::string>> kKnownRed = {
    {"randomized-polarization equivalence",
     "target 0.85 +/- 1e-3 excludes the exact maximum (1+1/sqrt2)/2 = 0.853553"},
};

const std::string* known_red(const std::string& name) {
  for (const auto& [n, why] : kKnownRed)
    if (n == name) return &why;
  return nullptr;
}

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_sigma(const mc::Rate& r, double p) {
  return std::abs(r.value() - p) <= kSigmas * std::sqrt(p * (1 - p) / static_cast<double>(r.total));
}

Outcome binary_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const Maximum closed = ba::two_state_optimum();
  const Maximum grid = grid_max(ba::p_correct_two_state, 0.0, kPi, 31417);
  const Maximum refined = refined_max(ba::p_correct_two_state, 0.0, kPi, 1001, 1e-12);
  const double secs = seconds_since(t0);
  const bool ok = near(closed.value, kBound, kTolBound) && near(grid.x, 3 * kPi / 8, kTolArgmax) &&
                  near(refined.value, closed.value, kTolBound) && secs < kMaxSeconds;
  return {ok, format("max %.10f argmax %.6f deg search %.10f (%.3f s)", closed.value, to_deg(grid.x), refined.value, secs)};
}

Outcome four_state() {
  const Maximum2d m = grid_max_2d(ba::p_correct_four_state, -kPi / 2, kPi / 2, -kPi / 2, kPi / 2, 361);
  const auto marg = ba::four_state_marginals(m.x, m.y);
  bool ok = near(m.value, kBound, kTolBound) && near(m.x, deg(67.5), kTolBound) && near(m.y, deg(-67.5), kTolBound);
  double dev = 0.0;
  for (double x : marg) dev = std::max(dev, std::abs(x - 0.25));
  ok = ok && dev <= kTolMarginal;
  return {ok, format("max %.10f at (%.4f, %.4f) deg, marginal dev %.2e", m.value, to_deg(m.x), to_deg(m.y), dev)};
}

Outcome random_pol() {
  const Maximum m = refined_max(ba::p_correct_random_pol, 0.0, kPi, 3601, 1e-12);
  const double bal = std::abs(ba::random_pol_balance(m.x));
  const bool ok = near(m.value, 0.85, kTolRandomPol) && near(m.x, deg(22.5), kTolRandomPol) && bal < kTolBalance;
  return {ok, format("max %.6f at %.6f deg, balance residual %.2e", m.value, to_deg(m.x), bal)};
}

Outcome bb84() {
  const Maximum m = refined_max([](double k) { return ba::bb84_analysis(k).bit_success; }, 0.0, kPi, 3601, 1e-12);
  const auto a = ba::bb84_analysis(deg(22.5));
  const bool ok = near(m.value, kBound, kTolBound) && near(m.x, deg(22.5), kTolArgmax) &&
                  near(a.state_reproduction, 0.4268, kTolRepro);
  return {ok, format("bit success %.10f at %.5f deg, state reproduction %.5f (MAP best %.4f)", m.value, to_deg(m.x),
                     a.state_reproduction, ba::bb84_best_map_state_reproduction().value)};
}

Outcome tradeoff() {
  const double b = ba::b_pole(kPi / 4, 0).probability;
  const double e = binary::efficiency(kPi / 4, kPi / 4, kPi / 4);
  double env = 1.0;
  for (int i = 0; i <= 1000; ++i) env = std::min(env, ba::b_pole_envelope(-kPi / 2 + i * kPi / 1000));
  const bool ok = near(b, kBound, kTolBound) && near(e, 0.25, kTolExactFp) && env >= 0.5 - kTolBound;
  return {ok, format("B_pole %.10f, E_ff %.17g, envelope min %.12f", b, e, env)};
}

Outcome ternary_sifting() {
  const auto m1 = ternary::efficiency_metrics(ternary::Method::M1);
  const auto m2 = ternary::efficiency_metrics(ternary::Method::M2);
  mc::RunConfig c1;
  c1.protocol = mc::Protocol::TernaryM1;
  c1.trials = kMcTrials;
  c1.seed = 1;
  mc::RunConfig c2 = c1;
  c2.protocol = mc::Protocol::TernaryM2;
  const auto r1 = mc::run(c1).sift_rate();
  const auto r2 = mc::run(c2).sift_rate();
  const bool ok = m1.p_sift == ternary::Fraction{3, 16} && m2.p_sift == ternary::Fraction{9, 16} &&
                  near(m1.eta_bin, 0.1486, kTolEta) && near(m2.eta_bin, 0.2971, kTolEta) && within_sigma(r1, 3.0 / 16) &&
                  within_sigma(r2, 9.0 / 16);
  return {ok, format("M1 %lld/%lld eta %.5f mc %.5f; M2 %lld/%lld eta %.5f mc %.5f", static_cast<long long>(m1.p_sift.num),
                     static_cast<long long>(m1.p_sift.den), m1.eta_bin, r1.value(), static_cast<long long>(m2.p_sift.num),
                     static_cast<long long>(m2.p_sift.den), m2.eta_bin, r2.value())};
}

Outcome announcements() {
  int patterns = 0;
  bool ok = true;
  for (const auto& p : ternary::all_patterns()) {
    if (std::count(p.begin(), p.end(), ternary::Outcome::H) != 1) continue;
    ++patterns;
    for (const auto& f : ternary::announcement_posterior(p)) ok = ok && f == ternary::Fraction{1, 3};
  }
  ok = ok && patterns == 3;
  return {ok, format("%d sifted patterns, posterior exactly (1/3, 1/3, 1/3)", patterns)};
}

Outcome single_photon() {
  const Maximum m = refined_max(
      [](double t) { return ta::single_photon_map_success(ta::detection_matrix(ta::SymmetricPovm::from_angle(t))); },
      -1.5, 1.5, 601, 1e-12);
  const bool ok = near(m.value, 2.0 / 3.0, kTolBound) && near(std::tan(m.x), 0.0, kTolClass);
  return {ok, format("max %.12f at r = %.2e", m.value, std::tan(m.x))};
}

Outcome class_fractions() {
  const auto f = ta::pattern_fractions_closed(0.0);
  const bool ok = near(f.q1, 3.0 / 52.0, 1e-15) && near(f.q3, 0.3654, kTolClass) && near(f.q2, 0.5769, kTolClass) &&
                  near(f.q1, 0.06, kTolRounded) && near(f.q2, 0.57, kTolRounded) && near(f.q3, 0.37, kTolRounded);
  const auto e = ta::pattern_fractions_exact(ta::detection_matrix(ta::SymmetricPovm::from_ratio(0.0)));
  return {ok, format("Q1 %.6f Q2 %.6f Q3 %.6f (exact enumeration %.6f %.6f %.6f)", f.q1, f.q2, f.q3, e.q1, e.q2(), e.q3)};
}

Outcome conditionals() {
  const double c1 = ta::conditional_success_closed(ta::PatternClass::Q1, 0.0);
  const double c2 = ta::conditional_success_closed(ta::PatternClass::Q2, 0.0);
  const double c3 = ta::conditional_success_closed(ta::PatternClass::Q3, 0.0);
  const auto ex = ta::conditional_success_exact(ta::detection_matrix(ta::SymmetricPovm::from_ratio(0.0)));
  const bool ok = near(c1, 1.0 / 6.0, 1e-15) && near(c2, 0.4, kTolClass) && near(c3, 0.8205, kTolClass);
  return {ok, format("Q1 %.6f Q2 %.6f (exact %.6f) Q3 %.6f (exact %.6f)", c1, c2, ex.q2, c3, ex.q3)};
}

Outcome ternary_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const Maximum m = ta::optimize_total_success();
  const double oracle = ta::oracle_map_success();
  const double secs = seconds_since(t0);
  const bool ok = near(m.value, 0.54, kTolTotal) && near(m.x, 0.0, kTolClass) && near(oracle, m.value, kTolTotal) &&
                  secs < kMaxSeconds;
  return {ok, format("total %.6f at r* = %.2e, oracle %.6f (%.3f s)", m.value, m.x, oracle, secs)};
}

Outcome auxiliary() {
  const double a = ta::strategy_a_success();
  const auto b = ta::strategy_b_success();
  const auto n = ta::naive_composite_bound();
  const bool ok = near(a, 0.3854, kTolClass) && b.idealized == 0.5 && near(n.product, 2.0 / 9.0, 1e-15);
  return {ok, format("strategy a %.6f, b idealized %.3f (realistic %.5f), naive %.6f", a, b.idealized, b.realistic, n.product)};
}

Outcome fourth_detector() {
  double overlap = 0.0, perm = 0.0;
  const LinearMap rot = ta::rotation_120();
  const auto psi = ta::channel_states();
  const std::array<StateVector, 3> turned = {rot.apply(psi[0]), rot.apply(psi[1]), rot.apply(psi[2])};
  for (int i = 0; i <= 20; ++i) {
    const auto povm = ta::SymmetricPovm::from_angle(-1.5 + i * 0.15);
    for (double o : ta::fourth_detector_check(povm).overlaps) overlap = std::max(overlap, o);
    const Eigen::MatrixXd p = ta::detection_matrix(povm);
    const Eigen::MatrixXd q = ta::detection_matrix(povm, turned);
    for (int r = 0; r < 3; ++r) perm = std::max(perm, (q.row(r) - p.row((r + 1) % 3)).cwiseAbs().maxCoeff());
  }
  return {overlap < kTolOrth && perm < kTolOrth, format("max |<a4|psi>| %.2e, R120 row deviation %.2e", overlap, perm)};
}

Outcome imperfections() {
  using namespace imperfect;
  double diff = 0.0;
  const std::array<double, 4> grid = {0.0, 0.05, 0.2, 0.5};
  for (Case c : {Case::Neither, Case::Both, Case::AliceOnly, Case::BobOnly})
    for (double s : grid)
      for (double dt : grid)
        for (double g : grid) {
          Params p;
          p.sigma_u = p.sigma_l = s;
          p.delta2 = dt;
          p.beta_B = p.mu_B = kPi / 4 + g;
          const auto a = detection_probs(c, p);
          const auto b = simulate_imperfect(c, p);
          diff = std::max({diff, std::abs(a.d1 - b.d1), std::abs(a.d2 - b.d2)});
        }
  const auto both = simulate_imperfect(Case::Both, Params{});
  const auto mism = simulate_imperfect(Case::AliceOnly, Params{});
  const bool ideal = std::abs(both.d1 - 1.0) < kTolOrth && std::abs(mism.d2 - 0.5) < kTolOrth;
  double vis = 0.0, order = 0.0;
  for (int i = 1; i <= 30; ++i) {
    const double d = 0.01 * i;
    const Visibility v = visibility(d / 2, d / 2);
    const double sim = simulate_imperfect(Case::Both, visibility_params(d / 2, d / 2)).d2;
    vis = std::max({vis, std::abs(v.v - std::abs(std::cos(d))), std::abs(sim - v.p_d2_exact)});
    order = std::max(order, std::abs((v.p_d2_small_angle - v.p_d2_exact) / std::pow(d, 4) - 1.0 / 48.0));
  }
  const bool ok = diff <= kTolImperfect && ideal && vis <= kTolImperfect && order < 1e-4;
  return {ok, format("closed vs sim %.2e, visibility %.2e, (small-exact)/d^4 - 1/48 %.2e", diff, vis, order)};
}

Outcome determinism() {
  bool ok = true;
  for (auto [p, e] : {std::pair{mc::Protocol::Binary, mc::Eve::OptimalBinary}, std::pair{mc::Protocol::TernaryM2, mc::Eve::TrineMap},
                      std::pair{mc::Protocol::TernaryM1, mc::Eve::None}, std::pair{mc::Protocol::Bb84, mc::Eve::OptimalBinary}}) {
    mc::RunConfig c;
    c.protocol = p;
    c.eve = e;
    c.trials = 200003;
    c.seed = 99;
    c.threads = 1;
    const auto one = mc::run(c);
    const auto again = mc::run(c);
    c.threads = std::max(2u, mc::resolve_threads(0));
    const auto many = mc::run(c);
    ok = ok && one == again && one == many;
  }
  return {ok, format("4 protocols, 1 vs %u threads", std::max(2u, mc::resolve_threads(0)))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"binary discrimination bound", binary_bound},
      {"four-state equivalence", four_state},
      {"randomized-polarization equivalence", random_pol},
      {"BB84 comparison", bb84},
      {"security/efficiency trade-off", tradeoff},
      {"ternary sifting", ternary_sifting},
      {"announcement uniformity", announcements},
      {"single-photon trine bound", single_photon},
      {"pattern-class fractions", class_fractions},
      {"conditional successes", conditionals},
      {"ternary discrimination bound", ternary_bound},
      {"auxiliary strategies", auxiliary},
      {"fourth-detector orthogonality", fourth_detector},
      {"imperfections", imperfections},
      {"Monte Carlo determinism", determinism},
  };
  int failed = 0, red = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::string* why = known_red(name);
    if (!o.pass) ++red;
    if (!o.pass && !why) ++failed;
    std::printf("%s  %s: %s%s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                !o.pass && why ? (" [known red: " + *why + "]").c_str() : "");
  }
  std::printf("%d/%zu criteria passed, %d unexpected failures\n", static_cast<int>(criteria.size()) - red,
              criteria.size(), failed);
  return failed ? 1 : 0;
}

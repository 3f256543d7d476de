#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "cli.hpp"
#include "qeraser/binary_attack.hpp"
#include "qeraser/binary_protocol.hpp"
#include "qeraser/ternary_attack.hpp"
#include "qeraser/ternary_protocol.hpp"

namespace qeraser::cli {

namespace {

namespace ba = binary_attack;
namespace ta = ternary_attack;

struct Target {
  std::string name;
  double lo, hi;          // default range
  double min, max;        // admissible domain
  std::size_t points;     // default grid size
  bool degrees;
  std::vector<std::pair<std::string, std::function<double(double)>>> curves;
};

double p_v_after(ternary::BobOp op, double pol) {
  const StateVector in = rotator(Rotation::Left, pol).apply(StateVector::basis_state(Basis::polarization(), {std::nullopt, Pol::H}));
  const StateVector out = ternary::bob_operator(op).apply(in);
  return std::norm(out.amplitude({std::nullopt, Pol::V}));
}

const std::vector<Target>& targets() {
  static const std::vector<Target> t = [] {
    std::vector<Target> v;
    v.push_back({"fig3", 0, 180, -360, 360, 721, true, {{"", ba::p_correct_two_state}}});
    v.push_back({"fig4", 0, 180, -360, 360, 721, true, {{"", ba::p_correct_random_pol}}});
    v.push_back({"fig6", -90, 90, -90, 90, 721, true,
                 {{"k0", [](double g) { return ba::b_pole(g, 0).probability; }},
                  {"k1", [](double g) { return ba::b_pole(g, 1).probability; }}}});
    v.push_back({"fig7", -90, 90, -90, 90, 721, true,
                 {{"B_pole", [](double g) { return ba::b_pole(g, 0).probability; }},
                  {"E_ff", [](double g) { return binary::efficiency(g, g, kPi / 4); }}}});
    v.push_back({"fig8", -180, 180, -360, 360, 721, true,
                 {{"B1", [](double p) { return p_v_after(ternary::BobOp::B1, p); }},
                  {"B2", [](double p) { return p_v_after(ternary::BobOp::B2, p); }},
                  {"B3", [](double p) { return p_v_after(ternary::BobOp::B3, p); }}}});
    v.push_back({"fig9", -3, 3, -1e3, 1e3, 601, false, {{"", [](double r) { return ta::pattern_fractions_closed(r).q1; }}}});
    v.push_back({"fig10", -3, 3, -1e3, 1e3, 601, false,
                 {{"", [](double r) { return ta::conditional_success_closed(ta::PatternClass::Q2, r); }}}});
    v.push_back({"fig11", -3, 3, -1e3, 1e3, 601, false,
                 {{"", [](double r) { return ta::conditional_success_closed(ta::PatternClass::Q3, r); }}}});
    v.push_back({"fig12", -3, 3, -1e3, 1e3, 601, false, {{"", [](double r) { return ta::pattern_fractions_closed(r).q3; }}}});
    return v;
  }();
  return t;
}

Sweep table_bounds() {
  const auto bb84 = ba::bb84_analysis(deg(22.5));
  const auto b = ta::strategy_b_success();
  const auto m1 = ternary::efficiency_metrics(ternary::Method::M1);
  const auto m2 = ternary::efficiency_metrics(ternary::Method::M2);
  const std::vector<std::pair<std::string, double>> values = {
      {"two_state", ba::two_state_optimum().value},
      {"four_state", ba::p_correct_four_state(deg(67.5), deg(-67.5))},
      {"random_polarization", ba::p_correct_random_pol(ba::random_pol_optimum_omega())},
      {"bb84_bit_success", bb84.bit_success},
      {"bb84_state_reproduction", bb84.state_reproduction},
      {"bb84_best_map_state_reproduction", ba::bb84_best_map_state_reproduction().value},
      {"b_pole_standard", ba::b_pole(kPi / 4, 0).probability},
      {"e_ff_standard", binary::efficiency(kPi / 4, kPi / 4, kPi / 4)},
      {"helstrom", ba::helstrom(1.0 / std::sqrt(2.0))},
      {"trine_single_photon", ta::single_photon_map_success(ta::detection_matrix(ta::SymmetricPovm::from_ratio(0.0)))},
      {"ternary_total_closed", ta::total_success_closed(0.0)},
      {"ternary_total_oracle", ta::oracle_map_success()},
      {"strategy_a", ta::strategy_a_success()},
      {"strategy_b_idealized", b.idealized},
      {"strategy_b_realistic", b.realistic},
      {"naive_composite", ta::naive_composite_bound().product},
      {"m1_p_sift", m1.p_sift.value()},
      {"m1_eta_bin", m1.eta_bin},
      {"m2_p_sift", m2.p_sift.value()},
      {"m2_eta_bin", m2.eta_bin},
  };
  Sweep s{true, {}};
  for (std::size_t i = 0; i < values.size(); ++i)
    s.rows.push_back({static_cast<double>(i), values[i].second, values[i].first});
  return s;
}

}  // namespace

const std::vector<std::string>& sweep_targets() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Target& t : targets()) n.push_back(t.name);
    n.push_back("table_bounds");
    return n;
  }();
  return names;
}

Sweep sweep(const SweepSpec& spec) {
  if (spec.target == "table_bounds") return table_bounds();
  const Target* t = nullptr;
  for (const Target& c : targets())
    if (c.name == spec.target) t = &c;
  if (!t) throw std::invalid_argument("unknown sweep target: " + spec.target);

  const std::size_t n = spec.points.value_or(t->points);
  if (n < 2) throw std::invalid_argument("sweep needs at least 2 points");
  const auto [lo, hi] = spec.range.value_or(std::pair{t->lo, t->hi});
  if (!(lo < hi) || lo < t->min || hi > t->max)
    throw std::invalid_argument(fmt::format("range [{}, {}] invalid for {} (domain [{}, {}])", lo, hi, t->name, t->min, t->max));

  Sweep s{t->curves.size() > 1, {}};
  s.rows.reserve(n * t->curves.size());
  for (const auto& [series, f] : t->curves)
    for (std::size_t i = 0; i < n; ++i) {
      // Integer-indexed grid so endpoints and the midpoint are exact.
      const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      s.rows.push_back({x, f(t->degrees ? deg(x) : x), series});
    }
  return s;
}

std::string to_csv(const Sweep& s) {
  std::string out = s.has_series ? "x,y,series\n" : "x,y\n";
  for (const Row& r : s.rows) {
    if (s.has_series)
      out += fmt::format("{:.12g},{:.12g},{}\n", r.x, r.y, r.series);
    else
      out += fmt::format("{:.12g},{:.12g}\n", r.x, r.y);
  }
  return out;
}

}  // namespace qeraser::cli

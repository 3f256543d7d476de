#include "qeraser/ternary_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/rational.hpp>

namespace qeraser::ternary {

namespace {

using Q = boost::rational<std::int64_t>;

const Label kH{std::nullopt, Pol::H};

// Angles in units of 120°.
int trine_units(Trine t) {
  switch (t) {
    case Trine::A1: return 0;
    case Trine::A2: return 1;
    case Trine::A3: return -1;
  }
  return 0;
}

std::array<int, 2> m1_units(M1Signal s) {
  switch (s) {
    case M1Signal::S0: return {0, 1};
    case M1Signal::S0p: return {1, 0};
    case M1Signal::S1: return {-1, 0};
    case M1Signal::S1p: return {0, -1};
    case M1Signal::S2: return {-1, 1};
    case M1Signal::S2p: return {1, -1};
  }
  return {0, 0};
}

int m1_bob_units(int op) {
  switch (op) {
    case 0: return 1;
    case 1: return -1;
    case 2: return 0;
  }
  throw std::invalid_argument("Method I op must be 0, 1 or 2");
}

// cos²(120°·units) as an exact fraction.
Q cos_squared_units(int units) {
  const int m = ((units % 3) + 3) % 3;
  const Q c = m == 0 ? Q(1) : Q(-1, 2);
  return c * c;
}

Fraction to_fraction(const Q& q) { return {q.numerator(), q.denominator()}; }

double p_v_at(double angle) {
  const StateVector out = rotator(Rotation::Left, angle).apply(StateVector::basis_state(Basis::polarization(), kH));
  return born_probability(out, StateVector::basis_state(Basis::polarization(), {std::nullopt, Pol::V}));
}

Q exact_pattern_m2(const Permutation& sigma, BobOp op, const Pattern& pattern) {
  Q p(1);
  for (int k = 0; k < 3; ++k) {
    const auto hv = exact_after_bob(sigma.at(k), op);
    const Fraction& f = pattern[static_cast<std::size_t>(k)] == Outcome::H ? hv[0] : hv[1];
    p *= Q(f.num, f.den);
  }
  return p;
}

int count_h(const Pattern& p) { return static_cast<int>(std::count(p.begin(), p.end(), Outcome::H)); }

}  // namespace

double trine_angle(Trine t) { return trine_units(t) * 2.0 * kPi / 3.0; }

StateVector trine_state(Trine t) {
  return rotator(Rotation::Left, trine_angle(t)).apply(StateVector::basis_state(Basis::polarization(), kH));
}

double bob_rotation(BobOp op) { return -trine_angle(static_cast<Trine>(index(op))); }

LinearMap bob_operator(BobOp op) { return rotator(Rotation::Left, bob_rotation(op)); }

HvProbabilities measure_after_bob(Trine state, BobOp op) {
  const StateVector out = bob_operator(op).apply(trine_state(state));
  const Basis pol = Basis::polarization();
  return {born_probability(out, StateVector::basis_state(pol, kH)),
          born_probability(out, StateVector::basis_state(pol, {std::nullopt, Pol::V}))};
}

std::array<Fraction, 2> exact_after_bob(Trine state, BobOp op) {
  const Q ph = cos_squared_units(trine_units(state) - trine_units(static_cast<Trine>(index(op))));
  return {to_fraction(ph), to_fraction(Q(1) - ph)};
}

const std::array<Permutation, 6>& Permutation::all() {
  using enum Trine;
  static const std::array<Permutation, 6> table = {
      Permutation({A1, A2, A3}), Permutation({A1, A3, A2}), Permutation({A2, A1, A3}),
      Permutation({A2, A3, A1}), Permutation({A3, A1, A2}), Permutation({A3, A2, A1})};
  return table;
}

int Permutation::slot_of(Trine t) const {
  for (int k = 0; k < 3; ++k)
    if (slots_[static_cast<std::size_t>(k)] == t) return k;
  throw std::logic_error("trine missing from permutation");
}

int Permutation::index() const {
  const auto& t = all();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] == *this) return static_cast<int>(i);
  throw std::logic_error("invalid permutation");
}

Permutation Permutation::compose(const Permutation& rhs) const {
  std::array<Trine, 3> out{};
  for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)] = at(ternary::index(rhs.at(k)));
  return Permutation(out);
}

Permutation Permutation::inverse() const {
  std::array<Trine, 3> out{};
  for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(ternary::index(at(k)))] = static_cast<Trine>(k);
  return Permutation(out);
}

bool Permutation::is_valid() const {
  return std::is_permutation(slots_.begin(), slots_.end(), kTrines.begin());
}

std::string to_string(const Pattern& p) {
  std::string s;
  for (Outcome o : p) s += (o == Outcome::H ? 'H' : 'V');
  return s;
}

const std::array<Pattern, 8>& all_patterns() {
  static const std::array<Pattern, 8> table = [] {
    std::array<Pattern, 8> t{};
    for (int i = 0; i < 8; ++i)
      for (int k = 0; k < 3; ++k)
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = ((i >> (2 - k)) & 1) ? Outcome::V : Outcome::H;
    return t;
  }();
  return table;
}

std::array<double, 2> m1_signal_angles(M1Signal s) {
  const auto u = m1_units(s);
  return {u[0] * 2.0 * kPi / 3.0, u[1] * 2.0 * kPi / 3.0};
}

int m1_symbol(M1Signal s) { return static_cast<int>(s) / 2; }

double m1_bob_rotation(int op) { return m1_bob_units(op) * 2.0 * kPi / 3.0; }

std::array<double, 4> method1_pattern_probabilities(M1Signal s, int op) {
  const auto a = m1_signal_angles(s);
  const double r = m1_bob_rotation(op);
  const double v0 = p_v_at(a[0] + r), v1 = p_v_at(a[1] + r);
  return {(1 - v0) * (1 - v1), (1 - v0) * v1, v0 * (1 - v1), v0 * v1};
}

PairPattern method1_round(M1Signal s, int op, Rng& rng) {
  const auto a = m1_signal_angles(s);
  const double r = m1_bob_rotation(op);
  PairPattern out{};
  for (std::size_t k = 0; k < 2; ++k) out[k] = rng.bernoulli(p_v_at(a[k] + r)) ? Outcome::V : Outcome::H;
  return out;
}

double method2_pattern_probability(const Permutation& sigma, BobOp op, const Pattern& pattern) {
  double p = 1.0;
  for (int k = 0; k < 3; ++k) {
    const auto hv = measure_after_bob(sigma.at(k), op);
    p *= pattern[static_cast<std::size_t>(k)] == Outcome::H ? hv.p_H : hv.p_V;
  }
  return p;
}

Pattern method2_round(const Permutation& sigma, BobOp op, Rng& rng) {
  if (!sigma.is_valid()) throw std::invalid_argument("Method II group must hold each trine once");
  Pattern out{};
  for (int k = 0; k < 3; ++k)
    out[static_cast<std::size_t>(k)] = rng.bernoulli(measure_after_bob(sigma.at(k), op).p_V) ? Outcome::V : Outcome::H;
  return out;
}

std::optional<int> extract_key(const Permutation& sigma, const Pattern& pattern) {
  if (count_h(pattern) != 1) return std::nullopt;
  const auto slot = static_cast<int>(std::find(pattern.begin(), pattern.end(), Outcome::H) - pattern.begin());
  return index(sigma.at(slot));
}

std::array<Fraction, 3> announcement_posterior(const Pattern& pattern) {
  if (count_h(pattern) != 1) throw std::invalid_argument("posterior defined only for one-H patterns");
  std::array<Q, 3> joint{};
  Q total(0);
  for (const Permutation& sigma : Permutation::all()) {
    for (BobOp op : kBobOps) {
      const Q p = Q(1, 18) * exact_pattern_m2(sigma, op, pattern);
      joint[static_cast<std::size_t>(index(op))] += p;
      total += p;
    }
  }
  std::array<Fraction, 3> out{};
  for (std::size_t j = 0; j < 3; ++j) out[j] = to_fraction(joint[j] / total);
  return out;
}

EfficiencyMetrics efficiency_metrics(Method method) {
  Q sift(0);
  int m = 0;
  if (method == Method::M1) {
    m = 2;
    for (M1Signal s : kM1Signals) {
      const auto u = m1_units(s);
      for (int op = 0; op < 3; ++op) {
        const Q v0 = Q(1) - cos_squared_units(u[0] + m1_bob_units(op));
        const Q v1 = Q(1) - cos_squared_units(u[1] + m1_bob_units(op));
        sift += Q(1, 18) * v0 * v1;
      }
    }
  } else {
    m = 3;
    for (const Permutation& sigma : Permutation::all())
      for (BobOp op : kBobOps)
        for (const Pattern& p : all_patterns())
          if (count_h(p) == 1) sift += Q(1, 18) * exact_pattern_m2(sigma, op, p);
  }
  EfficiencyMetrics out;
  out.p_sift = to_fraction(sift);
  out.eta_raw = out.p_sift.value() / m;
  out.eta_bin = std::log2(3.0) / m * out.p_sift.value();
  return out;
}

}  // namespace qeraser::ternary

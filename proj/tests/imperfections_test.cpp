#include <gtest/gtest.h>

#include <cmath>

#include "qeraser/binary_protocol.hpp"
#include "qeraser/imperfections.hpp"

using namespace qeraser;
using namespace qeraser::imperfect;

namespace {

constexpr std::array<Case, 4> kCases = {Case::Neither, Case::Both, Case::AliceOnly, Case::BobOnly};
constexpr std::array<double, 4> kGrid = {0.0, 0.05, 0.2, 0.5};

Params make(double sigma, double dtheta, double alice_shift, double bob_shift) {
  Params p;
  p.delta2 = dtheta;
  p.sigma_u = p.sigma_l = sigma;
  p.beta_A = p.mu_A = kPi / 4 + alice_shift;
  p.beta_B = p.mu_B = kPi / 4 + bob_shift;
  return p;
}

}  // namespace

TEST(Params, DerivedQuantities) {
  Params p;
  p.delta1 = 0.1;
  p.delta2 = 0.3;
  p.beta_A = 0.5;
  p.mu_B = 0.9;
  EXPECT_NEAR(p.theta1(), kPi / 4 + 0.1, kAnalyticTol);
  EXPECT_NEAR(p.delta_theta(), 0.2, kAnalyticTol);
  EXPECT_NEAR(p.gamma_mismatch(), 0.4, kAnalyticTol);
}

TEST(Case, ParseRoundTrip) {
  for (Case c : kCases) EXPECT_EQ(parse_case(to_string(c)), c);
  EXPECT_THROW(parse_case("sometimes"), std::invalid_argument);
}

TEST(ClosedForm, AgreesWithSimulationOnGrid) {
  for (Case c : kCases)
    for (double sigma : kGrid)
      for (double dtheta : kGrid)
        for (double gamma : kGrid) {
          const Params p = make(sigma, dtheta, 0.0, gamma);
          const auto closed = detection_probs(c, p);
          const auto sim = simulate_imperfect(c, p);
          EXPECT_NEAR(closed.d1, sim.d1, kPipelineTol) << to_string(c) << " σ=" << sigma << " Δθ=" << dtheta
                                                       << " Γ=" << gamma;
          EXPECT_NEAR(closed.d2, sim.d2, kPipelineTol);
        }
}

TEST(ClosedForm, RequiresEqualDecoherence) {
  Params p;
  p.sigma_u = 0.1;
  p.sigma_l = 0.2;
  EXPECT_THROW(detection_probs(Case::Both, p), std::invalid_argument);
  EXPECT_NO_THROW(simulate_imperfect(Case::Both, p));
}

TEST(Simulation, ConservesProbability) {
  for (Case c : kCases)
    for (double a : {0.0, 0.3, -0.7}) {
      Params p = make(0.4, 0.1, a, -a / 2);
      p.delta1 = 0.07;
      p.sigma_l = 0.9;
      const StateVector out = propagate(c, p);
      EXPECT_NEAR(out.norm_squared(), 1.0, kAnalyticTol);
      const auto d = simulate_imperfect(c, p);
      EXPECT_NEAR(d.d1 + d.d2, 1.0, kAnalyticTol);
    }
}

TEST(Simulation, IdealReducesToBinaryProtocol) {
  const Params ideal;
  const auto both = simulate_imperfect(Case::Both, ideal);
  const auto neither = simulate_imperfect(Case::Neither, ideal);
  const auto alice = simulate_imperfect(Case::AliceOnly, ideal);
  const auto bob = simulate_imperfect(Case::BobOnly, ideal);
  auto ref = [](int a, int b) {
    binary::RoundConfig c;
    c.alice_bit = a;
    c.bob_bit = b;
    return binary::detection_probabilities(c);
  };
  EXPECT_NEAR(both.d1, ref(1, 1).d1, kPipelineTol);
  EXPECT_NEAR(neither.d1, ref(0, 0).d1, kPipelineTol);
  EXPECT_NEAR(alice.d2, ref(1, 0).d2, kPipelineTol);
  EXPECT_NEAR(bob.d2, ref(0, 1).d2, kPipelineTol);
}

TEST(Simulation, MismatchIncreasesErrors) {
  double last = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double g = i * (kPi / 2) / 20;
    const double d2 = simulate_imperfect(Case::Both, make(0.0, 0.0, 0.0, g)).d2;
    EXPECT_GE(d2, last - 1e-15);
    EXPECT_NEAR(d2, std::sin(g) * std::sin(g), kPipelineTol);
    last = d2;
  }
}

TEST(Simulation, AliceBobSymmetry) {
  for (double sigma : kGrid)
    for (double dtheta : kGrid) {
      const auto a = simulate_imperfect(Case::AliceOnly, make(sigma, dtheta, 0.0, 0.0));
      const auto b = simulate_imperfect(Case::BobOnly, make(sigma, dtheta, 0.0, 0.0));
      EXPECT_NEAR(a.d1, b.d1, kPipelineTol);
    }
}

TEST(Simulation, FullDecoherenceGivesHalf) {
  for (Case c : kCases)
    for (double gamma : kGrid) {
      const auto d = simulate_imperfect(c, make(kPi / 2, 0.0, 0.0, gamma));
      EXPECT_NEAR(d.d1, 0.5, kPipelineTol) << to_string(c);
    }
}

TEST(Simulation, DecoherenceRaisesMatchedErrors) {
  const double clean = simulate_imperfect(Case::Both, make(0.0, 0.1, 0.0, 0.0)).d2;
  const double noisy = simulate_imperfect(Case::Both, make(0.3, 0.1, 0.0, 0.0)).d2;
  EXPECT_GT(noisy, clean);
  EXPECT_NEAR(clean, std::sin(0.1) * std::sin(0.1), kPipelineTol);
}

TEST(Visibility, GoldenValues) {
  const Visibility v0 = visibility(0.0, 0.0);
  EXPECT_NEAR(v0.v, 1.0, kAnalyticTol);
  EXPECT_NEAR(v0.p_d2_exact, 0.0, kAnalyticTol);
  const Visibility v = visibility(0.05, 0.03);
  EXPECT_NEAR(v.v, std::cos(0.08), kAnalyticTol);
  EXPECT_NEAR(v.p_d2_exact, (1 - std::cos(0.08)) / 2, kAnalyticTol);
  EXPECT_NEAR(v.p_d2_small_angle, 0.08 * 0.08 / 4, kAnalyticTol);
}

TEST(Visibility, SmallAngleErrorIsFourthOrder) {
  for (double x : {0.02, 0.01, 0.005}) {
    const Visibility v = visibility(x / 2, x / 2);
    const double ratio = (v.p_d2_small_angle - v.p_d2_exact) / std::pow(x, 4);
    EXPECT_NEAR(ratio, 1.0 / 48.0, 1e-4);
  }
}

TEST(Visibility, SimulationMatchesExactForm) {
  for (double da : {0.0, 0.02, 0.1, 0.3})
    for (double db : {0.0, 0.05, 0.2}) {
      const auto d = simulate_imperfect(Case::Both, visibility_params(da, db));
      EXPECT_NEAR(d.d2, visibility(da, db).p_d2_exact, kPipelineTol);
    }
}

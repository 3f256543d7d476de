#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qeraser/optimize.hpp"
#include "qeraser/rng.hpp"

using namespace qeraser;

TEST(GoldenSection, FindsParabolaPeak) {
  const Maximum m = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3) + 2.0; }, -1.0, 1.0, 1e-10);
  EXPECT_NEAR(m.x, 0.3, 1e-7);
  EXPECT_NEAR(m.value, 2.0, 1e-12);
}

TEST(GoldenSection, RejectsEmptyInterval) {
  EXPECT_THROW(golden_section_max([](double x) { return x; }, 1.0, 1.0), std::invalid_argument);
}

TEST(Grid, IncludesEndpoints) {
  const Maximum m = grid_max([](double x) { return x; }, 0.0, 2.0, 5);
  EXPECT_DOUBLE_EQ(m.x, 2.0);
  EXPECT_THROW(grid_max([](double x) { return x; }, 0.0, 1.0, 1), std::invalid_argument);
}

TEST(Grid, RefinedBeatsCoarseGrid) {
  auto f = [](double x) { return std::sin(x); };
  const Maximum m = refined_max(f, 0.0, 3.0, 7);
  EXPECT_NEAR(m.x, std::acos(0.0), 1e-7);
}

TEST(Grid, TwoDimensional) {
  const Maximum2d m = grid_max_2d([](double x, double y) { return -(x - 1) * (x - 1) - (y + 1) * (y + 1); }, -2, 2, -2, 2, 41);
  EXPECT_NEAR(m.x, 1.0, 1e-12);
  EXPECT_NEAR(m.y, -1.0, 1e-12);
}

TEST(Rng, SameKeySameStream) {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, StreamsDiffer) {
  Rng a(42, 7), b(42, 8), c(43, 7);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_NE(x, c());
}

TEST(Rng, FrozenFirstOutputs) {
  // SplitMix64 reference value: mix(0x9E3779B97F4A7C15) from the published algorithm.
  EXPECT_EQ(splitmix64_mix(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(1, 2);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, BelowCoversRangeUniformly) {
  Rng r(9, 9);
  std::array<int, 6> counts{};
  const int n = 600000;
  for (int i = 0; i < n; ++i) ++counts[r.below(6)];
  const double p = 1.0 / 6.0, sd = std::sqrt(n * p * (1 - p));
  for (int c : counts) EXPECT_NEAR(c, n * p, 4.0 * sd);
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

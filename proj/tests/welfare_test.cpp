// Copyright 2026 The hetnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hetnet/welfare.hpp"
#include "test_util.hpp"

namespace hetnet {
namespace {

using testing::region_params;
using testing::regulator_params;

RegulatorScenario small_b() { return {1.0, 1.2, 6.0, regulator_params()}; }
RegulatorScenario large_b() { return {1.0, 1.2, 10.0, regulator_params()}; }

TEST(SwUnconstrainedOpt, FrozenGridValue) {
  // 1e5-point grid maximum from tests/oracle/derive_frozen_values.py.
  EXPECT_NEAR(sw_unconstrained_opt(regulator_params(), 8.2), 640.312423743285, 1e-9);
}

TEST(SwUnconstrainedOpt, EqualsMonopolyWelfareOnPooledBandwidth) {
  const MarketParams p = region_params();
  EXPECT_DOUBLE_EQ(sw_unconstrained_opt(p, 3.0), optimal_split(p, 3.0, 0.0).welfare);
}

TEST(SwConstrainedOpt, BelowThresholdMatchesUnconstrained) {
  const RegulatorScenario s = small_b();
  for (double b1n : {0.0, 2.0, 6.0}) {
    EXPECT_DOUBLE_EQ(sw_constrained_opt(s, b1n, 6.0 - b1n), sw_unconstrained_opt(s.params, s.pooled()));
  }
}

TEST(SwConstrainedOpt, AboveThresholdStrictlyBelow) {
  const RegulatorScenario s = large_b();
  EXPECT_LT(sw_constrained_opt(s, 5.0, 5.0), sw_unconstrained_opt(s.params, s.pooled()));
}

TEST(SwConstrainedOpt, AllNewBandwidthHitsTheBound) {
  const RegulatorScenario s{0.0, 0.0, 3.0, region_params()};
  const double ratio = sw_constrained_opt(s, 2.0, 1.0) / sw_unconstrained_opt(s.params, 3.0);
  EXPECT_NEAR(ratio, sw_bound_ratio(s.params), 1e-12);
}

TEST(Threshold, RegulatorParameters) { EXPECT_DOUBLE_EQ(threshold(small_b()), 8.8); }

TEST(Threshold, LinearInFixedToMobileRatio) {
  RegulatorScenario s = small_b();
  const double base = threshold(s);
  s.params.n_fixed *= 3.0;
  EXPECT_NEAR(threshold(s), 3.0 * base, 1e-12);
}

TEST(Threshold, ApproachesInitialBandwidthAsGainVanishes) {
  RegulatorScenario s = small_b();
  s.params.lambda_s = 1.0 + 1e-12;
  EXPECT_NEAR(threshold(s), 2.2, 1e-9);
}

TEST(EqualityInterval, SmallNewBand) {
  const auto iv = equality_interval(small_b());
  ASSERT_TRUE(iv);
  EXPECT_NEAR(iv->lo, 1.2, 1e-12);
  EXPECT_NEAR(iv->hi, 4.0, 1e-12);
}

TEST(EqualityInterval, ZeroWidthAtThreshold) {
  RegulatorScenario s = small_b();
  s.b_new = threshold(s);
  const auto iv = equality_interval(s);
  ASSERT_TRUE(iv);
  EXPECT_NEAR(iv->width(), 0.0, 1e-12);
}

TEST(EqualityInterval, EmptyAboveThreshold) { EXPECT_FALSE(equality_interval(large_b())); }

TEST(SwBoundRatio, Values) {
  EXPECT_NEAR(sw_bound_ratio(region_params()), std::sqrt(2.0 / 3.0), 1e-15);
  MarketParams p = region_params();
  p.lambda_s = 1e6;
  EXPECT_GT(sw_bound_ratio(p), 0.9999);
}

TEST(SwBoundRatio, TightWhenEverythingIsSmallCell) {
  const MarketParams p = region_params();
  const EquilibriumResult r = solve_ne(p, 2.0, 1.0, {2.0, 1.0});
  EXPECT_NEAR(r.welfare / sw_unconstrained_opt(p, 3.0), sw_bound_ratio(p), 1e-9);
  // Mobile users get nothing.
  EXPECT_NEAR(r.welfare, p.n_fixed * utility(p.lambda_s * 3.0 * p.r0 / p.n_fixed, p.alpha), 1e-9);
}

TEST(SwBoundRatio, HoldsOnRandomFloorGrids) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> bw(0.3, 5.0);
  for (int draw = 0; draw < 100; ++draw) {
    const MarketParams p = testing::random_params(rng);
    const double b1 = bw(rng), b2 = bw(rng);
    const double bound = sw_bound_ratio(p);
    const double best = sw_unconstrained_opt(p, b1 + b2);
    for (double f1 : numeric::linspace(0.0, b1, 6)) {
      for (double f2 : numeric::linspace(0.0, b2, 6)) {
        const EquilibriumResult r = solve_ne(p, b1, b2, {f1, f2});
        EXPECT_GE(r.welfare / best, bound - 1e-9);
      }
    }
  }
}

TEST(LossCondition, Examples) {
  const MarketParams p = region_params();
  EXPECT_FALSE(loss_condition(p, {2.0, 1.0}, {4.0 / 3.0, 2.0 / 3.0}));
  EXPECT_TRUE(loss_condition(p, {2.0, 1.0}, {2.0, 1.0}));
}

TEST(LossCondition, AgreesWithEquilibriumWelfare) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> bw(0.3, 5.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const MarketParams p = testing::random_params(rng);
    const double b1 = bw(rng), b2 = bw(rng);
    const ConstraintPair floors{frac(rng) * b1, frac(rng) * b2};
    const double sum_floor = floors.floor1 + floors.floor2;
    const double margin = std::abs(p.small_cell_share() * (b1 + b2) - sum_floor);
    if (margin < 1e-3) continue;  // loss is second order right at the boundary
    const bool loss = loss_condition(p, {b1, b2}, floors);
    const double ne = solve_ne(p, b1, b2, floors).welfare;
    const double best = sw_unconstrained_opt(p, b1 + b2);
    // A loss can also arise from a single violated floor even when the sum
    // constraint is slack, so only one direction is an equivalence.
    if (loss) EXPECT_LT(ne, best - 1e-9 * best) << k;
  }
}

TEST(LossCondition, SlackSumCanStillLoseThroughOneFloor) {
  // Winner-take-all for SP 2: floors (0, 6) on totals (1, 7.2). The pooled
  // small-cell share 0.8 * 8.2 = 6.56 covers the floors, yet SP 2's floor
  // alone exceeds its unconstrained value 5.76.
  const MarketParams p = regulator_params();
  EXPECT_FALSE(loss_condition(p, {1.0, 7.2}, {0.0, 6.0}));
  const double ne = solve_ne(p, 1.0, 7.2, {0.0, 6.0}).welfare;
  EXPECT_LT(ne, sw_unconstrained_opt(p, 8.2) * (1.0 - 1e-4));
}

TEST(Sweep, SmallNewBandMatchesBenchmarkOnEqualityInterval) {
  const RegulatorScenario s = small_b();
  const auto rows = sweep(s, 201);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.front().b1_new, 0.0);
  EXPECT_EQ(rows.back().b1_new, 6.0);
  for (const SweepRow& r : rows) {
    ASSERT_TRUE(r.diagnostic.empty()) << r.diagnostic;
    EXPECT_NEAR(r.b1_new + r.b2_new, 6.0, 1e-12);
    const bool inside = r.b1_new >= 1.2 - 1e-9 && r.b1_new <= 4.0 + 1e-9;
    if (inside) {
      EXPECT_NEAR(r.sw_w_ne, r.sw_wo_star, 1e-6 * r.sw_wo_star) << r.b1_new;
      EXPECT_EQ(*r.region, Region::A);
    } else {
      EXPECT_LT(r.sw_w_ne, r.sw_wo_star) << r.b1_new;
    }
    EXPECT_LE(r.sw_w_ne, r.sw_w_star + 1e-9);
    EXPECT_LE(r.sw_w_star, r.sw_wo_star + 1e-9);
  }
  // Endpoint values frozen from tests/oracle/derive_frozen_values.py.
  EXPECT_NEAR(rows.front().sw_w_ne, 640.1713045766, 1e-8);
  EXPECT_NEAR(rows.back().sw_w_ne, 639.8750556866, 1e-8);
}

TEST(Sweep, LargeNewBandAlwaysLoses) {
  const auto rows = sweep(large_b(), 101);
  for (const SweepRow& r : rows) {
    EXPECT_LT(r.sw_w_ne, r.sw_wo_star);
    EXPECT_LT(r.sw_w_star, r.sw_wo_star);
    EXPECT_LE(r.sw_w_ne, r.sw_w_star + 1e-9);
  }
}

TEST(Sweep, BenchmarkColumnsAreFlat) {
  const auto rows = sweep(large_b(), 51);
  auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                      [](const SweepRow& a, const SweepRow& b) { return a.sw_w_star < b.sw_w_star; });
  EXPECT_LT(hi->sw_w_star - lo->sw_w_star, 1e-9 * hi->sw_w_star);
  auto [lo2, hi2] = std::minmax_element(
      rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.sw_wo_star < b.sw_wo_star; });
  EXPECT_LT(hi2->sw_wo_star - lo2->sw_wo_star, 1e-9 * hi2->sw_wo_star);
}

TEST(Sweep, RejectsDegenerateGrid) {
  EXPECT_THROW(sweep(small_b(), 1), Error);
  RegulatorScenario s = small_b();
  s.b_new = 0.0;
  EXPECT_THROW(sweep(s, 10), Error);
}

}  // namespace
}  // namespace hetnet

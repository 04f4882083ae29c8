// Copyright 2026 The ldpkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpkit/free_energy.h"

#include <gtest/gtest.h>

#include <cmath>

#include "ldpkit/errors.h"
#include "test_util.h"

namespace ldpkit {
namespace {

using testing::window;

TEST(LambdaOf, CoinSlopeOne) {
  const auto e = lambda_of(coin_example_net(), TiltFunction::Linear(1.0),
                           window(1000, 10000), 1e-3);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value().value(), 1.0, 1e-3);
  EXPECT_LE(e.liminf_est, e.limsup_est);
  EXPECT_EQ(e.divergence, Divergence::kNone);
}

TEST(LambdaOf, ZeroTiltOnProbabilityNetIsExactlyZero) {
  for (const auto& net :
       {coin_example_net(), demzei_example_net(),
        iid_mean_example_net(testing::bernoulli_half(), 10000)}) {
    const auto e = lambda_of(net, TiltFunction::Linear(0.0),
                             window(100, 10000), 1e-3);
    EXPECT_TRUE(e.converged);
    EXPECT_EQ(e.liminf_est, ExtReal(0.0));
    EXPECT_EQ(e.limsup_est, ExtReal(0.0));
  }
}

TEST(LambdaOf, DemZeiSteepSlopeDiverges) {
  const auto e = lambda_of(demzei_example_net(), TiltFunction::Linear(2.0),
                           window(100, 1000000), 1e-3);
  EXPECT_EQ(e.limsup_est, kPosInf);
  EXPECT_EQ(e.divergence, Divergence::kPosInf);
  EXPECT_TRUE(e.converged);
}

TEST(LambdaOf, EscapingMassDivergesToNegInf) {
  // mu_k = delta_k: t log e^{-k/t} = -k with h(x) = -x.
  const auto e = lambda_of(escaping_dirac_net(), TiltFunction::Linear(-1.0),
                           window(100, 100000), 1e-3);
  EXPECT_EQ(e.limsup_est, kNegInf);
  EXPECT_EQ(e.divergence, Divergence::kNegInf);
}

TEST(LambdaOf, SlowConvergenceIsFlagged) {
  // t log 2 spread over the tail decade [1e1, 1e2] exceeds 1e-9.
  const auto e = lambda_of(coin_example_net(), TiltFunction::Linear(1.0),
                           window(10, 100), 1e-9);
  EXPECT_FALSE(e.converged);
  EXPECT_GT(e.spread, 1e-9);
}

TEST(LGrid, CoinIsAbsoluteValue) {
  const auto L = L_grid(coin_example_net(), {-3.0, 3.0}, 61,
                        window(100, 1000000), 1e-3);
  ASSERT_EQ(L.values.size(), 61u);
  EXPECT_TRUE(L.all_converged());
  for (std::size_t i = 0; i < L.values.size(); ++i) {
    EXPECT_NEAR(L.values.value(i).value(), std::fabs(L.values.x(i)), 1e-3);
  }
}

TEST(LGrid, DemZeiIsZeroOnOpenUnitInterval) {
  const auto L = L_grid(demzei_example_net(), {-1.0, 1.0}, 21,
                        window(100, 1000000), 1e-3);
  for (std::size_t i = 0; i < L.values.size(); ++i) {
    EXPECT_NEAR(L.values.value(i).value(), 0.0, 1e-3);
  }
}

TEST(LGrid, BernoulliAtZero) {
  const auto L = L_grid(iid_mean_example_net(testing::bernoulli_half(), 1000),
                        {-1.0, 1.0}, 3, window(100, 1000), 1e-3);
  EXPECT_EQ(L.values.value(1), ExtReal(0.0));
  // L(l) = log((1 + e^l) / 2) exactly at every n.
  EXPECT_NEAR(L.values.value(2).value(), std::log((1.0 + std::exp(0.5)) / 2.0),
              1e-12);
}

TEST(LGrid, ConvexOnConvergedEntries) {
  const WindowSamples s(iid_mean_example_net(testing::bernoulli_half(), 10000),
                        window(1000, 10000, 4, 1000));
  const auto L = L_grid(s, {-6.0, 6.0}, 59);
  const auto& v = L.values;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double d2 = v.value(i + 1).value() - 2 * v.value(i).value() +
                      v.value(i - 1).value();
    EXPECT_GE(d2, -1e-3);
  }
  const WindowSamples c(coin_example_net(), window(100, 100000));
  const auto Lc = L_grid(c, {-3.0, 3.0}, 29);
  for (std::size_t i = 1; i + 1 < Lc.values.size(); ++i) {
    const double d2 = Lc.values.value(i + 1).value() -
                      2 * Lc.values.value(i).value() +
                      Lc.values.value(i - 1).value();
    EXPECT_GE(d2, -1e-3);
  }
}

TEST(LambdaFamilyTable, CoinTwoSlopeIsMaxOfNegLambdaAndNu) {
  const WindowSamples s(coin_example_net(), window(100, 1000000));
  const auto fam = two_slope_family({-4.0, 4.0}, {-4.0, 4.0}, 17);
  const auto table = lambda_family_table(s, fam);
  ASSERT_EQ(table.size(), fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& h = fam.members()[i];
    EXPECT_NEAR(table[i].value().value(),
                std::max(-h.left_slope(), h.right_slope()), 1e-3);
  }
}

TEST(LambdaFamilyTable, DemZeiQnVanish) {
  const WindowSamples s(demzei_example_net(), window(100, 1000000));
  const auto table = lambda_family_table(s, qn_family(10));
  for (const auto& e : table) {
    EXPECT_TRUE(e.converged);
    EXPECT_NEAR(e.value().value(), 0.0, 1e-3);
  }
}

TEST(LambdaFamilyTable, ZeroFamily) {
  const WindowSamples s(coin_example_net(), window(100, 10000));
  const auto table =
      lambda_family_table(s, TiltFamily({TiltFunction::Linear(0.0)}));
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table[0].value(), ExtReal(0.0));
}

TEST(FreeEnergyProperties, MonotoneInTilt) {
  const WindowSamples s(demzei_example_net(), window(100, 100000));
  // Q_1 <= Q_2 <= ... pointwise, and h_{0.5} <= |x|.
  const auto table = lambda_family_table(s, qn_family(6));
  for (std::size_t i = 1; i < table.size(); ++i) {
    EXPECT_LE(table[i - 1].limsup_est, table[i].limsup_est);
  }
  EXPECT_LE(lambda_of(s, TiltFunction::Linear(0.5)).limsup_est,
            lambda_of(s, find_custom_tilt("abs")).limsup_est);
}

TEST(FreeEnergyProperties, TwoPathsAgreeOnDiagonal) {
  const WindowSamples s(coin_example_net(), window(100, 100000));
  const auto L = L_grid(s, {-2.0, 2.0}, 7);
  std::vector<TiltFunction> diag;
  for (double l : L.values.xs()) diag.push_back(TiltFunction::TwoSlope(l, l));
  const auto table = lambda_family_table(s, TiltFamily(diag));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    EXPECT_NEAR(table[i].value().value(), L.values.value(i).value(), 1e-9);
  }
}

TEST(FreeEnergyProperties, ThreadCountDoesNotChangeResults) {
  const WindowSamples s(coin_example_net(), window(100, 100000));
  LimitOptions one;
  LimitOptions four;
  four.threads = 4;
  const auto a = L_grid(s, {-3.0, 3.0}, 31, one);
  const auto b = L_grid(s, {-3.0, 3.0}, 31, four);
  EXPECT_EQ(a.values.values(), b.values.values());
}

}  // namespace
}  // namespace ldpkit

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

#include "ldpkit/tilt.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ldpkit/errors.h"

namespace ldpkit {
namespace {

TEST(Tilt, LinearAndTwoSlopeEvaluation) {
  EXPECT_EQ(TiltFunction::Linear(2.0)(-1.5), ExtReal(-3.0));
  const auto h = TiltFunction::TwoSlope(-1.0, 2.0);
  EXPECT_EQ(h(-3.0), ExtReal(3.0));
  EXPECT_EQ(h(2.0), ExtReal(4.0));
  EXPECT_EQ(h(0.0), ExtReal(0.0));
}

TEST(Tilt, QnValues) {
  EXPECT_EQ(TiltFunction::Qn(2)(0.0), ExtReal(0.0));
  EXPECT_NEAR(TiltFunction::Qn(1)(1.0).value(), std::exp(-1.0) - 1.0, 1e-15);
  EXPECT_NEAR(TiltFunction::Qn(1)(1.0).value(), -0.63212, 1e-5);
  EXPECT_NEAR(TiltFunction::Qn(3)(-1.0).value(), 3.0 * std::exp(-1.0) + 1.0,
              1e-15);
  EXPECT_NEAR(TiltFunction::Qn(3)(-1.0).value(), 2.10364, 1e-5);
  EXPECT_THROW(TiltFunction::Qn(0), Error);
}

TEST(Tilt, ZeroDetection) {
  EXPECT_TRUE(TiltFunction::Linear(0.0).is_zero());
  EXPECT_TRUE(TiltFunction::TwoSlope(0.0, 0.0).is_zero());
  EXPECT_FALSE(TiltFunction::TwoSlope(0.0, 1.0).is_zero());
  EXPECT_FALSE(find_custom_tilt("zero").is_zero());
}

TEST(Tilt, CustomRegistry) {
  EXPECT_EQ(find_custom_tilt("abs")(-2.0), ExtReal(2.0));
  EXPECT_EQ(find_custom_tilt("neg_abs")(-2.0), ExtReal(-2.0));
  EXPECT_EQ(find_custom_tilt("zero")(5.0), ExtReal(0.0));
  EXPECT_NEAR(find_custom_tilt("Q4")(1.0).value(),
              TiltFunction::Qn(4)(1.0).value(), 0.0);
  EXPECT_THROW(find_custom_tilt("Q0"), Error);
  EXPECT_THROW(find_custom_tilt("Qx"), Error);
  EXPECT_THROW(find_custom_tilt("nope"), Error);
}

TEST(LinearFamily, InteriorSpacing) {
  const auto s = linear_family_slopes({-1.0, 1.0}, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0], -0.5);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
  EXPECT_DOUBLE_EQ(s[2], 0.5);
  const auto t = linear_family_slopes({0.0, 1.0}, 2);
  EXPECT_DOUBLE_EQ(t[0], 1.0 / 3);
  EXPECT_DOUBLE_EQ(t[1], 2.0 / 3);
  for (const auto& h : linear_family({-3.0, 3.0}, 61).members()) {
    EXPECT_EQ(h.kind(), TiltFunction::Kind::kLinear);
    EXPECT_GT(h.left_slope(), -3.0);
    EXPECT_LT(h.left_slope(), 3.0);
  }
  EXPECT_THROW(linear_family({1.0, -1.0}, 3), Error);
  EXPECT_THROW(linear_family({-1.0, 1.0}, 0), Error);
}

TEST(TwoSlopeFamily, GridAndDiagonal) {
  const auto f = two_slope_family({-2.0, 2.0}, {-2.0, 2.0}, 5);
  EXPECT_EQ(f.size(), 25u);
  bool found = false;
  for (const auto& h : f.members()) {
    if (h.left_slope() == 1.0 && h.right_slope() == 1.0) {
      found = true;
      for (double x : {-3.0, -0.2, 0.0, 0.7, 5.0}) {
        EXPECT_EQ(h(x), TiltFunction::Linear(1.0)(x));
      }
    }
  }
  EXPECT_TRUE(found);
  // lambda outer, nu inner.
  EXPECT_EQ(f.members()[1].left_slope(), -2.0);
  EXPECT_EQ(f.members()[1].right_slope(), -1.0);
}

TEST(TiltProperties, TwoSlopeContinuousAtZero) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double l = u(rng);
    const double n = u(rng);
    const auto h = TiltFunction::TwoSlope(l, n);
    for (double d = 1.0; d > 1e-12; d /= 10.0) {
      EXPECT_LE(std::fabs(h(-d).value() - h(d).value()),
                (std::fabs(l) + std::fabs(n)) * d + 1e-15);
    }
  }
}

TEST(TiltProperties, LinearEqualsDiagonalTwoSlope) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double l = u(rng);
    for (int j = 0; j < 20; ++j) {
      const double x = u(rng);
      EXPECT_EQ(TiltFunction::Linear(l)(x), TiltFunction::TwoSlope(l, l)(x));
    }
  }
}

TEST(TiltProperties, BuiltInFamiliesBoundedAboveOnCompacts) {
  TiltFamily all = linear_family({-8.0, 8.0}, 33);
  all.append(two_slope_family({-8.0, 8.0}, {-8.0, 8.0}, 9));
  all.append(qn_family(20));
  for (const auto& h : all.members()) {
    double sup = -1e300;
    for (int i = 0; i <= 400; ++i) {
      const ExtReal v = h(-5.0 + 0.025 * i);
      ASSERT_FALSE(v.is_pos_inf());
      sup = std::max(sup, v.value());
    }
    EXPECT_LT(sup, 1e3);
  }
}

TEST(FamilySpec, Doubling) {
  FamilySpec lin;
  lin.kind = FamilySpec::Kind::kLinear;
  lin.g = {-3.0, 3.0};
  lin.resolution = 61;
  EXPECT_EQ(lin.doubled().resolution, 61);  // genuine interval stays put
  lin.truncates_line = true;
  const FamilySpec d = lin.doubled();
  EXPECT_EQ(d.g.lo, -6.0);
  EXPECT_EQ(d.resolution, 123);
  const auto base = linear_family_slopes(lin.g, lin.resolution);
  const auto wide = linear_family_slopes(d.g, d.resolution);
  EXPECT_NEAR(base[1] - base[0], wide[1] - wide[0], 1e-12);
  // Every base slope is a doubled slope.
  for (double s : base) {
    EXPECT_TRUE(std::any_of(wide.begin(), wide.end(),
                            [&](double w) { return std::fabs(w - s) < 1e-12; }));
  }

  FamilySpec ts;
  ts.kind = FamilySpec::Kind::kTwoSlope;
  ts.lambda_range = {-8.0, 8.0};
  ts.nu_range = {-8.0, 8.0};
  ts.resolution = 129;
  EXPECT_EQ(ts.doubled().resolution, 257);
  EXPECT_EQ(ts.doubled().nu_range.hi, 16.0);

  FamilySpec q;
  q.kind = FamilySpec::Kind::kQn;
  q.n_max = 10;
  EXPECT_EQ(q.doubled().n_max, 20);
  EXPECT_EQ(TiltFamily::Expand(q.doubled()).size(), 20u);
}

}  // namespace
}  // namespace ldpkit

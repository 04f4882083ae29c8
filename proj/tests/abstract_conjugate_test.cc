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

#include "ldpkit/abstract_conjugate.h"

#include <gtest/gtest.h>

#include <cmath>

#include "ldpkit/convex.h"
#include "ldpkit/errors.h"
#include "test_util.h"

namespace ldpkit {
namespace {

using testing::window;

const WindowSamples& coin_samples() {
  static const WindowSamples samples(coin_example_net(), window(100, 10000));
  return samples;
}

LimitEstimate fixed_estimate(ExtReal v) {
  LimitEstimate e;
  e.liminf_est = v;
  e.limsup_est = v;
  e.converged = true;
  return e;
}

FamilyEvaluation manual(std::vector<TiltFunction> members,
                        std::vector<ExtReal> lambdas) {
  FamilyEvaluation fe;
  fe.family = TiltFamily(std::move(members));
  for (auto v : lambdas) fe.lambdas.push_back(fixed_estimate(v));
  fe.all_exist = true;
  return fe;
}

TEST(AbstractLf, LinearFamilyMatchesRestrictionConjugate) {
  const auto fe = evaluate_family(coin_samples(), linear_family({-3, 3}, 59));
  ASSERT_TRUE(fe.all_exist);
  const auto xs = uniform_grid(-2.0, 2.0, 81);
  const auto a = abstract_lf(fe, xs);
  const auto b = linear_restriction_conjugate(fe, xs);
  EXPECT_EQ(a.label(), "Lambda|S*");
  EXPECT_EQ(b.label(), "L|G*");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(a.value(i).value(), b.value(i).value(), 1e-12) << xs[i];
  }
  // Coin: L = |l| up to the window's finite-t offset, so L|G* vanishes on
  // [-1, 1].
  EXPECT_NEAR(a.value(a.find(0.5)).value(), 0.0, 2e-3);
  EXPECT_NEAR(a.value(a.find(1.5)).value(), 0.5 * 2.9, 2e-3);
}

TEST(AbstractLf, TwoSlopeFamilyOnCoin) {
  const auto fe =
      evaluate_family(coin_samples(), two_slope_family({-2, 2}, {-2, 2}, 9));
  ASSERT_TRUE(fe.all_exist);
  for (std::size_t j = 0; j < fe.family.size(); ++j) {
    const auto& h = fe.family.members()[j];
    EXPECT_NEAR(fe.lambdas[j].value().value(),
                std::max(-h.left_slope(), h.right_slope()), 2e-3);
  }
  const auto xs = uniform_grid(-1.0, 1.0, 5);
  const auto g = abstract_lf(fe, xs);
  EXPECT_NEAR(g.value(0).value(), 0.0, 2e-3);
  EXPECT_NEAR(g.value(4).value(), 0.0, 2e-3);
  // At 0 the sup grows with the parameter range: l = 2, n = -2 gives 2.
  EXPECT_NEAR(g.value(2).value(), 2.0, 2e-3);
}

TEST(AbstractLf, ExtendedArithmetic) {
  const auto xs = uniform_grid(-1.0, 1.0, 3);
  // Members with Lambda = +inf drop out.
  const auto drop =
      abstract_lf(manual({TiltFunction::Linear(1), TiltFunction::Linear(2)},
                         {ExtReal(0.5), kPosInf}),
                  xs);
  EXPECT_DOUBLE_EQ(drop.value(0).value(), -1.5);
  EXPECT_DOUBLE_EQ(drop.value(2).value(), 0.5);
  // Lambda = -inf gives +inf.
  const auto up = abstract_lf(manual({TiltFunction::Linear(1)}, {kNegInf}), xs);
  for (const auto& v : up.values()) EXPECT_EQ(v, kPosInf);
  // Unless h(x) = -inf.
  const auto neg = TiltFunction::Custom("neg-off-zero", [](double x) {
    return x == 0.0 ? ExtReal(0.0) : kNegInf;
  });
  const auto mixed = abstract_lf(manual({neg}, {kNegInf}), xs);
  EXPECT_EQ(mixed.value(0), kNegInf);
  EXPECT_EQ(mixed.value(1), kPosInf);
  // Empty family.
  const auto empty = abstract_lf(manual({}, {}), xs);
  for (const auto& v : empty.values()) EXPECT_EQ(v, kNegInf);
}

TEST(AbstractLf, ThrowsWhenSomeLimitFailsToConverge) {
  auto fe = manual({TiltFunction::Linear(1)}, {ExtReal(1.0)});
  fe.all_exist = false;
  EXPECT_THROW(abstract_lf(fe, {0.0, 1.0}), Error);
  EXPECT_THROW(linear_restriction_conjugate(fe, {0.0, 1.0}), Error);
}

TEST(LinearFamilyValues, RejectsNonLinearMembers) {
  const auto fe = manual({TiltFunction::TwoSlope(1, 2), TiltFunction::Linear(1)},
                         {ExtReal(1), ExtReal(1)});
  EXPECT_THROW(linear_family_values(fe), Error);
}

TEST(AbstractLf, MonotoneInFamily) {
  const auto& s = coin_samples();
  const auto small = evaluate_family(s, two_slope_family({-1, 1}, {-1, 1}, 5));
  auto big_family = two_slope_family({-1, 1}, {-1, 1}, 5);
  big_family.append(two_slope_family({-3, 3}, {-3, 3}, 7));
  const auto big = evaluate_family(s, big_family);
  const auto xs = uniform_grid(-2.0, 2.0, 41);
  const auto a = abstract_lf(small, xs);
  const auto b = abstract_lf(big, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LE(a.value(i), b.value(i));
}

TEST(AbstractLf, ThreadCountDoesNotChangeResult) {
  const auto fe =
      evaluate_family(coin_samples(), two_slope_family({-2, 2}, {-2, 2}, 9));
  const auto xs = uniform_grid(-2.0, 2.0, 101);
  const auto a = abstract_lf(fe, xs, 1);
  const auto b = abstract_lf(fe, xs, 4);
  EXPECT_EQ(a.values(), b.values());
}

TEST(StabilizeUnderDoubling, MarksGrowth) {
  const std::vector<double> xs = {-1, 0, 1, 2};
  const GridFunction base(xs, {ExtReal(0), ExtReal(2), ExtReal(0), kPosInf});
  const GridFunction doubled(xs,
                             {ExtReal(0), ExtReal(4), ExtReal(1e-4), kPosInf});
  const auto s = stabilize_under_doubling(base, doubled, 1e-3);
  EXPECT_EQ(s.value.value(0), ExtReal(0));
  EXPECT_EQ(s.value.value(1), kPosInf);
  EXPECT_EQ(s.value.value(2), ExtReal(0));
  EXPECT_EQ(s.value.value(3), kPosInf);
  EXPECT_EQ(s.unstable, (std::vector<bool>{false, true, false, false}));
  EXPECT_THROW(stabilize_under_doubling(base, GridFunction({0, 1}, {0, 0}), 1),
               Error);
}

TEST(StabilizeUnderDoubling, TwoSlopeCoinIsFiniteOnlyAtPlusMinusOne) {
  const auto& s = coin_samples();
  const auto spec = [] {
    FamilySpec f;
    f.kind = FamilySpec::Kind::kTwoSlope;
    f.lambda_range = {-4, 4};
    f.nu_range = {-4, 4};
    f.resolution = 17;
    return f;
  }();
  const auto xs = uniform_grid(-2.0, 2.0, 41);
  const auto base = abstract_lf(evaluate_family(s, TiltFamily::Expand(spec)), xs);
  const auto doubled =
      abstract_lf(evaluate_family(s, TiltFamily::Expand(spec.doubled())), xs);
  const auto st = stabilize_under_doubling(base, doubled, 1e-3);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::fabs(std::fabs(xs[i]) - 1.0) < 1e-12) {
      EXPECT_NEAR(st.value.value(i).value(), 0.0, 2e-3) << xs[i];
    } else {
      EXPECT_EQ(st.value.value(i), kPosInf) << xs[i];
    }
  }
}

}  // namespace
}  // namespace ldpkit

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

#include "ldpkit/convex.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ldpkit/errors.h"
#include "test_util.h"

namespace ldpkit {
namespace {

using testing::from_fn;
using testing::random_convex;

double absval(double x) { return std::fabs(x); }
double half_square(double x) { return 0.5 * x * x; }
double zero(double) { return 0.0; }

GridFunction zero_on_unit() {
  // 0 on [-1, 1], +inf on the rest of [-2, 2].
  const auto xs = uniform_grid(-2.0, 2.0, 41);
  std::vector<ExtReal> v;
  for (double x : xs) v.push_back(std::fabs(x) <= 1.0 + 1e-12 ? ExtReal(0.0) : kPosInf);
  return GridFunction(xs, v);
}

TEST(LfTransform, AbsoluteValue) {
  const auto f = from_fn(uniform_grid(-3.0, 3.0, 61), absval);
  const auto dual = uniform_grid(-2.0, 2.0, 81);
  const auto g = lf_transform(f, dual);
  const auto beyond = beyond_slope_range(f, dual);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const double x = dual[i];
    if (std::fabs(x) <= 1.0 + 1e-12) {
      EXPECT_NEAR(g.value(i).value(), 0.0, 1e-12) << x;
      EXPECT_FALSE(beyond[i]) << x;
    } else {
      // Exact conjugate of |l| restricted to [-3, 3].
      EXPECT_NEAR(g.value(i).value(), 3.0 * (std::fabs(x) - 1.0), 1e-12);
      EXPECT_TRUE(beyond[i]) << x;
    }
  }
}

TEST(LfTransform, HalfSquareIsSelfConjugate) {
  const auto f = from_fn(uniform_grid(-5.0, 5.0, 1001), half_square);
  const auto dual = uniform_grid(-4.0, 4.0, 161);
  const auto g = lf_transform(f, dual);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    // Sup over grid points misses the true maximizer by at most h/2.
    EXPECT_NEAR(g.value(i).value(), 0.5 * dual[i] * dual[i], 0.01 * 0.01 / 8 + 1e-12);
  }
}

TEST(BruteForceConjugate, AgreesOnExamples) {
  const auto dual = uniform_grid(-2.0, 2.0, 81);
  for (const auto& f : {from_fn(uniform_grid(-3.0, 3.0, 61), absval),
                        from_fn(uniform_grid(-5.0, 5.0, 1001), half_square),
                        zero_on_unit()}) {
    const auto a = lf_transform(f, dual);
    const auto b = brute_force_conjugate(f, dual);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      EXPECT_NEAR(a.value(i).value(), b.value(i).value(), 1e-12);
    }
  }
}

TEST(BruteForceConjugate, SingleFinitePointIsLinear) {
  std::vector<ExtReal> v(5, kPosInf);
  v[3] = ExtReal(0.25);
  const GridFunction f(uniform_grid(-1.0, 1.0, 5), v);
  const auto dual = uniform_grid(-3.0, 3.0, 13);
  const auto a = brute_force_conjugate(f, dual);
  const auto b = lf_transform(f, dual);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    EXPECT_DOUBLE_EQ(a.value(i).value(), 0.5 * dual[i] - 0.25);
    EXPECT_DOUBLE_EQ(b.value(i).value(), 0.5 * dual[i] - 0.25);
  }
}

TEST(BruteForceConjugate, ZeroOnUnitIntervalGivesAbs) {
  const auto f = from_fn(uniform_grid(-1.0, 1.0, 21), zero);
  const auto dual = uniform_grid(-2.0, 2.0, 41);
  const auto a = brute_force_conjugate(f, dual);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    EXPECT_NEAR(a.value(i).value(), std::fabs(dual[i]), 1e-12);
  }
}

TEST(LfTransform, RejectsBadInput) {
  const GridFunction all_inf(uniform_grid(0, 1, 3), {kPosInf, kPosInf, kPosInf});
  EXPECT_THROW(lf_transform(all_inf, {0.0, 1.0}), Error);
  const auto f = from_fn(uniform_grid(-1, 1, 5), absval);
  EXPECT_THROW(lf_transform(f, {1.0, 0.0}), Error);
}

TEST(ConvexLscHull, Examples) {
  const auto f = from_fn(uniform_grid(-2.0, 2.0, 41), half_square);
  const auto h = convex_lsc_hull(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(h.value(i).value(), f.value(i).value(), 1e-12);
  }
  // min of V-shapes at -1 and 1 on five points.
  const GridFunction w(uniform_grid(-2.0, 2.0, 5),
                       {ExtReal(1), ExtReal(0), ExtReal(1), ExtReal(0), ExtReal(1)});
  const auto hw = convex_lsc_hull(w);
  const std::vector<double> expected = {1, 0, 0, 0, 1};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(hw.value(i).value(), expected[i], 1e-15);
  }
}

TEST(ConvexLscHull, BelowInputAndInfOutsideSpan) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ExtReal> v;
    for (int i = 0; i < 60; ++i) {
      v.push_back(u(rng) > 0.8 ? kPosInf : ExtReal(u(rng)));
    }
    v[10] = ExtReal(0.0);
    const GridFunction f(uniform_grid(-1, 1, 60), v);
    const auto h = convex_lsc_hull(f);
    EXPECT_TRUE(is_convex_on_grid(h, 1e-9));
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LE(h.value(i), f.value(i));
  }
}

TEST(OneSidedDerivatives, Examples) {
  const auto f = from_fn(uniform_grid(-3.0, 3.0, 61), absval);
  const auto d = one_sided_derivatives(f, 30);
  EXPECT_NEAR(d.left.value(), -1.0, 1e-12);
  EXPECT_NEAR(d.right.value(), 1.0, 1e-12);
  const auto q = from_fn(uniform_grid(-1.0, 1.0, 201), half_square);
  const auto dq = one_sided_derivatives(q, 150);
  EXPECT_NEAR(dq.left.value(), q.x(150), 0.01);
  EXPECT_NEAR(dq.right.value(), q.x(150), 0.01);
  const auto z = zero_on_unit();
  const auto dz = one_sided_derivatives(z, 30);  // x = 1
  EXPECT_NEAR(dz.left.value(), 0.0, 1e-15);
  EXPECT_EQ(dz.right, kPosInf);
  EXPECT_THROW(one_sided_derivatives(z, 0), Error);
}

TEST(OneSidedDerivatives, MonotoneForConvex) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_convex(200, rng);
    std::optional<OneSidedDerivatives> prev;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!f.value(i).is_finite()) {
        prev.reset();
        continue;
      }
      const auto d = one_sided_derivatives(f, i);
      EXPECT_LE(d.left.value(), d.right.value() + 1e-9);
      if (prev) {
        EXPECT_LE(prev->right.value(), d.left.value() + 1e-9);
      }
      prev = d;
    }
  }
}

TEST(DerivativeRange, Examples) {
  const auto f = from_fn(uniform_grid(-3.0, 3.0, 61), absval);
  const auto r = derivative_range(f, {-2.0, 2.0});
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_NEAR(r.components[0].lo, -1.0, 1e-12);
  EXPECT_TRUE(r.components[0].is_point());
  EXPECT_NEAR(r.components[1].lo, 1.0, 1e-12);
  EXPECT_EQ(r.describe(), "{-1} U {1} (closure)");

  const auto z = from_fn(uniform_grid(-1.0, 1.0, 21), zero);
  const auto rz = derivative_range(z, {-1.0, 1.0});
  ASSERT_EQ(rz.components.size(), 1u);
  EXPECT_EQ(rz.components[0].lo, 0.0);
  EXPECT_EQ(rz.components[0].hi, 0.0);

  const auto q = from_fn(uniform_grid(-1.0, 1.0, 201), half_square);
  const auto rq = derivative_range(q, {-1.0, 1.0});
  ASSERT_EQ(rq.components.size(), 1u);
  EXPECT_NEAR(rq.components[0].lo, -1.0, 0.02);
  EXPECT_NEAR(rq.components[0].hi, 1.0, 0.02);
  EXPECT_EQ(rq.distance(0.3), 0.0);
  EXPECT_NEAR(rq.distance(2.0), 2.0 - rq.components[0].hi, 1e-15);

  EXPECT_THROW(derivative_range(q, {5.0, 6.0}), Error);
}

TEST(DerivativeRange, WithinSlopeBounds) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_convex(300, rng, false);
    const OpenInterval g{-0.5, 0.7};
    const auto r = derivative_range(f, g);
    double lo = 1e300;
    double hi = -1e300;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      if (f.x(i) <= g.lo || f.x(i + 1) >= g.hi) continue;
      const double s = (f.value(i + 1).value() - f.value(i).value()) /
                       (f.x(i + 1) - f.x(i));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    for (const auto& c : r.components) {
      EXPECT_GE(c.lo, lo - 1e-12);
      EXPECT_LE(c.hi, hi + 1e-12);
    }
  }
}

TEST(KinkMask, SmoothHasNoneAbsHasOne) {
  const auto xs = uniform_grid(-1.0, 1.0, 101);
  std::vector<double> sq, ab;
  for (double x : xs) {
    sq.push_back(std::exp(x) + x * x);
    ab.push_back(std::fabs(x - 0.2));
  }
  for (bool k : kink_mask(xs, sq)) EXPECT_FALSE(k);
  const auto m = kink_mask(xs, ab);
  EXPECT_EQ(std::count(m.begin(), m.end(), true), 1);
  EXPECT_TRUE(m[60]);
}

TEST(EffectiveDomain, Examples) {
  std::vector<ExtReal> v(41, kPosInf);
  v[10] = ExtReal(0.0);
  v[30] = ExtReal(0.0);
  const GridFunction iso(uniform_grid(-2.0, 2.0, 41), v);
  const auto d = effective_domain(iso);
  EXPECT_EQ(d.describe(), "{-1} U {1}");
  EXPECT_TRUE(interior_effective_domain(iso).empty());
  EXPECT_EQ(effective_domain(zero_on_unit()).describe(), "[-1,1]");
  EXPECT_EQ(interior_effective_domain(zero_on_unit()).describe(), "(-1,1)");
  EXPECT_EQ(effective_domain(from_fn(uniform_grid(-3, 3, 7), absval)).describe(),
            "[-3,3]");
}

TEST(EssentialSmoothness, Examples) {
  const auto abs_report =
      essential_smoothness_check(from_fn(uniform_grid(-3.0, 3.0, 61), absval));
  EXPECT_FALSE(abs_report.holds);
  EXPECT_FALSE(abs_report.differentiable);
  ASSERT_FALSE(abs_report.witnesses.empty());
  EXPECT_NEAR(abs_report.witnesses[0].x, 0.0, 1e-12);

  const auto sq = essential_smoothness_check(
      from_fn(uniform_grid(-3.0, 3.0, 301), half_square));
  EXPECT_TRUE(sq.holds);

  const auto flat = essential_smoothness_check(zero_on_unit());
  EXPECT_FALSE(flat.holds);
  EXPECT_FALSE(flat.steep_at_boundary);
  EXPECT_TRUE(flat.differentiable);

  // The same parabola read as +inf beyond the grid is not steep there.
  const auto bounded = essential_smoothness_check(from_fn(
      uniform_grid(-3.0, 3.0, 301), half_square, GridEdges::kDomainBoundary));
  EXPECT_FALSE(bounded.holds);
}

TEST(InfOverOpen, Examples) {
  const auto f = from_fn(uniform_grid(-3.0, 3.0, 61), absval);
  const auto g = RegionSet::Open(ExtReal(0.5), ExtReal(3.0));
  EXPECT_NEAR(inf_over_open(f, g).value(), 0.5, 1e-12);
  EXPECT_NEAR(inf_over_open_interior(f, g).value(), 0.5, 1e-12);

  // Dom = [-1, 1] with f(x) = 1 - x there; G = (1 - delta, 2).
  const auto xs = uniform_grid(-2.0, 2.0, 41);
  std::vector<ExtReal> v;
  for (double x : xs) v.push_back(std::fabs(x) <= 1 + 1e-12 ? ExtReal(1 - x) : kPosInf);
  const GridFunction h(xs, v);
  const auto near_one = RegionSet::Open(ExtReal(0.95), ExtReal(2.0));
  EXPECT_NEAR(inf_over_open(h, near_one).value(), 0.0, 1e-12);
  EXPECT_NEAR(inf_over_open_interior(h, near_one).value(), 0.0, 1e-12);
  EXPECT_TRUE(conv_lemma_check(h, near_one));

  const auto away = RegionSet::Open(ExtReal(1.5), ExtReal(1.9));
  EXPECT_EQ(inf_over_open(h, away), kPosInf);
  EXPECT_EQ(inf_over_open_interior(h, away), kPosInf);
}

TEST(ConvexProperties, ConjugateIsConvex) {
  std::mt19937_64 rng(24);
  const auto dual = uniform_grid(-10.0, 10.0, 400);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_convex(300, rng);
    EXPECT_TRUE(is_convex_on_grid(lf_transform(f, dual), 1e-9));
  }
}

TEST(ConvexProperties, OracleEquivalence) {
  std::mt19937_64 rng(25);
  const auto dual = uniform_grid(-12.0, 12.0, 500);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = random_convex(400, rng);
    const auto a = lf_transform(f, dual);
    const auto b = brute_force_conjugate(f, dual);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      ASSERT_NEAR(a.value(i).value(), b.value(i).value(), 1e-9);
    }
  }
}

TEST(ConvexProperties, OracleEquivalenceOnNonconvexInput) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto dual = uniform_grid(-5.0, 5.0, 300);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ExtReal> v;
    for (int i = 0; i < 150; ++i) v.push_back(u(rng) > 0.7 ? kPosInf : ExtReal(u(rng)));
    v[5] = ExtReal(0.0);
    const GridFunction f(uniform_grid(-2, 2, 150), v);
    const auto a = lf_transform(f, dual);
    const auto b = brute_force_conjugate(f, dual);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      ASSERT_NEAR(a.value(i).value(), b.value(i).value(), 1e-12);
    }
  }
}

TEST(ConvexProperties, OrderReversal) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto dual = uniform_grid(-8.0, 8.0, 200);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_convex(200, rng);
    std::vector<ExtReal> gv;
    for (const auto& v : f.values()) gv.push_back(v + ExtReal(u(rng)));
    const GridFunction g(f.xs(), gv);
    const auto fs = lf_transform(f, dual);
    const auto gs = lf_transform(g, dual);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      EXPECT_LE(gs.value(i).value(), fs.value(i).value() + 1e-12);
    }
  }
}

}  // namespace
}  // namespace ldpkit

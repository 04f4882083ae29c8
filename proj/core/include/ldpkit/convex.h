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

#ifndef LDPKIT_CONVEX_H_
#define LDPKIT_CONVEX_H_

#include <string>
#include <utility>
#include <vector>

#include "ldpkit/ext_real.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/measure.h"
#include "ldpkit/tilt.h"

namespace ldpkit {

// Legendre-Fenchel transform f*(x) = sup_l {l x - f(l)} of the piecewise
// linear extension of f (+inf off the grid), evaluated on dual_grid.
// Builds the lower convex hull of the finite points (monotone chain) and
// merges hull slopes against the sorted dual grid. Ties go to the smaller l.
GridFunction lf_transform(const GridFunction& f,
                          const std::vector<double>& dual_grid);

// O(n m) direct sup per dual point. Test oracle for lf_transform.
GridFunction brute_force_conjugate(const GridFunction& f,
                                   const std::vector<double>& dual_grid);

// For each dual point, whether it lies strictly outside the hull's slope
// range at a finite grid end, i.e. where the conjugate would grow without
// bound if the grid were extended along its last chords.
std::vector<bool> beyond_slope_range(const GridFunction& f,
                                     const std::vector<double>& dual_grid);

// Greatest convex minorant of f on its grid (+inf outside the hull of the
// finite points). Continuous on its domain, hence lower semicontinuous.
GridFunction convex_lsc_hull(const GridFunction& f);

struct OneSidedDerivatives {
  ExtReal left;
  ExtReal right;
};

// Chord slopes to the neighbouring grid points; -inf (+inf) on the left
// (right) when the neighbour is missing or +inf.
OneSidedDerivatives one_sided_derivatives(const GridFunction& f,
                                          std::size_t index);

struct SlopeComponent {
  double lo = 0.0;
  double hi = 0.0;
  bool is_point() const { return lo == hi; }
};

// Sorted disjoint closed intervals and points: the closure of the attained
// one-sided slopes of a convex grid function over an open interval.
struct DerivativeRange {
  std::vector<SlopeComponent> components;
  bool closure_used = true;

  bool empty() const { return components.empty(); }
  // Distance from s to the set (0 inside).
  double distance(double s) const;
  std::string describe() const;
};

struct KinkOptions {
  double relative_tol = 1e-6;
  double spike_ratio = 4.0;
};

// Slope jumps s_i - s_{i-1} at interior points of a run of finite values.
// A point is a kink when its jump exceeds relative_tol (1 + |s_{i-1}| +
// |s_i|) and exceeds spike_ratio times every jump two or three points away
// on each side where such jumps exist.
std::vector<bool> kink_mask(const std::vector<double>& xs,
                            const std::vector<double>& values,
                            const KinkOptions& options = {});

// Chord slopes between consecutive finite grid points inside the open
// interval g, grouped into maximal runs without a kink between them.
DerivativeRange derivative_range(const GridFunction& f, OpenInterval g,
                                 const KinkOptions& options = {});

// Maximal runs of finite values as closed intervals [x_a, x_b].
RegionSet effective_domain(const GridFunction& f);
// Open intervals (x_a, x_b) of the runs with at least two points.
RegionSet interior_effective_domain(const GridFunction& f);

struct EssentialSmoothnessOptions {
  KinkOptions kink;
  double divergence_threshold = 1e6;
};

struct SmoothnessWitness {
  double x = 0.0;
  std::string clause;
  std::string detail;
};

struct EssentialSmoothnessReport {
  bool holds = false;
  bool interior_nonempty = false;
  bool differentiable = false;
  bool steep_at_boundary = false;
  std::vector<SmoothnessWitness> witnesses;
};

// Checks: int Dom(f) nonempty; no kinks at interior grid points of Dom;
// |slope| >= divergence_threshold on the last cell before every boundary of
// Dom inside the grid (and at the grid ends when f.edges() is
// kDomainBoundary).
EssentialSmoothnessReport essential_smoothness_check(
    const GridFunction& f, const EssentialSmoothnessOptions& options = {});

// inf of the piecewise-linear extension of f over a union of open intervals.
ExtReal inf_over_open(const GridFunction& f, const RegionSet& g);
// inf over g intersected with int Dom(f).
ExtReal inf_over_open_interior(const GridFunction& f, const RegionSet& g);

// Both infima agree within tol (equal infinities agree).
bool conv_lemma_check(const GridFunction& f, const RegionSet& g,
                      double tol = 1e-9);

// Second differences >= -tol on every run of finite values.
bool is_convex_on_grid(const GridFunction& f, double tol = 1e-9);

}  // namespace ldpkit

#endif  // LDPKIT_CONVEX_H_

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

#ifndef LDPKIT_LDP_VERIFIER_H_
#define LDPKIT_LDP_VERIFIER_H_

#include <optional>
#include <string>
#include <vector>

#include "ldpkit/convex.h"
#include "ldpkit/ext_real.h"
#include "ldpkit/free_energy.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/measure.h"
#include "ldpkit/net.h"

namespace ldpkit {

// kLower estimates l0 (limsup of ball masses), kUpper estimates l1
// (liminf of ball masses).
enum class RateMode { kLower, kUpper };

// {2^-1, ..., 2^-count}.
std::vector<double> default_deltas(int count = 10);

// sup over delta of -log(est of mu^t(B(x, delta))), where est is the
// limsup (kLower) or liminf (kUpper) over the window's tail samples and
// B(x, delta) is the open ball. deltas must be positive and strictly
// decreasing.
ExtReal local_rate(const WindowSamples& samples, double x,
                   const std::vector<double>& deltas, RateMode mode);

struct RateFunctionEstimate {
  std::vector<double> grid;
  GridFunction l0;
  GridFunction l1;
  std::vector<double> deltas;
  WindowSpec window;
};

RateFunctionEstimate rate_grid(const WindowSamples& samples,
                               const std::vector<double>& grid,
                               const std::vector<double>& deltas,
                               unsigned threads = 1);

struct Witness {
  double x = 0.0;
  std::string detail;
};

struct ClaimCheck {
  std::string claim_id;
  bool holds = true;
  double max_violation = 0.0;
  // Claims allowed to fail by the theorems, reported for information.
  bool informational = false;
  std::vector<Witness> witnesses;
};

struct ConditionReport {
  std::string condition_id;
  bool hypothesis_holds = false;
  std::vector<Witness> witnesses;
  std::vector<ClaimCheck> conclusions_checked;
  std::vector<std::string> notes;

  // Hypothesis and every non-informational conclusion hold.
  bool holds() const;
};

struct VagueLdpResult {
  bool holds = false;
  GridFunction J;
  double max_gap = 0.0;
  std::vector<Witness> witnesses;
};

// Holds iff max |l0 - l1| <= tol over the grid (inf = inf allowed); J = l0.
VagueLdpResult vague_ldp_check(const RateFunctionEstimate& rfe, double tol);

struct TightnessRow {
  double eps = 0.0;
  std::optional<double> radius;
  // limsup estimate of mu^t(R \ [-R, R]) at the chosen (or last) radius.
  double limsup_mass = 0.0;
};

struct TightnessResult {
  bool holds = true;
  std::vector<TightnessRow> table;
};

// For each eps, the smallest R in the schedule with the limsup estimate of
// mu^t(complement of [-R, R]) below eps.
TightnessResult exponential_tightness_check(
    const WindowSamples& samples, const std::vector<double>& eps_list,
    const std::vector<double>& radius_schedule);

struct TaggedRegion {
  std::string name;
  RegionSet region;
  bool closed = false;
};

struct BoundRow {
  std::string name;
  bool closed = false;
  double measured = 0.0;  // limsup (closed) or liminf (open) of mu^t(Y)
  double capacity = 0.0;  // sup over grid points in Y of e^{-J}
  bool holds = true;
};

struct BoundsReport {
  bool holds = true;
  std::vector<BoundRow> rows;
};

// limsup mu^t(F) <= sup_F e^{-J} for closed F and sup_G e^{-J} <=
// liminf mu^t(G) for open G, each within tol.
BoundsReport ldp_bounds_check(const WindowSamples& samples,
                              const GridFunction& J,
                              const std::vector<TaggedRegion>& regions,
                              double tol);

struct VaradhanResult {
  bool holds = false;
  ExtReal lambda;        // Lambda(h)
  ExtReal sup_h_minus_l1;  // sup over the rate grid of h(x) - l1(x)
  double gap = 0.0;
};

// Lambda(h) = sup_x {h(x) - l1(x)} within tol. Throws if Lambda(h) did not
// converge.
VaradhanResult varadhan_identity_check(const LimitEstimate& lambda,
                                       const TiltFunction& h,
                                       const RateFunctionEstimate& rfe,
                                       double tol);
VaradhanResult varadhan_identity_check(const WindowSamples& samples,
                                       const TiltFunction& h,
                                       const RateFunctionEstimate& rfe,
                                       const LimitOptions& options);

struct SlopeBound {
  std::string side;  // "left" or "right"
  ExtReal slope;
  double snapped = 0.0;  // nearest rate-grid point
  ExtReal l1;
  ExtReal bound;  // lambda0 * snapped - L(lambda0)
  bool holds = true;
  bool skipped = false;
};

struct DerivativeBoundResult {
  bool holds = true;
  double lambda0 = 0.0;
  std::vector<SlopeBound> sides;
  // The check uses the full-net l1 estimate in place of a subnet's.
  std::string basis = "full-net surrogate";
};

// l1(s) <= lambda0 s - L(lambda0) + tol for the left and right chord slopes
// s at lambda0, with s snapped to the nearest rate-grid point. Infinite
// slopes at the ends of L's grid are skipped. Throws if L(lambda0) is not
// finite or a finite slope falls outside the rate grid.
DerivativeBoundResult derivative_bound_check(const GridFunction& L_on_g,
                                             const RateFunctionEstimate& rfe,
                                             std::size_t lambda0_index,
                                             double tol);

// Grid functions sharing the rate grid that the range conditions refer to.
struct RangeTargets {
  std::vector<double> grid;
  std::optional<GridFunction> l0;
  std::optional<GridFunction> l1;
  std::optional<GridFunction> abstract_star;  // Lambda|S*
  std::optional<GridFunction> lg_star;        // L|G*
};

struct RangeConditionOptions {
  // {l1 > -Lambda-bar(0)} is read as l1 > -Lambda-bar(0) + filter_tol.
  double filter_tol = 1e-9;
  double slope_tol = 1e-6;
  KinkOptions kink;
  double convexity_tol = 1e-6;
  // The family S is the two-slope family (required by "ellis").
  bool family_is_two_slope = false;
};

// Known ids: open-problem-a, open-problem-b, open-problem-c,
// open-problem-d, open-problem-e-a, open-problem-e-b, open-problem-f-c,
// open-problem-f-d, GE-a, GE-b, ellis.
const std::vector<std::string>& range_condition_ids();

// For each requested id, tests ran L|G'_- u ran L|G'_+ (closure, via
// derivative_range) against the condition's right-hand set of rate-grid
// points. A point is covered when it lies within one grid cell (or
// slope_tol) of the slope set. Only hypotheses are evaluated here.
std::vector<ConditionReport> range_condition_check(
    const GridFunction& L_on_g, OpenInterval g, const RangeTargets& targets,
    ExtReal lambda0_bar, const std::vector<std::string>& condition_ids,
    const RangeConditionOptions& options = {});

struct NamedMask {
  std::string name;
  std::vector<bool> members;
};

// Masks over a grid function's points.
std::vector<bool> dom_mask(const GridFunction& f);
std::vector<bool> interior_dom_mask(const GridFunction& f);
std::vector<bool> above_mask(const GridFunction& f, ExtReal threshold);
std::vector<bool> mask_and(const std::vector<bool>& a,
                           const std::vector<bool>& b);
std::vector<bool> mask_not(const std::vector<bool>& a);

// For every mask: "J=L|G*@<mask>" and "J=Lambda|S*@<mask>" asserted within
// tol, and the same two comparisons off the mask ("...@not-<mask>")
// reported as informational.
std::vector<ClaimCheck> rate_comparison(const GridFunction& J,
                                        const GridFunction& lg_star,
                                        const GridFunction& abstract_star,
                                        const std::vector<NamedMask>& masks,
                                        double tol);

// Pointwise a <= b + slack (inf <= inf allowed); returns violating points.
std::vector<Witness> pointwise_le(const GridFunction& a, const GridFunction& b,
                                  double slack);

}  // namespace ldpkit

#endif  // LDPKIT_LDP_VERIFIER_H_

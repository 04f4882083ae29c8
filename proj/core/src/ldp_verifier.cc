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

#include "ldpkit/ldp_verifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ldpkit/errors.h"
#include "ldpkit/parallel.h"

namespace ldpkit {
namespace {

constexpr double kNegInfD = -std::numeric_limits<double>::infinity();

std::string num(ExtReal v) {
  if (!v.is_finite()) return format_ext(v);
  std::ostringstream os;
  os.precision(8);
  os << v.value();
  return os.str();
}

// t log mu(region) for every tail sample.
std::vector<double> tail_log_powers(const WindowSamples& samples,
                                    const RegionSet& region) {
  std::vector<double> out;
  const auto& pts = samples.points();
  for (std::size_t i = samples.tail_begin(); i < pts.size(); ++i) {
    const double lm = pts[i].measure.log_mass_in(region);
    out.push_back(lm == kNegInfD ? kNegInfD : pts[i].t * lm);
  }
  return out;
}

double exp_or_zero(double v) { return v == kNegInfD ? 0.0 : std::exp(v); }

void require_same_grid(const GridFunction& a, const GridFunction& b,
                       const std::string& what) {
  if (a.xs() != b.xs()) {
    throw Error("ldp_verifier", "grid mismatch: " + what);
  }
}

ClaimCheck compare_on_mask(const std::string& id, const GridFunction& a,
                           const GridFunction& b, const std::vector<bool>& mask,
                           double tol, bool informational) {
  ClaimCheck c;
  c.claim_id = id;
  c.informational = informational;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!mask[i]) continue;
    const double d = ext_distance(a.value(i), b.value(i));
    c.max_violation = std::max(c.max_violation, d);
    if (d > tol) {
      c.holds = false;
      c.witnesses.push_back({a.x(i), a.label() + "=" + num(a.value(i)) + " " +
                                         b.label() + "=" + num(b.value(i))});
    }
  }
  return c;
}

}  // namespace

std::vector<double> default_deltas(int count) {
  if (count < 1) throw Error("ldp_verifier", "delta schedule needs count >= 1");
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) out.push_back(std::ldexp(1.0, -i));
  return out;
}

ExtReal local_rate(const WindowSamples& samples, double x,
                   const std::vector<double>& deltas, RateMode mode) {
  if (deltas.empty()) throw Error("ldp_verifier", "empty delta schedule");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0) || (i > 0 && !(deltas[i] < deltas[i - 1]))) {
      throw Error("ldp_verifier",
                  "deltas must be positive and strictly decreasing");
    }
  }
  ExtReal rate = kNegInf;
  for (double d : deltas) {
    const auto powers =
        tail_log_powers(samples, RegionSet({Interval{x - d, x + d, true, true}}));
    if (powers.empty()) throw Error("ldp_verifier", "window has no tail");
    const double est = mode == RateMode::kLower
                           ? *std::max_element(powers.begin(), powers.end())
                           : *std::min_element(powers.begin(), powers.end());
    rate = ext_max(rate, -ExtReal(est));
  }
  return rate;
}

RateFunctionEstimate rate_grid(const WindowSamples& samples,
                               const std::vector<double>& grid,
                               const std::vector<double>& deltas,
                               unsigned threads) {
  std::vector<ExtReal> l0(grid.size()), l1(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    l0[i] = local_rate(samples, grid[i], deltas, RateMode::kLower);
    l1[i] = local_rate(samples, grid[i], deltas, RateMode::kUpper);
  });
  return RateFunctionEstimate{grid, GridFunction(grid, std::move(l0), "l0"),
                              GridFunction(grid, std::move(l1), "l1"), deltas,
                              samples.window()};
}

bool ConditionReport::holds() const {
  if (!hypothesis_holds) return false;
  return std::all_of(conclusions_checked.begin(), conclusions_checked.end(),
                     [](const ClaimCheck& c) {
                       return c.informational || c.holds;
                     });
}

VagueLdpResult vague_ldp_check(const RateFunctionEstimate& rfe, double tol) {
  VagueLdpResult r;
  require_same_grid(rfe.l0, rfe.l1, "l0 and l1");
  for (std::size_t i = 0; i < rfe.l0.size(); ++i) {
    const double d = ext_distance(rfe.l0.value(i), rfe.l1.value(i));
    r.max_gap = std::max(r.max_gap, d);
    if (d > tol) {
      r.witnesses.push_back({rfe.l0.x(i), "l0=" + num(rfe.l0.value(i)) +
                                              " l1=" + num(rfe.l1.value(i))});
    }
  }
  r.holds = r.max_gap <= tol;
  r.J = rfe.l0;
  r.J.set_label("J");
  return r;
}

TightnessResult exponential_tightness_check(
    const WindowSamples& samples, const std::vector<double>& eps_list,
    const std::vector<double>& radius_schedule) {
  if (radius_schedule.empty()) {
    throw Error("ldp_verifier", "empty radius schedule");
  }
  for (std::size_t i = 1; i < radius_schedule.size(); ++i) {
    if (!(radius_schedule[i] > radius_schedule[i - 1])) {
      throw Error("ldp_verifier", "radius schedule must be increasing");
    }
  }
  std::vector<double> masses;
  for (double r : radius_schedule) {
    const auto region = RegionSet::Closed(-r, r).complement();
    const auto p = tail_log_powers(samples, region);
    masses.push_back(exp_or_zero(*std::max_element(p.begin(), p.end())));
  }
  TightnessResult out;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw Error("ldp_verifier", "eps must be positive");
    TightnessRow row;
    row.eps = eps;
    row.limsup_mass = masses.back();
    for (std::size_t i = 0; i < masses.size(); ++i) {
      if (masses[i] < eps) {
        row.radius = radius_schedule[i];
        row.limsup_mass = masses[i];
        break;
      }
    }
    if (!row.radius) out.holds = false;
    out.table.push_back(row);
  }
  return out;
}

BoundsReport ldp_bounds_check(const WindowSamples& samples,
                              const GridFunction& J,
                              const std::vector<TaggedRegion>& regions,
                              double tol) {
  BoundsReport out;
  for (const auto& tr : regions) {
    BoundRow row;
    row.name = tr.name;
    row.closed = tr.closed;
    const auto p = tail_log_powers(samples, tr.region);
    row.measured = exp_or_zero(tr.closed ? *std::max_element(p.begin(), p.end())
                                         : *std::min_element(p.begin(), p.end()));
    for (std::size_t i = 0; i < J.size(); ++i) {
      if (!tr.region.contains(J.x(i))) continue;
      const ExtReal j = J.value(i);
      const double c = j.is_pos_inf() ? 0.0
                       : j.is_neg_inf() ? std::numeric_limits<double>::infinity()
                                        : std::exp(-j.value());
      row.capacity = std::max(row.capacity, c);
    }
    row.holds = tr.closed ? row.measured <= row.capacity + tol
                          : row.capacity <= row.measured + tol;
    out.holds = out.holds && row.holds;
    out.rows.push_back(row);
  }
  return out;
}

VaradhanResult varadhan_identity_check(const LimitEstimate& lambda,
                                       const TiltFunction& h,
                                       const RateFunctionEstimate& rfe,
                                       double tol) {
  if (!lambda.converged) {
    throw Error("ldp_verifier",
                "Lambda(" + h.label() + ") did not converge on the window");
  }
  VaradhanResult r;
  r.lambda = lambda.value();
  r.sup_h_minus_l1 = kNegInf;
  for (std::size_t i = 0; i < rfe.l1.size(); ++i) {
    r.sup_h_minus_l1 =
        ext_max(r.sup_h_minus_l1, h(rfe.l1.x(i)) - rfe.l1.value(i));
  }
  r.gap = ext_distance(r.lambda, r.sup_h_minus_l1);
  r.holds = r.gap <= tol;
  return r;
}

VaradhanResult varadhan_identity_check(const WindowSamples& samples,
                                       const TiltFunction& h,
                                       const RateFunctionEstimate& rfe,
                                       const LimitOptions& options) {
  return varadhan_identity_check(lambda_of(samples, h, options), h, rfe,
                                 options.tol);
}

DerivativeBoundResult derivative_bound_check(const GridFunction& L_on_g,
                                             const RateFunctionEstimate& rfe,
                                             std::size_t lambda0_index,
                                             double tol) {
  if (lambda0_index >= L_on_g.size() ||
      !L_on_g.value(lambda0_index).is_finite()) {
    throw Error("ldp_verifier", "L must be finite at lambda0");
  }
  const auto& grid = rfe.l1.xs();
  DerivativeBoundResult out;
  out.lambda0 = L_on_g.x(lambda0_index);
  const double l0v = L_on_g.value(lambda0_index).value();
  const auto d = one_sided_derivatives(L_on_g, lambda0_index);
  const double cell_lo = grid[1] - grid[0];
  const double cell_hi = grid[grid.size() - 1] - grid[grid.size() - 2];
  for (const auto& [side, s] : {std::pair{"left", d.left}, {"right", d.right}}) {
    SlopeBound b;
    b.side = side;
    b.slope = s;
    if (!s.is_finite()) {
      b.skipped = true;
      out.sides.push_back(b);
      continue;
    }
    const double v = s.value();
    if (v < grid.front() - cell_lo || v > grid.back() + cell_hi) {
      throw Error("ldp_verifier", "slope " + num(s) +
                                      " lies outside the rate grid");
    }
    auto it = std::lower_bound(grid.begin(), grid.end(), v);
    std::size_t k = static_cast<std::size_t>(it - grid.begin());
    if (k == grid.size() ||
        (k > 0 && std::fabs(grid[k - 1] - v) <= std::fabs(grid[k] - v))) {
      k = k == 0 ? 0 : k - 1;
    }
    b.snapped = grid[k];
    b.l1 = rfe.l1.value(k);
    b.bound = ExtReal(out.lambda0 * b.snapped - l0v);
    b.holds = b.l1 <= b.bound + ExtReal(tol);
    out.holds = out.holds && b.holds;
    out.sides.push_back(b);
  }
  return out;
}

const std::vector<std::string>& range_condition_ids() {
  static const std::vector<std::string> ids = {
      "open-problem-a",   "open-problem-b",   "open-problem-c",
      "open-problem-d",   "open-problem-e-a", "open-problem-e-b",
      "open-problem-f-c", "open-problem-f-d", "GE-a",
      "GE-b",             "ellis"};
  return ids;
}

std::vector<bool> dom_mask(const GridFunction& f) {
  std::vector<bool> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = !f.value(i).is_pos_inf();
  return m;
}

std::vector<bool> interior_dom_mask(const GridFunction& f) {
  const auto dom = dom_mask(f);
  const bool open_ends = f.edges() == GridEdges::kTruncated;
  std::vector<bool> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool left = i > 0 ? dom[i - 1] : open_ends;
    const bool right = i + 1 < f.size() ? dom[i + 1] : open_ends;
    m[i] = dom[i] && left && right;
  }
  return m;
}

std::vector<bool> above_mask(const GridFunction& f, ExtReal threshold) {
  std::vector<bool> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = f.value(i) > threshold;
  return m;
}

std::vector<bool> mask_and(const std::vector<bool>& a,
                           const std::vector<bool>& b) {
  if (a.size() != b.size()) throw Error("ldp_verifier", "mask size mismatch");
  std::vector<bool> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
  return m;
}

std::vector<bool> mask_not(const std::vector<bool>& a) {
  std::vector<bool> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = !a[i];
  return m;
}

std::vector<ConditionReport> range_condition_check(
    const GridFunction& L_on_g, OpenInterval g, const RangeTargets& targets,
    ExtReal lambda0_bar, const std::vector<std::string>& condition_ids,
    const RangeConditionOptions& options) {
  const auto& grid = targets.grid;
  for (const auto* t : {&targets.l0, &targets.l1, &targets.abstract_star,
                        &targets.lg_star}) {
    if (*t && (*t)->xs() != grid) {
      throw Error("ldp_verifier",
                  "grid mismatch: target '" + (*t)->label() +
                      "' is not on the rate grid");
    }
  }
  auto need = [](const std::optional<GridFunction>& t, const std::string& id,
                 const char* name) -> const GridFunction& {
    if (!t) {
      throw Error("ldp_verifier",
                  "condition " + id + " needs the target " + name);
    }
    return *t;
  };

  // Hypotheses shared by every condition: L finite on G.
  std::vector<Witness> finite_witnesses;
  for (std::size_t i = 0; i < L_on_g.size(); ++i) {
    const double x = L_on_g.x(i);
    if (x > g.lo && x < g.hi && !L_on_g.value(i).is_finite()) {
      finite_witnesses.push_back(
          {x, "L(" + num(x) + ")=" + num(L_on_g.value(i)) + " is not finite"});
    }
  }
  const DerivativeRange range = derivative_range(L_on_g, g, options.kink);
  const ExtReal threshold = -lambda0_bar + ExtReal(options.filter_tol);
  const bool zero_in_g = g.lo < 0.0 && 0.0 < g.hi;

  std::vector<ConditionReport> reports;
  for (const auto& id : condition_ids) {
    const auto& known = range_condition_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw Error("ldp_verifier", "unknown condition id '" + id + "'");
    }
    ConditionReport rep;
    rep.condition_id = id;
    rep.hypothesis_holds = finite_witnesses.empty();
    rep.witnesses = finite_witnesses;

    const bool uses_l0 = id == "open-problem-a" || id == "open-problem-b" ||
                         id == "open-problem-e-a" || id == "open-problem-e-b";
    const bool uses_lg = id == "GE-a" || id == "GE-b";
    const bool interior = id == "open-problem-e-a" ||
                          id == "open-problem-e-b" ||
                          id == "open-problem-f-c" ||
                          id == "open-problem-f-d" || uses_lg;
    const bool filtered = id == "open-problem-a" || id == "open-problem-c" ||
                          id == "open-problem-e-a" ||
                          id == "open-problem-f-c" || id == "GE-b" ||
                          id == "ellis";

    const GridFunction& base =
        uses_l0 ? need(targets.l0, id, "l0")
                : (uses_lg ? need(targets.lg_star, id, "L|G*")
                           : need(targets.abstract_star, id, "Lambda|S*"));
    std::vector<bool> mask = interior ? interior_dom_mask(base) : dom_mask(base);
    std::string set_name = std::string(interior ? "int Dom(" : "Dom(") +
                           (uses_l0 ? "l0" : uses_lg ? "L|G*" : "Lambda|S*") +
                           ")";
    if (filtered) {
      mask = mask_and(mask, above_mask(need(targets.l1, id, "l1"), threshold));
      set_name += " & {l1 > " + num(threshold) + "}";
    }

    if ((id == "GE-b" || id == "ellis") && !zero_in_g) {
      rep.hypothesis_holds = false;
      rep.witnesses.push_back({0.0, "0 is not in G"});
    }
    if (id == "ellis" && !options.family_is_two_slope) {
      rep.hypothesis_holds = false;
      rep.witnesses.push_back({0.0, "family is not the two-slope family"});
    }
    if (id == "open-problem-e-a" || id == "open-problem-e-b") {
      const auto& l0 = need(targets.l0, id, "l0");
      if (!l0.proper() || !is_convex_on_grid(l0, options.convexity_tol)) {
        rep.hypothesis_holds = false;
        rep.witnesses.push_back({grid.front(), "l0 is not proper convex"});
      }
    }
    if (id == "open-problem-f-c" || id == "open-problem-f-d") {
      const auto& a = need(targets.abstract_star, id, "Lambda|S*");
      if (!a.proper() || !is_convex_on_grid(a, options.convexity_tol)) {
        rep.hypothesis_holds = false;
        rep.witnesses.push_back(
            {grid.front(), "Lambda|S* is not proper convex"});
      } else {
        rep.notes.push_back(
            "lower semicontinuity holds on the grid for a convex grid "
            "function with one domain run");
      }
    }

    std::size_t count = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!mask[i]) continue;
      ++count;
      double cell = 0.0;
      if (i > 0) cell = std::max(cell, grid[i] - grid[i - 1]);
      if (i + 1 < grid.size()) cell = std::max(cell, grid[i + 1] - grid[i]);
      const double slack = std::max(cell, options.slope_tol);
      const double dist = range.distance(grid[i]);
      if (dist > slack) {
        rep.hypothesis_holds = false;
        rep.witnesses.push_back(
            {grid[i], "not covered: distance " + num(dist) + " to ran L'"});
      }
    }
    std::sort(rep.witnesses.begin(), rep.witnesses.end(),
              [](const Witness& p, const Witness& q) { return p.x < q.x; });
    rep.notes.push_back("ran L|G' = " + range.describe());
    rep.notes.push_back("target set " + set_name + ": " +
                        std::to_string(count) + " grid points");
    rep.notes.push_back(
        "inclusion slack: one rate-grid cell or slope_tol " +
        num(options.slope_tol));
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<ClaimCheck> rate_comparison(const GridFunction& J,
                                        const GridFunction& lg_star,
                                        const GridFunction& abstract_star,
                                        const std::vector<NamedMask>& masks,
                                        double tol) {
  require_same_grid(J, lg_star, "J and L|G*");
  require_same_grid(J, abstract_star, "J and Lambda|S*");
  std::vector<ClaimCheck> out;
  for (const auto& m : masks) {
    if (m.members.size() != J.size()) {
      throw Error("ldp_verifier", "grid mismatch: mask '" + m.name + "'");
    }
    out.push_back(
        compare_on_mask("J=L|G*@" + m.name, J, lg_star, m.members, tol, false));
    out.push_back(compare_on_mask("J=Lambda|S*@" + m.name, J, abstract_star,
                                  m.members, tol, false));
    const auto off = mask_not(m.members);
    out.push_back(compare_on_mask("J=L|G*@not-" + m.name, J, lg_star, off, tol,
                                  true));
    out.push_back(compare_on_mask("J=Lambda|S*@not-" + m.name, J,
                                  abstract_star, off, tol, true));
  }
  return out;
}

std::vector<Witness> pointwise_le(const GridFunction& a, const GridFunction& b,
                                  double slack) {
  require_same_grid(a, b, a.label() + " and " + b.label());
  std::vector<Witness> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ExtReal u = a.value(i);
    const ExtReal v = b.value(i);
    bool ok;
    if (v.is_pos_inf() || u.is_neg_inf()) {
      ok = true;
    } else if (u.is_pos_inf() || v.is_neg_inf()) {
      ok = false;
    } else {
      ok = u.value() <= v.value() + slack;
    }
    if (!ok) {
      out.push_back({a.x(i), a.label() + "=" + num(u) + " > " + b.label() +
                                 "=" + num(v)});
    }
  }
  return out;
}

}  // namespace ldpkit

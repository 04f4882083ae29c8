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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ldpkit/errors.h"

namespace ldpkit {
namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

double slope(const GridFunction& f, std::size_t a, std::size_t b) {
  return (f.value(b).value() - f.value(a).value()) / (f.x(b) - f.x(a));
}

void require_conjugable(const GridFunction& f) {
  if (!f.proper()) {
    throw Error("convex_analysis", "conjugate of an improper function");
  }
  if (f.has_neg_inf()) {
    throw Error("convex_analysis", "conjugate input takes the value -inf");
  }
}

void require_increasing(const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error("convex_analysis",
                  "dual grid must be finite and strictly increasing");
    }
  }
}

// Indices of the lower convex hull of the finite points, left to right.
// Collinear middle points are dropped.
std::vector<std::size_t> lower_hull(const GridFunction& f) {
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.value(i).is_finite()) continue;
    while (h.size() >= 2 &&
           slope(f, h[h.size() - 2], h.back()) >= slope(f, h.back(), i)) {
      h.pop_back();
    }
    h.push_back(i);
  }
  return h;
}

// Maximal runs [first, last] of consecutive finite values.
std::vector<std::pair<std::size_t, std::size_t>> finite_runs(
    const GridFunction& f) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.value(i).is_finite()) continue;
    if (!runs.empty() && runs.back().second + 1 == i) {
      runs.back().second = i;
    } else {
      runs.emplace_back(i, i);
    }
  }
  return runs;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

GridFunction lf_transform(const GridFunction& f,
                          const std::vector<double>& dual_grid) {
  require_conjugable(f);
  require_increasing(dual_grid);
  const auto hull = lower_hull(f);
  std::vector<double> slopes;
  for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
    slopes.push_back(slope(f, hull[j], hull[j + 1]));
  }
  std::vector<ExtReal> out;
  out.reserve(dual_grid.size());
  std::size_t j = 0;
  for (double s : dual_grid) {
    // Vertex j maximizes s x - f(x) when slopes[j-1] <= s <= slopes[j];
    // at equality the left vertex is kept.
    while (j < slopes.size() && slopes[j] < s) ++j;
    const std::size_t v = hull[j];
    out.emplace_back(s * f.x(v) - f.value(v).value());
  }
  return GridFunction(dual_grid, std::move(out),
                      f.label().empty() ? "conjugate" : f.label() + "*");
}

GridFunction brute_force_conjugate(const GridFunction& f,
                                   const std::vector<double>& dual_grid) {
  require_conjugable(f);
  require_increasing(dual_grid);
  std::vector<ExtReal> out;
  out.reserve(dual_grid.size());
  for (double s : dual_grid) {
    double best = -kInfD;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!f.value(i).is_finite()) continue;
      best = std::max(best, s * f.x(i) - f.value(i).value());
    }
    out.emplace_back(best);
  }
  return GridFunction(dual_grid, std::move(out),
                      f.label().empty() ? "conjugate" : f.label() + "*");
}

std::vector<bool> beyond_slope_range(const GridFunction& f,
                                     const std::vector<double>& dual_grid) {
  require_conjugable(f);
  const auto hull = lower_hull(f);
  double lo = kInfD;
  double hi = -kInfD;
  if (hull.size() >= 2) {
    lo = slope(f, hull[0], hull[1]);
    hi = slope(f, hull[hull.size() - 2], hull.back());
  }
  const bool open_left = hull.front() == 0;
  const bool open_right = hull.back() == f.size() - 1;
  auto margin = [](double s) { return 1e-12 * (1.0 + std::fabs(s)); };
  std::vector<bool> out;
  out.reserve(dual_grid.size());
  for (double s : dual_grid) {
    out.push_back((open_right && s > hi + margin(hi)) ||
                  (open_left && s < lo - margin(lo)));
  }
  return out;
}

GridFunction convex_lsc_hull(const GridFunction& f) {
  if (!f.proper() || f.has_neg_inf()) {
    throw Error("convex_analysis", "hull of an improper function");
  }
  const auto hull = lower_hull(f);
  std::vector<ExtReal> out(f.size(), kPosInf);
  for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
    const std::size_t a = hull[j];
    const std::size_t b = hull[j + 1];
    const double ya = f.value(a).value();
    const double s = slope(f, a, b);
    for (std::size_t i = a; i < b; ++i) {
      out[i] = ExtReal(i == a ? ya : ya + s * (f.x(i) - f.x(a)));
    }
  }
  out[hull.back()] = f.value(hull.back());
  return GridFunction(f.xs(), std::move(out),
                      f.label().empty() ? "hull" : f.label() + " hull",
                      f.edges());
}

OneSidedDerivatives one_sided_derivatives(const GridFunction& f,
                                          std::size_t index) {
  if (index >= f.size() || !f.value(index).is_finite()) {
    throw Error("convex_analysis",
                "one-sided derivatives need a finite value at the index");
  }
  OneSidedDerivatives d{kNegInf, kPosInf};
  if (index > 0 && f.value(index - 1).is_finite()) {
    d.left = ExtReal(slope(f, index - 1, index));
  }
  if (index + 1 < f.size() && f.value(index + 1).is_finite()) {
    d.right = ExtReal(slope(f, index, index + 1));
  }
  return d;
}

double DerivativeRange::distance(double s) const {
  double best = kInfD;
  for (const auto& c : components) {
    if (s < c.lo) {
      best = std::min(best, c.lo - s);
    } else if (s > c.hi) {
      best = std::min(best, s - c.hi);
    } else {
      return 0.0;
    }
  }
  return best;
}

std::string DerivativeRange::describe() const {
  if (components.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i > 0) out += " U ";
    const auto& c = components[i];
    if (std::fabs(c.hi - c.lo) <= 1e-9 * (1.0 + std::fabs(c.lo))) {
      out += "{" + num(c.lo) + "}";
    } else {
      out += "[" + num(c.lo) + "," + num(c.hi) + "]";
    }
  }
  if (closure_used) out += " (closure)";
  return out;
}

std::vector<bool> kink_mask(const std::vector<double>& xs,
                            const std::vector<double>& values,
                            const KinkOptions& options) {
  const std::size_t n = xs.size();
  std::vector<bool> mask(n, false);
  if (n < 3) return mask;
  std::vector<double> s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s[i] = (values[i + 1] - values[i]) / (xs[i + 1] - xs[i]);
  }
  std::vector<double> jump(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) jump[i] = s[i] - s[i - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double j = jump[i];
    if (!(j > options.relative_tol *
                  (1.0 + std::fabs(s[i - 1]) + std::fabs(s[i])))) {
      continue;
    }
    bool spike = true;
    for (std::size_t d : {2u, 3u}) {
      if (i >= 1 + d && j <= options.spike_ratio * std::fabs(jump[i - d])) {
        spike = false;
      }
      if (i + d + 1 < n && j <= options.spike_ratio * std::fabs(jump[i + d])) {
        spike = false;
      }
    }
    mask[i] = spike;
  }
  return mask;
}

DerivativeRange derivative_range(const GridFunction& f, OpenInterval g,
                                 const KinkOptions& options) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  bool any = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.x(i);
    if (!(x > g.lo && x < g.hi)) continue;
    any = true;
    if (!f.value(i).is_finite()) continue;
    if (!runs.empty() && runs.back().second + 1 == i) {
      runs.back().second = i;
    } else {
      runs.emplace_back(i, i);
    }
  }
  if (!any) {
    throw Error("convex_analysis", "open interval (" + num(g.lo) + "," +
                                       num(g.hi) + ") misses the grid");
  }
  DerivativeRange range;
  std::vector<SlopeComponent> comps;
  for (const auto& [a, b] : runs) {
    if (a == b) continue;
    std::vector<double> xs, ys;
    for (std::size_t i = a; i <= b; ++i) {
      xs.push_back(f.x(i));
      ys.push_back(f.value(i).value());
    }
    const auto kinks = kink_mask(xs, ys, options);
    SlopeComponent cur;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      const double s = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
      if (k == 0) {
        cur = {s, s};
      } else if (kinks[k]) {
        comps.push_back(cur);
        cur = {s, s};
      } else {
        cur.lo = std::min(cur.lo, s);
        cur.hi = std::max(cur.hi, s);
      }
    }
    comps.push_back(cur);
  }
  std::sort(comps.begin(), comps.end(),
            [](const SlopeComponent& p, const SlopeComponent& q) {
              return p.lo < q.lo;
            });
  for (const auto& c : comps) {
    if (!range.components.empty() && c.lo <= range.components.back().hi) {
      range.components.back().hi = std::max(range.components.back().hi, c.hi);
    } else {
      range.components.push_back(c);
    }
  }
  return range;
}

RegionSet effective_domain(const GridFunction& f) {
  std::vector<Interval> ivs;
  for (const auto& [a, b] : finite_runs(f)) {
    ivs.push_back(Interval{f.x(a), f.x(b), false, false});
  }
  return RegionSet(std::move(ivs));
}

RegionSet interior_effective_domain(const GridFunction& f) {
  std::vector<Interval> ivs;
  for (const auto& [a, b] : finite_runs(f)) {
    if (a == b) continue;
    ivs.push_back(Interval{f.x(a), f.x(b), true, true});
  }
  return RegionSet(std::move(ivs));
}

EssentialSmoothnessReport essential_smoothness_check(
    const GridFunction& f, const EssentialSmoothnessOptions& options) {
  EssentialSmoothnessReport report;
  report.differentiable = true;
  report.steep_at_boundary = true;
  if (f.has_neg_inf()) {
    report.differentiable = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.value(i).is_neg_inf()) {
        report.witnesses.push_back({f.x(i), "proper", "value is -inf"});
        break;
      }
    }
  }
  const auto runs = finite_runs(f);
  for (const auto& [a, b] : runs) {
    if (b > a) report.interior_nonempty = true;
  }
  if (!report.interior_nonempty) {
    report.witnesses.push_back(
        {runs.empty() ? f.x(0) : f.x(runs.front().first), "interior",
         "effective domain has empty interior"});
  }
  const double thr = options.divergence_threshold;
  for (const auto& [a, b] : runs) {
    if (a == b) continue;
    std::vector<double> xs, ys;
    for (std::size_t i = a; i <= b; ++i) {
      xs.push_back(f.x(i));
      ys.push_back(f.value(i).value());
    }
    const auto kinks = kink_mask(xs, ys, options.kink);
    for (std::size_t k = 0; k < kinks.size(); ++k) {
      if (!kinks[k]) continue;
      report.differentiable = false;
      const auto d = one_sided_derivatives(f, a + k);
      report.witnesses.push_back(
          {xs[k], "differentiable",
           "left slope " + num(d.left.value()) + " != right slope " +
               num(d.right.value())});
    }
    const bool left_boundary =
        a > 0 || f.edges() == GridEdges::kDomainBoundary;
    const bool right_boundary =
        b + 1 < f.size() || f.edges() == GridEdges::kDomainBoundary;
    const double s_left = slope(f, a, a + 1);
    const double s_right = slope(f, b - 1, b);
    if (left_boundary && !(std::fabs(s_left) >= thr)) {
      report.steep_at_boundary = false;
      report.witnesses.push_back(
          {xs.front(), "steep", "slope " + num(s_left) +
                                    " at the domain boundary is below " +
                                    num(thr)});
    }
    if (right_boundary && !(std::fabs(s_right) >= thr)) {
      report.steep_at_boundary = false;
      report.witnesses.push_back(
          {xs.back(), "steep", "slope " + num(s_right) +
                                   " at the domain boundary is below " +
                                   num(thr)});
    }
  }
  std::sort(report.witnesses.begin(), report.witnesses.end(),
            [](const SmoothnessWitness& p, const SmoothnessWitness& q) {
              return p.x < q.x;
            });
  report.holds = report.interior_nonempty && report.differentiable &&
                 report.steep_at_boundary;
  return report;
}

ExtReal inf_over_open(const GridFunction& f, const RegionSet& g) {
  double best = kInfD;
  auto at = [&](std::size_t i, double x) {
    const double t = (x - f.x(i)) / (f.x(i + 1) - f.x(i));
    const double ya = f.value(i).value();
    const double yb = f.value(i + 1).value();
    return ya + t * (yb - ya);
  };
  for (const auto& iv : g.intervals()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const ExtReal v = f.value(i);
      if (v.is_finite() && iv.contains(f.x(i))) {
        best = std::min(best, v.value());
      }
      if (v.is_neg_inf() && iv.contains(f.x(i))) return kNegInf;
      if (i + 1 == f.size() || !v.is_finite() ||
          !f.value(i + 1).is_finite()) {
        continue;
      }
      const ExtReal lo = ext_max(ExtReal(f.x(i)), iv.lo);
      const ExtReal hi = ext_min(ExtReal(f.x(i + 1)), iv.hi);
      if (!(lo < hi)) continue;
      best = std::min({best, at(i, lo.value()), at(i, hi.value())});
    }
  }
  return ExtReal(best);
}

ExtReal inf_over_open_interior(const GridFunction& f, const RegionSet& g) {
  return inf_over_open(f, g.intersect(interior_effective_domain(f)));
}

bool conv_lemma_check(const GridFunction& f, const RegionSet& g, double tol) {
  return ext_distance(inf_over_open(f, g), inf_over_open_interior(f, g)) <= tol;
}

bool is_convex_on_grid(const GridFunction& f, double tol) {
  if (f.has_neg_inf()) return false;
  const auto runs = finite_runs(f);
  if (runs.size() > 1) return false;
  for (const auto& [a, b] : runs) {
    for (std::size_t i = a + 1; i < b; ++i) {
      if (slope(f, i, i + 1) - slope(f, i - 1, i) < -tol) return false;
    }
  }
  return true;
}

}  // namespace ldpkit

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

#include <algorithm>
#include <cmath>

#include "ldpkit/errors.h"
#include "ldpkit/parallel.h"

namespace ldpkit {
namespace {

bool diverges_up(const std::vector<ExtReal>& v, std::size_t tail,
                 const LimitOptions& o) {
  const std::size_t n = v.size();
  const auto run = static_cast<std::size_t>(std::max(o.monotone_run, 2));
  if (n < run || tail >= n) return false;
  for (std::size_t i = n - run + 1; i < n; ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  const ExtReal last = v.back();
  if (!(last > ExtReal(o.divergence_threshold))) return false;
  const ExtReal first = v[tail];
  if (first.is_finite() && first.value() > 0.0) {
    return last.value() >= o.growth_factor * first.value();
  }
  return true;
}

std::vector<ExtReal> negated(const std::vector<ExtReal>& v) {
  std::vector<ExtReal> out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(-x);
  return out;
}

}  // namespace

LimitEstimate lambda_of(const WindowSamples& samples, const TiltFunction& h,
                        const LimitOptions& options) {
  if (!(options.tol > 0.0)) throw Error("free_energy", "tol must be > 0");
  const auto& pts = samples.points();
  LimitEstimate est;
  std::vector<ExtReal> values;
  values.reserve(pts.size());
  for (const auto& p : pts) {
    values.push_back(exp_power_integral(p.measure, h, p.t));
    est.samples.emplace_back(p.t, values.back());
  }
  const std::size_t tail = samples.tail_begin();
  if (tail >= values.size()) {
    throw Error("free_energy", "window has no tail samples");
  }
  ExtReal lo = kPosInf;
  ExtReal hi = kNegInf;
  for (std::size_t i = tail; i < values.size(); ++i) {
    lo = ext_min(lo, values[i]);
    hi = ext_max(hi, values[i]);
  }
  if (diverges_up(values, tail, options)) {
    est.divergence = Divergence::kPosInf;
    lo = hi = kPosInf;
  } else if (diverges_up(negated(values), tail, options)) {
    est.divergence = Divergence::kNegInf;
    lo = hi = kNegInf;
  }
  est.liminf_est = lo;
  est.limsup_est = hi;
  if (lo.is_finite() && hi.is_finite()) {
    est.spread = hi.value() - lo.value();
    est.converged = est.spread <= options.tol;
  } else {
    est.spread = lo == hi ? 0.0 : std::numeric_limits<double>::infinity();
    est.converged = lo == hi;
  }
  return est;
}

LimitEstimate lambda_of(const ScaledMeasureNet& net, const TiltFunction& h,
                        const WindowSpec& window, double tol) {
  LimitOptions options;
  options.tol = tol;
  return lambda_of(WindowSamples(net, window), h, options);
}

bool FreeEnergyGrid::all_converged() const {
  return std::all_of(estimates.begin(), estimates.end(),
                     [](const LimitEstimate& e) { return e.converged; });
}

std::vector<double> FreeEnergyGrid::unconverged_slopes() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (!estimates[i].converged) out.push_back(values.x(i));
  }
  return out;
}

std::vector<LimitEstimate> lambda_family_table(const WindowSamples& samples,
                                               const TiltFamily& family,
                                               const LimitOptions& options) {
  std::vector<LimitEstimate> out(family.size());
  parallel_for(family.size(), options.threads, [&](std::size_t i) {
    out[i] = lambda_of(samples, family.members()[i], options);
  });
  return out;
}

FreeEnergyGrid L_grid(const WindowSamples& samples, OpenInterval g,
                      int resolution, const LimitOptions& options) {
  const auto slopes = linear_family_slopes(g, resolution);
  FreeEnergyGrid out;
  out.estimates =
      lambda_family_table(samples, linear_family(g, resolution), options);
  std::vector<ExtReal> values;
  values.reserve(slopes.size());
  for (const auto& e : out.estimates) values.push_back(e.value());
  out.values = GridFunction(slopes, std::move(values), "L");
  return out;
}

FreeEnergyGrid L_grid(const ScaledMeasureNet& net, OpenInterval g,
                      int resolution, const WindowSpec& window, double tol) {
  LimitOptions options;
  options.tol = tol;
  return L_grid(WindowSamples(net, window), g, resolution, options);
}

}  // namespace ldpkit

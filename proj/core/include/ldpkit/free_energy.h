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

#ifndef LDPKIT_FREE_ENERGY_H_
#define LDPKIT_FREE_ENERGY_H_

#include <string>
#include <utility>
#include <vector>

#include "ldpkit/ext_real.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/net.h"
#include "ldpkit/tilt.h"

namespace ldpkit {

struct LimitOptions {
  // Convergence: limsup_est - liminf_est <= tol.
  double tol = 1e-3;
  // Divergence to +inf: the last `monotone_run` window samples strictly
  // increase, the last exceeds `divergence_threshold`, and it is at least
  // `growth_factor` times the value at the start of the tail decade.
  // Mirrored for -inf.
  double divergence_threshold = 1e3;
  int monotone_run = 5;
  double growth_factor = 2.0;
  unsigned threads = 1;
};

enum class Divergence { kNone, kPosInf, kNegInf };

// Estimates of log liminf and log limsup of mu^t(e^{h/t}) along the net.
struct LimitEstimate {
  ExtReal liminf_est;
  ExtReal limsup_est;
  bool converged = false;
  double spread = 0.0;
  Divergence divergence = Divergence::kNone;
  // (t, t log mu(e^{h/t})) for every window sample, in index order.
  std::vector<std::pair<double, ExtReal>> samples;

  // Lambda(h) as used downstream: the limsup estimate.
  ExtReal value() const { return limsup_est; }
};

LimitEstimate lambda_of(const WindowSamples& samples, const TiltFunction& h,
                        const LimitOptions& options = {});
LimitEstimate lambda_of(const ScaledMeasureNet& net, const TiltFunction& h,
                        const WindowSpec& window, double tol);

// L(l) = Lambda(h_l) on the linear_family grid of G.
struct FreeEnergyGrid {
  GridFunction values;  // limsup estimates; +inf where divergent
  std::vector<LimitEstimate> estimates;

  bool all_converged() const;
  std::vector<double> unconverged_slopes() const;
};

FreeEnergyGrid L_grid(const WindowSamples& samples, OpenInterval g,
                      int resolution, const LimitOptions& options = {});
FreeEnergyGrid L_grid(const ScaledMeasureNet& net, OpenInterval g,
                      int resolution, const WindowSpec& window, double tol);

// Elementwise lambda_of over the family, aligned with family.members().
std::vector<LimitEstimate> lambda_family_table(
    const WindowSamples& samples, const TiltFamily& family,
    const LimitOptions& options = {});

}  // namespace ldpkit

#endif  // LDPKIT_FREE_ENERGY_H_

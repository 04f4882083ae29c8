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

#ifndef LDPKIT_ABSTRACT_CONJUGATE_H_
#define LDPKIT_ABSTRACT_CONJUGATE_H_

#include <vector>

#include "ldpkit/free_energy.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/tilt.h"

namespace ldpkit {

// Lambda evaluated on every member of a finite tilt family.
struct FamilyEvaluation {
  TiltFamily family;
  std::vector<LimitEstimate> lambdas;
  bool all_exist = false;
};

FamilyEvaluation evaluate_family(const WindowSamples& samples,
                                 TiltFamily family,
                                 const LimitOptions& options = {});

// Lambda|S*(x) = sup_{h in S} {h(x) - Lambda(h)} in extended arithmetic:
// members with Lambda = +inf drop out, members with Lambda = -inf give +inf
// unless h(x) = -inf. Empty families give -inf. Throws if !fe.all_exist.
GridFunction abstract_lf(const FamilyEvaluation& fe,
                         const std::vector<double>& x_grid,
                         unsigned threads = 1);

// The sampled L|G of a linear family as a grid function over its slopes.
GridFunction linear_family_values(const FamilyEvaluation& fe);

// lf_transform of the sampled L|G (+inf off G). Cross-check path for
// abstract_lf over the same linear family. Throws if a member is not Linear.
GridFunction linear_restriction_conjugate(const FamilyEvaluation& fe,
                                          const std::vector<double>& x_grid);

// Marks +inf wherever the conjugate computed at doubled family bounds
// exceeds the one at the base bounds by more than tol; everything else keeps
// the base value.
struct StabilizedConjugate {
  GridFunction value;
  GridFunction base;
  GridFunction doubled;
  std::vector<bool> unstable;
};

StabilizedConjugate stabilize_under_doubling(const GridFunction& base,
                                             const GridFunction& doubled,
                                             double tol);

}  // namespace ldpkit

#endif  // LDPKIT_ABSTRACT_CONJUGATE_H_

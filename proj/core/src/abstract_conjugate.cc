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

#include <algorithm>

#include "ldpkit/convex.h"
#include "ldpkit/errors.h"
#include "ldpkit/parallel.h"

namespace ldpkit {

FamilyEvaluation evaluate_family(const WindowSamples& samples,
                                 TiltFamily family,
                                 const LimitOptions& options) {
  FamilyEvaluation fe;
  fe.lambdas = lambda_family_table(samples, family, options);
  fe.family = std::move(family);
  fe.all_exist = std::all_of(fe.lambdas.begin(), fe.lambdas.end(),
                             [](const LimitEstimate& e) { return e.converged; });
  return fe;
}

GridFunction abstract_lf(const FamilyEvaluation& fe,
                         const std::vector<double>& x_grid, unsigned threads) {
  if (fe.lambdas.size() != fe.family.size()) {
    throw Error("abstract_conjugate", "family and estimates differ in length");
  }
  if (!fe.all_exist) {
    throw Error("abstract_conjugate",
                "Lambda(h) did not converge for every family member");
  }
  const auto& members = fe.family.members();
  std::vector<ExtReal> values(x_grid.size());
  parallel_for(x_grid.size(), threads, [&](std::size_t i) {
    const double x = x_grid[i];
    ExtReal best = kNegInf;
    for (std::size_t j = 0; j < members.size(); ++j) {
      const ExtReal lam = fe.lambdas[j].value();
      if (lam.is_pos_inf()) continue;
      const ExtReal hx = members[j](x);
      if (hx.is_neg_inf()) continue;
      if (lam.is_neg_inf()) {
        best = kPosInf;
        break;
      }
      best = ext_max(best, hx - lam);
    }
    values[i] = best;
  });
  return GridFunction(x_grid, std::move(values), "Lambda|S*");
}

GridFunction linear_family_values(const FamilyEvaluation& fe) {
  std::vector<double> slopes;
  std::vector<ExtReal> values;
  for (std::size_t j = 0; j < fe.family.size(); ++j) {
    const auto& h = fe.family.members()[j];
    if (h.kind() != TiltFunction::Kind::kLinear) {
      throw Error("abstract_conjugate", "member '" + h.label() +
                                            "' of a linear family is not "
                                            "linear");
    }
    slopes.push_back(h.left_slope());
    values.push_back(fe.lambdas[j].value());
  }
  return GridFunction(std::move(slopes), std::move(values), "L");
}

GridFunction linear_restriction_conjugate(const FamilyEvaluation& fe,
                                          const std::vector<double>& x_grid) {
  if (!fe.all_exist) {
    throw Error("abstract_conjugate",
                "Lambda(h) did not converge for every family member");
  }
  GridFunction f = lf_transform(linear_family_values(fe), x_grid);
  f.set_label("L|G*");
  return f;
}

StabilizedConjugate stabilize_under_doubling(const GridFunction& base,
                                             const GridFunction& doubled,
                                             double tol) {
  if (base.xs() != doubled.xs()) {
    throw Error("abstract_conjugate",
                "base and doubled conjugates use different grids");
  }
  StabilizedConjugate out{base, base, doubled,
                          std::vector<bool>(base.size(), false)};
  std::vector<ExtReal> values = base.values();
  for (std::size_t i = 0; i < base.size(); ++i) {
    const ExtReal b = base.value(i);
    const ExtReal d = doubled.value(i);
    if (b == d) continue;
    if (!b.is_finite() || !d.is_finite() || d.value() - b.value() > tol) {
      out.unstable[i] = true;
      values[i] = kPosInf;
    }
  }
  out.value = GridFunction(base.xs(), std::move(values), base.label(),
                           base.edges());
  return out;
}

}  // namespace ldpkit

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

#ifndef LDPKIT_HARNESS_PIPELINE_H_
#define LDPKIT_HARNESS_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "ldpkit/abstract_conjugate.h"
#include "ldpkit/free_energy.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/harness/scenario.h"
#include "ldpkit/ldp_verifier.h"

namespace ldpkit::harness {

// Outcome of one requested check, with its report entries as JSON text.
struct CheckOutcome {
  std::string id;
  bool gating = true;
  bool holds = false;
  std::string details_json;
};

struct FamilyTable {
  std::string name;
  std::string description;
  FamilyEvaluation base;
  FamilyEvaluation doubled;
};

struct PipelineResult {
  Scenario scenario;
  LimitEstimate lambda_zero;  // Lambda(h_0); its limsup is Lambda-bar(0)
  FreeEnergyGrid L;
  std::optional<FreeEnergyGrid> L_doubled;
  std::optional<FreeEnergyGrid> L_probe;
  std::vector<FamilyTable> families;

  GridFunction lg_star_raw;
  GridFunction lg_star;        // stabilized when G truncates the line
  GridFunction abstract_raw;
  GridFunction abstract_star;  // stabilized under doubling
  RateFunctionEstimate rates;
  VagueLdpResult vague;

  std::vector<CheckOutcome> checks;

  bool all_gating_hold() const;
};

// Runs net -> L -> conjugates -> rates -> checks. base_dir resolves
// relative measure files.
PipelineResult run_pipeline(const Scenario& scenario,
                            const std::string& base_dir = ".");

// L on G only (the free-energy subcommand).
FreeEnergyGrid run_free_energy(const Scenario& scenario,
                               const std::string& base_dir = ".");

}  // namespace ldpkit::harness

#endif  // LDPKIT_HARNESS_PIPELINE_H_

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

#ifndef LDPKIT_HARNESS_REPORT_H_
#define LDPKIT_HARNESS_REPORT_H_

#include <string>
#include <vector>

#include "ldpkit/free_energy.h"
#include "ldpkit/harness/pipeline.h"

namespace ldpkit::harness {

inline constexpr int kSchemaVersion = 1;

// Deterministic JSON report with top-level keys scenario, tables, checks,
// verdict and schema_version. Infinities are written as "inf" / "-inf".
std::string render_report(const PipelineResult& result);

// JSON for the free-energy subcommand.
std::string render_free_energy(const Scenario& scenario,
                               const FreeEnergyGrid& L);

// Writes L, L|G*, Lambda|S*, l0, l1 and J as CSV files into dir.
void write_tables(const PipelineResult& result, const std::string& dir);

// Structural comparison of two reports: numbers within tol relative to
// (1 + |golden|), everything else exact. Returns one line per difference.
std::vector<std::string> diff_reports(const std::string& actual,
                                      const std::string& golden, double tol);

}  // namespace ldpkit::harness

#endif  // LDPKIT_HARNESS_REPORT_H_

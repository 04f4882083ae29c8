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

#ifndef LDPKIT_HARNESS_SCENARIO_H_
#define LDPKIT_HARNESS_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldpkit/measure.h"
#include "ldpkit/net.h"
#include "ldpkit/tilt.h"

namespace ldpkit::harness {

// Defaults applied to keys a scenario omits. Echoed into every report.
struct Defaults {
  static constexpr double kLimitTol = 1e-3;
  static constexpr double kRateTol = 1e-3;
  static constexpr double kStabilityTol = 1e-3;
  static constexpr double kSandwichSlack = 1e-6;
  static constexpr double kFilterTol = 1e-9;
  static constexpr double kSlopeTol = 1e-6;
  static constexpr int kDeltaCount = 10;
  static constexpr std::int64_t kWindowStart = 100;
  static constexpr std::int64_t kWindowEnd = 1000000;
  static constexpr int kSamplesPerDecade = 8;
};

struct NetConfig {
  // coin | dem-zei | iid-mean | dirac | escaping-dirac | files
  std::string kind;
  std::vector<std::pair<double, double>> base;  // iid-mean (location, mass)
  std::int64_t max_n = 0;                       // iid-mean
  double mass = 1.0;                            // dirac
  std::vector<std::string> measure_files;       // files
  std::vector<double> powers;                   // files
};

struct NamedFamily {
  std::string name;
  FamilySpec spec;
};

struct TiltConfig {
  std::string text;  // as written, e.g. "two_slope:-1:2"
  TiltFunction tilt;
};

struct RegionConfig {
  std::string name;
  bool closed = false;
  double lo = 0.0;
  double hi = 0.0;
};

struct Scenario {
  std::string name;
  std::string source;
  std::vector<std::string> checks;       // gate the exit status
  std::vector<std::string> diagnostics;  // reported only

  NetConfig net;
  WindowSpec window;

  double limit_tol = Defaults::kLimitTol;
  double rate_tol = Defaults::kRateTol;
  double stability_tol = Defaults::kStabilityTol;
  double sandwich_slack = Defaults::kSandwichSlack;
  double filter_tol = Defaults::kFilterTol;
  double slope_tol = Defaults::kSlopeTol;

  // Linear family {h_l : l in G}.
  FamilySpec linear;
  // Wider interval on which L is tabulated for +inf flags only.
  std::optional<OpenInterval> probe_g;
  int probe_resolution = 0;
  // Further members of S besides the linear family.
  std::vector<NamedFamily> families;
  // Genuine interval used instead of G for GE-a and GE-b.
  std::optional<FamilySpec> ge_probe;

  std::vector<double> x_grid;
  int delta_count = Defaults::kDeltaCount;

  std::vector<TiltConfig> varadhan_tilts;
  std::vector<double> tightness_eps = {0.1, 0.01};
  std::vector<double> tightness_radii = {1, 2, 4, 8, 16, 32, 64};
  std::vector<RegionConfig> bound_regions;

  bool write_csv = true;
  unsigned threads = 1;
};

// Sectioned "key = value" text; '#' starts a comment. Throws ParseError
// with the offending line.
Scenario parse_scenario(const std::string& text, const std::string& source);
Scenario load_scenario(const std::string& path);

// Builds the net a scenario names. Relative measure paths resolve against
// base_dir.
ScaledMeasureNet build_net(const NetConfig& config,
                           const std::string& base_dir = ".");

// Parses "linear:<l>", "two_slope:<l>:<n>" or a registered custom label.
TiltFunction parse_tilt(const std::string& text);

// Every id accepted in checks / diagnostics.
const std::vector<std::string>& known_check_ids();

}  // namespace ldpkit::harness

#endif  // LDPKIT_HARNESS_SCENARIO_H_

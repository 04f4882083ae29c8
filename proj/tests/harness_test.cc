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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ldpkit/errors.h"
#include "ldpkit/harness/pipeline.h"
#include "ldpkit/harness/report.h"
#include "ldpkit/harness/scenario.h"

namespace ldpkit::harness {
namespace {

const char kMinimal[] = R"(# minimal
[scenario]
name = mini

[net]
kind = coin

[window]
start = 100
end = 10000

[free_energy]
g = -2:2
resolution = 9

[grid]
x = -2:2:21
delta_count = 6
)";

int parse_error_line(const std::string& text) {
  try {
    parse_scenario(text, "inline.scn");
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string with_line_replaced(const std::string& text, int line,
                               const std::string& replacement) {
  std::istringstream in(text);
  std::string out, l;
  for (int n = 1; std::getline(in, l); ++n) {
    out += (n == line ? replacement : l) + "\n";
  }
  return out;
}

TEST(Scenario, MinimalUsesDefaults) {
  const auto sc = parse_scenario(kMinimal, "inline.scn");
  EXPECT_EQ(sc.name, "mini");
  EXPECT_TRUE(sc.checks.empty());
  EXPECT_EQ(sc.net.kind, "coin");
  EXPECT_EQ(sc.window.start_index, 100);
  EXPECT_EQ(sc.window.samples_per_decade, Defaults::kSamplesPerDecade);
  EXPECT_EQ(sc.limit_tol, Defaults::kLimitTol);
  EXPECT_EQ(sc.rate_tol, Defaults::kRateTol);
  EXPECT_EQ(sc.stability_tol, Defaults::kStabilityTol);
  EXPECT_FALSE(sc.linear.truncates_line);
  EXPECT_EQ(sc.linear.resolution, 9);
  EXPECT_EQ(sc.x_grid.size(), 21u);
  EXPECT_EQ(sc.delta_count, 6);
  EXPECT_TRUE(sc.write_csv);
  EXPECT_EQ(sc.threads, 1u);
}

TEST(Scenario, ShippedScenariosParse) {
  for (const char* name : {"ge-ex", "dem-zei", "cramer"}) {
    const auto sc = load_scenario(std::string(LDPKIT_DATA_DIR) + "/scenarios/" +
                                  name + ".scn");
    EXPECT_EQ(sc.name, name);
    EXPECT_FALSE(sc.checks.empty());
  }
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  const std::string base = kMinimal;
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 13, "g = 2:-2")), 13);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 6, "kind = coins")), 6);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 9, "begin = 100")), 9);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 3, "name = mini\nname = b")),
            4);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 8, "[windows]")), 8);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 14, "resolution = ten")), 14);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 17, "x = -2:2")), 17);
  EXPECT_EQ(parse_error_line(base + "[varadhan]\ntilts = linear:1, wiggly\n"), 20);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 3, "name = mini\nchecks = nope")),
            4);
  EXPECT_EQ(parse_error_line(with_line_replaced(base, 3, "no equals sign")), 3);
}

TEST(Scenario, MissingSectionIsAnError) {
  const std::string base = kMinimal;
  const auto cut = base.substr(0, base.find("[grid]"));
  EXPECT_THROW(parse_scenario(cut, "inline.scn"), ParseError);
}

TEST(Scenario, ParseTilt) {
  EXPECT_EQ(parse_tilt("linear:2").kind(), TiltFunction::Kind::kLinear);
  const auto ts = parse_tilt("two_slope:-1:3");
  EXPECT_EQ(ts.left_slope(), -1.0);
  EXPECT_EQ(ts.right_slope(), 3.0);
  EXPECT_EQ(parse_tilt("Q3")(0.0).value(), 0.0);
  EXPECT_THROW(parse_tilt("linear:x"), Error);
}

TEST(Scenario, BuildNetKinds) {
  NetConfig c;
  c.kind = "iid-mean";
  c.base = {{0.0, 0.5}, {1.0, 0.5}};
  c.max_n = 1000;
  EXPECT_EQ(build_net(c).max_index(), 1000);
  c = NetConfig{};
  c.kind = "coin";
  EXPECT_NO_THROW(build_net(c));
}

TEST(Pipeline, EmptyChecksGiveTablesOnly) {
  const auto sc = parse_scenario(kMinimal, "inline.scn");
  const auto r = run_pipeline(sc);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.all_gating_hold());
  const auto report = nlohmann::json::parse(render_report(r));
  EXPECT_EQ(report["schema_version"], kSchemaVersion);
  EXPECT_TRUE(report["checks"].empty());
  EXPECT_TRUE(report["verdict"]["all_gating_checks_hold"].get<bool>());
  for (const char* t : {"L", "lg_star", "abstract_star", "l0", "l1", "J"}) {
    EXPECT_TRUE(report["tables"].contains(t)) << t;
  }
}

TEST(Pipeline, ReportIsDeterministicAcrossThreadCounts) {
  auto sc = parse_scenario(kMinimal, "inline.scn");
  sc.checks = {"vague-ldp", "sandwich", "varadhan"};
  sc.varadhan_tilts = {{"linear:1", parse_tilt("linear:1")}};
  const auto a = render_report(run_pipeline(sc));
  sc.threads = 3;
  sc.source = "elsewhere.scn";
  const auto b = render_report(run_pipeline(sc));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(diff_reports(a, b, 0.0).empty());
}

TEST(Pipeline, InfinitiesAreStrings) {
  const auto r = run_pipeline(parse_scenario(kMinimal, "inline.scn"));
  const auto text = render_report(r);
  EXPECT_NE(text.find("\"inf\""), std::string::npos);
  EXPECT_EQ(text.find("Infinity"), std::string::npos);
  EXPECT_EQ(text.find("NaN"), std::string::npos);
  const auto tables = nlohmann::json::parse(text)["tables"].dump();
  EXPECT_EQ(tables.find("null"), std::string::npos);
}

TEST(Report, DiffFlagsChangedNumbersAndStructure) {
  const std::string golden = R"({"a": 1.0, "b": [1, "inf"], "c": {"d": "x"}})";
  EXPECT_TRUE(diff_reports(golden, golden, 0.0).empty());
  EXPECT_TRUE(
      diff_reports(R"({"a": 1.0000000001, "b": [1, "inf"], "c": {"d": "x"}})",
                   golden, 1e-9)
          .empty());
  EXPECT_FALSE(
      diff_reports(R"({"a": 1.1, "b": [1, "inf"], "c": {"d": "x"}})", golden, 1e-9)
          .empty());
  EXPECT_FALSE(
      diff_reports(R"({"a": 1.0, "b": [1, 2], "c": {"d": "x"}})", golden, 1e-9)
          .empty());
  EXPECT_FALSE(
      diff_reports(R"({"a": 1.0, "b": [1], "c": {"d": "x"}})", golden, 1e-9)
          .empty());
  EXPECT_FALSE(
      diff_reports(R"({"a": 1.0, "b": [1, "inf"], "c": {}})", golden, 1e-9)
          .empty());
}

TEST(Report, TablesRoundTripThroughCsv) {
  const auto r = run_pipeline(parse_scenario(kMinimal, "inline.scn"));
  const auto dir = std::filesystem::temp_directory_path() / "ldpkit_harness_test";
  std::filesystem::create_directories(dir);
  write_tables(r, dir.string());
  const auto J = load_grid_function((dir / "J.csv").string());
  EXPECT_EQ(J.xs(), r.vague.J.xs());
  EXPECT_EQ(J.values(), r.vague.J.values());
  const auto L = load_grid_function((dir / "L.csv").string());
  EXPECT_EQ(L.values(), r.L.values.values());
  std::filesystem::remove_all(dir);
}

TEST(FreeEnergy, RenderIsValidJson) {
  const auto sc = parse_scenario(kMinimal, "inline.scn");
  const auto j = nlohmann::json::parse(render_free_energy(sc, run_free_energy(sc)));
  EXPECT_TRUE(j["all_converged"].get<bool>());
}

}  // namespace
}  // namespace ldpkit::harness

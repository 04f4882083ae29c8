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

#include "ldpkit/harness/report.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json_util.h"
#include "ldpkit/convex.h"
#include "ldpkit/errors.h"
#include "ldpkit/ldp_verifier.h"

namespace ldpkit::harness {
namespace {

constexpr std::size_t kMaxFamilyRows = 1000;

Json window_json(const WindowSpec& w) {
  return Json{{"start_index", w.start_index},
              {"end_index", w.end_index},
              {"samples_per_decade", w.samples_per_decade},
              {"stride", w.stride},
              {"tail_start_index", w.tail_start()}};
}

Json family_spec_json(const FamilySpec& f) {
  Json j{{"description", f.describe()}};
  switch (f.kind) {
    case FamilySpec::Kind::kLinear:
      j["kind"] = "linear";
      j["g"] = Json::array({f.g.lo, f.g.hi});
      j["resolution"] = f.resolution;
      j["truncates_line"] = f.truncates_line;
      break;
    case FamilySpec::Kind::kTwoSlope:
      j["kind"] = "two_slope";
      j["lambda"] = Json::array({f.lambda_range.lo, f.lambda_range.hi});
      j["nu"] = Json::array({f.nu_range.lo, f.nu_range.hi});
      j["resolution"] = f.resolution;
      break;
    case FamilySpec::Kind::kQn:
      j["kind"] = "qn";
      j["n_max"] = f.n_max;
      break;
    case FamilySpec::Kind::kCustom:
      j["kind"] = "custom";
      j["labels"] = f.labels;
      break;
  }
  return j;
}

Json defaults_json() {
  return Json{{"limit_tol", Defaults::kLimitTol},
              {"rate_tol", Defaults::kRateTol},
              {"stability_tol", Defaults::kStabilityTol},
              {"sandwich_slack", Defaults::kSandwichSlack},
              {"filter_tol", Defaults::kFilterTol},
              {"slope_tol", Defaults::kSlopeTol},
              {"delta_count", Defaults::kDeltaCount},
              {"window_start", Defaults::kWindowStart},
              {"window_end", Defaults::kWindowEnd},
              {"samples_per_decade", Defaults::kSamplesPerDecade}};
}

Json scenario_json(const Scenario& sc) {
  Json net{{"kind", sc.net.kind}};
  if (sc.net.kind == "iid-mean") {
    Json base = Json::array();
    for (const auto& [x, m] : sc.net.base) base.push_back(Json::array({x, m}));
    net["base"] = base;
    net["max_n"] = sc.net.max_n;
  } else if (sc.net.kind == "dirac") {
    net["mass"] = sc.net.mass;
  } else if (sc.net.kind == "files") {
    net["measures"] = sc.net.measure_files;
    net["powers"] = sc.net.powers;
  }
  Json fe{{"linear", family_spec_json(sc.linear)}};
  if (sc.probe_g) {
    fe["probe"] = Json::array({sc.probe_g->lo, sc.probe_g->hi});
    fe["probe_resolution"] = sc.probe_resolution;
  }
  Json families = Json::array();
  for (const auto& f : sc.families) {
    Json j{{"name", f.name}};
    j.update(family_spec_json(f.spec));
    families.push_back(j);
  }
  Json tilts = Json::array();
  for (const auto& t : sc.varadhan_tilts) tilts.push_back(t.text);
  Json regions = Json::array();
  for (const auto& r : sc.bound_regions) regions.push_back(r.name);
  return Json{
      {"name", sc.name},
      {"checks", sc.checks},
      {"diagnostics", sc.diagnostics},
      {"net", net},
      {"window", window_json(sc.window)},
      {"tolerances",
       {{"limit", sc.limit_tol},
        {"rate", sc.rate_tol},
        {"stability", sc.stability_tol},
        {"sandwich", sc.sandwich_slack},
        {"filter", sc.filter_tol},
        {"slope", sc.slope_tol}}},
      {"free_energy", fe},
      {"families", families},
      {"ge_probe", sc.ge_probe ? family_spec_json(*sc.ge_probe) : Json(nullptr)},
      {"grid",
       {{"x", Json::array({sc.x_grid.front(), sc.x_grid.back(),
                           sc.x_grid.size()})},
        {"delta_count", sc.delta_count}}},
      {"varadhan_tilts", tilts},
      {"tightness", {{"eps", sc.tightness_eps}, {"radii", sc.tightness_radii}}},
      {"bounds", regions},
      {"defaults", defaults_json()}};
}

Json grid_table(const GridFunction& f, const Json& tags) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    rows.push_back(Json::array({f.x(i), ext_json(f.value(i))}));
  }
  Json j{{"label", f.label()}, {"columns", Json::array({"x", "value"})}};
  j.update(tags);
  j["rows"] = rows;
  return j;
}

Json free_energy_table(const FreeEnergyGrid& L, const Json& tags) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < L.values.size(); ++i) {
    const auto& e = L.estimates[i];
    rows.push_back(Json::array({L.values.x(i), ext_json(e.liminf_est),
                                ext_json(e.limsup_est), e.converged}));
  }
  Json j{{"columns", Json::array({"lambda", "liminf", "limsup", "converged"})}};
  j.update(tags);
  j["rows"] = rows;
  return j;
}

Json tilt_json(const TiltFunction& h) {
  switch (h.kind()) {
    case TiltFunction::Kind::kLinear:
      return Json{{"kind", "linear"}, {"lambda", h.left_slope()}};
    case TiltFunction::Kind::kTwoSlope:
      return Json{{"kind", "two_slope"},
                  {"lambda", h.left_slope()},
                  {"nu", h.right_slope()}};
    case TiltFunction::Kind::kCustom:
      break;
  }
  return Json{{"kind", "custom"}, {"label", h.label()}};
}

// Members shown in the report: integer slope pairs for two-slope families,
// an even stride of at most kMaxFamilyRows members otherwise.
std::vector<std::size_t> shown_members(const TiltFamily& family) {
  std::vector<std::size_t> idx;
  const auto& m = family.members();
  bool all_two_slope = !m.empty();
  for (const auto& h : m) {
    all_two_slope = all_two_slope && h.kind() == TiltFunction::Kind::kTwoSlope;
  }
  if (all_two_slope) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double l = m[i].left_slope();
      const double n = m[i].right_slope();
      if (l == std::round(l) && n == std::round(n)) idx.push_back(i);
    }
    return idx;
  }
  const std::size_t stride = (m.size() + kMaxFamilyRows - 1) / kMaxFamilyRows;
  for (std::size_t i = 0; i < m.size(); i += std::max<std::size_t>(stride, 1)) {
    idx.push_back(i);
  }
  return idx;
}

Json family_table(const FamilyEvaluation& fe, const Json& tags) {
  Json rows = Json::array();
  const auto idx = shown_members(fe.family);
  for (std::size_t i : idx) {
    const auto& e = fe.lambdas[i];
    Json row = tilt_json(fe.family.members()[i]);
    row["liminf"] = ext_json(e.liminf_est);
    row["limsup"] = ext_json(e.limsup_est);
    row["converged"] = e.converged;
    rows.push_back(row);
  }
  Json j{{"member_count", fe.family.size()}, {"shown", idx.size()}};
  j.update(tags);
  j["all_exist"] = fe.all_exist;
  j["rows"] = rows;
  return j;
}

Json verdict_json(const PipelineResult& r) {
  Json applicable = Json::array();
  Json failing = Json::array();
  Json notes = Json::array();
  const auto& range_ids = range_condition_ids();
  for (const auto& c : r.checks) {
    const bool is_range =
        std::find(range_ids.begin(), range_ids.end(), c.id) != range_ids.end();
    if (is_range && c.holds) applicable.push_back(c.id);
    if (!c.holds) failing.push_back(Json{{"id", c.id}, {"gating", c.gating}});
    if (!is_range || !c.holds) continue;
    const Json d = Json::parse(c.details_json);
    for (const auto& claim : d["conclusions"]) {
      if (claim["informational"].get<bool>() && !claim["holds"].get<bool>()) {
        notes.push_back(c.id + ": " + claim["claim"].get<std::string>() +
                        " fails, allowed by the theorem");
      }
    }
  }
  // Every range condition yields a vague principle; with 0 in G it is narrow.
  std::string principle = "not established";
  for (const auto& id : applicable) {
    const std::string s = id.get<std::string>();
    const bool ge = s == "GE-a" || s == "GE-b";
    const OpenInterval g =
        ge && r.scenario.ge_probe ? r.scenario.ge_probe->g : r.scenario.linear.g;
    if (g.lo < 0.0 && 0.0 < g.hi) {
      principle = "narrow";
    } else if (principle != "narrow") {
      principle = "vague";
    }
  }
  return Json{{"all_gating_checks_hold", r.all_gating_hold()},
              {"applicable_conditions", applicable},
              {"principle", principle},
              {"J_convex", is_convex_on_grid(r.vague.J)},
              {"failing_checks", failing},
              {"notes", notes}};
}

void walk_diff(const Json& a, const Json& g, const std::string& path,
               double tol, std::vector<std::string>& out) {
  if (out.size() >= 200) return;
  if (a.is_number() && g.is_number()) {
    const double x = a.get<double>();
    const double y = g.get<double>();
    if (!(std::fabs(x - y) <= tol * (1.0 + std::fabs(y)))) {
      out.push_back(path + ": " + a.dump() + " != golden " + g.dump());
    }
    return;
  }
  if (a.type() != g.type()) {
    out.push_back(path + ": " + a.dump() + " != golden " + g.dump());
    return;
  }
  if (a.is_object()) {
    for (auto it = g.begin(); it != g.end(); ++it) {
      if (!a.contains(it.key())) {
        out.push_back(path + "/" + it.key() + ": missing");
      } else {
        walk_diff(a[it.key()], it.value(), path + "/" + it.key(), tol, out);
      }
    }
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!g.contains(it.key())) {
        out.push_back(path + "/" + it.key() + ": not in golden");
      }
    }
    return;
  }
  if (a.is_array()) {
    if (a.size() != g.size()) {
      out.push_back(path + ": length " + std::to_string(a.size()) +
                    " != golden " + std::to_string(g.size()));
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      walk_diff(a[i], g[i], path + "/" + std::to_string(i), tol, out);
    }
    return;
  }
  if (a != g) out.push_back(path + ": " + a.dump() + " != golden " + g.dump());
}

}  // namespace

std::string render_report(const PipelineResult& r) {
  const Scenario& sc = r.scenario;
  const Json limit_tags{{"window", sc.window.describe()},
                        {"tolerance", sc.limit_tol}};
  const Json rate_tags{{"window", sc.window.describe()},
                       {"tolerance", sc.rate_tol},
                       {"delta_count", sc.delta_count}};
  const Json conj_tags{{"window", sc.window.describe()},
                       {"tolerance", sc.stability_tol}};

  Json tables;
  tables["lambda_zero"] = Json{{"liminf", ext_json(r.lambda_zero.liminf_est)},
                               {"limsup", ext_json(r.lambda_zero.limsup_est)},
                               {"converged", r.lambda_zero.converged},
                               {"window", sc.window.describe()},
                               {"tolerance", sc.limit_tol}};
  tables["L"] = free_energy_table(r.L, limit_tags);
  if (r.L_doubled) tables["L_doubled"] = free_energy_table(*r.L_doubled, limit_tags);
  if (r.L_probe) tables["L_probe"] = free_energy_table(*r.L_probe, limit_tags);
  Json fams = Json::array();
  for (const auto& f : r.families) {
    fams.push_back(Json{{"name", f.name},
                        {"description", f.description},
                        {"base", family_table(f.base, limit_tags)},
                        {"doubled", family_table(f.doubled, limit_tags)}});
  }
  tables["families"] = fams;
  tables["lg_star"] = grid_table(r.lg_star, conj_tags);
  tables["abstract_star"] = grid_table(r.abstract_star, conj_tags);
  tables["l0"] = grid_table(r.rates.l0, rate_tags);
  tables["l1"] = grid_table(r.rates.l1, rate_tags);
  tables["J"] = grid_table(r.vague.J, rate_tags);

  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"id", c.id},
                          {"gating", c.gating},
                          {"holds", c.holds},
                          {"details", Json::parse(c.details_json)}});
  }
  Json report{{"schema_version", kSchemaVersion},
              {"scenario", scenario_json(sc)},
              {"tables", tables},
              {"checks", checks},
              {"verdict", verdict_json(r)}};
  return report.dump(1) + "\n";
}

std::string render_free_energy(const Scenario& sc, const FreeEnergyGrid& L) {
  const Json tags{{"window", sc.window.describe()}, {"tolerance", sc.limit_tol}};
  Json report{{"schema_version", kSchemaVersion},
              {"scenario", scenario_json(sc)},
              {"tables", {{"L", free_energy_table(L, tags)}}},
              {"all_converged", L.all_converged()}};
  return report.dump(1) + "\n";
}

void write_tables(const PipelineResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  save_grid_function(r.L.values, (base / "L.csv").string());
  save_grid_function(r.lg_star, (base / "lg_star.csv").string());
  save_grid_function(r.abstract_star, (base / "abstract_star.csv").string());
  save_grid_function(r.rates.l0, (base / "l0.csv").string());
  save_grid_function(r.rates.l1, (base / "l1.csv").string());
  save_grid_function(r.vague.J, (base / "J.csv").string());
}

std::vector<std::string> diff_reports(const std::string& actual,
                                      const std::string& golden, double tol) {
  Json a;
  Json g;
  try {
    a = Json::parse(actual);
  } catch (const Json::parse_error& e) {
    return {std::string("report is not valid JSON: ") + e.what()};
  }
  try {
    g = Json::parse(golden);
  } catch (const Json::parse_error& e) {
    return {std::string("golden is not valid JSON: ") + e.what()};
  }
  std::vector<std::string> out;
  walk_diff(a, g, "", tol, out);
  return out;
}

}  // namespace ldpkit::harness

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

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ldpkit/convex.h"
#include "ldpkit/errors.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/harness/pipeline.h"
#include "ldpkit/harness/report.h"
#include "ldpkit/harness/scenario.h"

namespace fs = std::filesystem;
using namespace ldpkit;
using namespace ldpkit::harness;

namespace {

constexpr int kUsageError = 2;
const char* const kReproducible[] = {"ge-ex", "dem-zei"};

struct Overrides {
  double tol = 0.0;
  std::string window;
  unsigned threads = 0;
};

void apply(const Overrides& o, Scenario& sc) {
  if (o.tol > 0.0) {
    sc.limit_tol = o.tol;
    sc.rate_tol = o.tol;
    sc.stability_tol = o.tol;
  }
  if (!o.window.empty()) {
    const auto colon = o.window.find(':');
    if (colon == std::string::npos) {
      throw Error("cli_harness", "--window expects start:end");
    }
    try {
      sc.window.start_index = std::stoll(o.window.substr(0, colon));
      sc.window.end_index = std::stoll(o.window.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error("cli_harness", "--window expects integer start:end");
    }
  }
  if (o.threads > 0) sc.threads = o.threads;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli_harness", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cli_harness", "cannot write '" + path.string() + "'");
  out << text;
}

std::string base_dir_of(const std::string& path) {
  const fs::path p(path);
  return p.has_parent_path() ? p.parent_path().string() : ".";
}

void print_summary(const PipelineResult& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.holds ? "HOLDS " : "FAILS ") << c.id
              << (c.gating ? "" : " (diagnostic)") << "\n";
  }
}

// Runs the pipeline, writes report.json and tables under out_dir/<name>.
PipelineResult run_and_write(const Scenario& sc, const std::string& base_dir,
                             const std::string& out_dir, std::string* report) {
  PipelineResult r = run_pipeline(sc, base_dir);
  *report = render_report(r);
  const fs::path dir = fs::path(out_dir) / sc.name;
  write_file(dir / "report.json", *report);
  if (sc.write_csv) write_tables(r, dir.string());
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ldpkit: large deviation checks for scaled measure nets"};
  app.require_subcommand(1);
  Overrides o;
  std::string out_dir = "ldpkit-out";
  app.add_option("--tol", o.tol,
                 "Override the limit, rate and stability tolerances")
      ->check(CLI::PositiveNumber);
  app.add_option("--window", o.window, "Override the index window start:end");
  app.add_option("--threads", o.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--out-dir", out_dir, "Directory for reports and CSV tables");

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario file")->required();

  std::string conj_in;
  std::string conj_out;
  std::string dual_grid;
  auto* conj = app.add_subcommand(
      "conjugate", "Legendre-Fenchel transform of a grid CSV");
  conj->add_option("input", conj_in, "Input x,value CSV")->required();
  conj->add_option("output", conj_out, "Output CSV")->required();
  conj->add_option("--dual-grid", dual_grid, "Dual grid lo:hi:n")->required();

  std::string fe_path;
  auto* fe = app.add_subcommand("free-energy", "Tabulate L on G for a scenario");
  fe->add_option("scenario", fe_path, "Scenario file")->required();

  std::string repro_name;
  std::string data_dir = LDPKIT_DATA_DIR;
  double golden_tol = 1e-9;
  bool update_golden = false;
  auto* repro =
      app.add_subcommand("reproduce", "Run a canned scenario against its golden");
  repro->add_option("name", repro_name, "ge-ex or dem-zei")->required();
  repro->add_option("--data-dir", data_dir, "Scenario and golden root");
  repro->add_option("--golden-tol", golden_tol,
                    "Relative tolerance for numbers in the golden diff");
  repro->add_flag("--update-golden", update_golden,
                  "Overwrite the golden with this run's report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Scenario sc = load_scenario(scenario_path);
      apply(o, sc);
      std::string report;
      const auto r =
          run_and_write(sc, base_dir_of(scenario_path), out_dir, &report);
      print_summary(r);
      std::cout << "report: "
                << (fs::path(out_dir) / sc.name / "report.json").string()
                << "\n";
      return r.all_gating_hold() ? 0 : 1;
    }
    if (*conj) {
      const GridFunction f = load_grid_function(conj_in);
      GridFunction g = lf_transform(f, parse_grid_spec(dual_grid));
      save_grid_function(g, conj_out);
      return 0;
    }
    if (*fe) {
      Scenario sc = load_scenario(fe_path);
      apply(o, sc);
      const FreeEnergyGrid L = run_free_energy(sc, base_dir_of(fe_path));
      const std::string text = render_free_energy(sc, L);
      write_file(fs::path(out_dir) / sc.name / "free_energy.json", text);
      if (sc.write_csv) {
        fs::create_directories(fs::path(out_dir) / sc.name);
        save_grid_function(L.values,
                           (fs::path(out_dir) / sc.name / "L.csv").string());
      }
      std::cout << text;
      return L.all_converged() ? 0 : 1;
    }
    if (*repro) {
      bool known = false;
      for (const char* n : kReproducible) known = known || repro_name == n;
      if (!known) {
        std::cerr << "unknown example '" << repro_name
                  << "'; valid names: ge-ex, dem-zei\n";
        return kUsageError;
      }
      const fs::path scn =
          fs::path(data_dir) / "scenarios" / (repro_name + ".scn");
      const fs::path golden =
          fs::path(data_dir) / "golden" / (repro_name + ".json");
      Scenario sc = load_scenario(scn.string());
      apply(o, sc);
      std::string report;
      const auto r =
          run_and_write(sc, scn.parent_path().string(), out_dir, &report);
      print_summary(r);
      if (update_golden) {
        write_file(golden, report);
        std::cout << "golden updated: " << golden.string() << "\n";
        return r.all_gating_hold() ? 0 : 1;
      }
      const auto diffs = diff_reports(report, read_file(golden.string()),
                                      golden_tol);
      for (const auto& d : diffs) std::cout << "golden mismatch " << d << "\n";
      if (!diffs.empty()) return 1;
      std::cout << "matches golden " << golden.string() << "\n";
      return r.all_gating_hold() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

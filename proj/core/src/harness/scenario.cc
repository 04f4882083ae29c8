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

#include "ldpkit/harness/scenario.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ldpkit/errors.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/ldp_verifier.h"

namespace ldpkit::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

// One [section] of the file.
class Section {
 public:
  Section(std::string name, int line, const std::string* source)
      : name_(std::move(name)), line_(line), source_(source) {}

  void add(const std::string& key, const std::string& value, int line) {
    if (entries_.count(key)) {
      throw ParseError(*source_, line,
                       "duplicate key '" + key + "' in [" + name_ + "]");
    }
    entries_[key] = Entry{value, line, false};
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const std::string& name() const { return name_; }
  int line() const { return line_; }

  const Entry& raw(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ParseError(*source_, line_,
                       "[" + name_ + "] is missing key '" + key + "'");
    }
    it->second.used = true;
    return it->second;
  }

  std::string text(const std::string& key) { return raw(key).value; }

  double number(const std::string& key) {
    const Entry& e = raw(key);
    return parse_number(e.value, e.line);
  }

  std::int64_t integer(const std::string& key) {
    const Entry& e = raw(key);
    char* end = nullptr;
    const long long v = std::strtoll(e.value.c_str(), &end, 10);
    if (e.value.empty() || *end != '\0') fail(e.line, "expected an integer");
    return v;
  }

  bool boolean(const std::string& key) {
    const Entry& e = raw(key);
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    fail(e.line, "expected true or false");
    return false;
  }

  std::vector<std::string> list(const std::string& key) {
    std::vector<std::string> out;
    for (auto& item : split(raw(key).value, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  std::vector<double> numbers(const std::string& key) {
    const Entry& e = raw(key);
    std::vector<double> out;
    for (const auto& item : split(e.value, ',')) {
      if (!item.empty()) out.push_back(parse_number(item, e.line));
    }
    return out;
  }

  // "lo:hi"
  std::pair<double, double> range(const std::string& key) {
    const Entry& e = raw(key);
    const auto parts = split(e.value, ':');
    if (parts.size() != 2) fail(e.line, "expected lo:hi");
    const double lo = parse_number(parts[0], e.line);
    const double hi = parse_number(parts[1], e.line);
    if (!(lo < hi)) fail(e.line, "range needs lo < hi");
    return {lo, hi};
  }

  int line_of(const std::string& key) { return raw(key).line; }

  [[noreturn]] void fail(int line, const std::string& what) const {
    throw ParseError(*source_, line, "[" + name_ + "] " + what);
  }

  void check_all_used() const {
    for (const auto& [key, e] : entries_) {
      if (!e.used) {
        throw ParseError(*source_, e.line,
                         "unknown key '" + key + "' in [" + name_ + "]");
      }
    }
  }

 private:
  double parse_number(const std::string& s, int line) const {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) {
      fail(line, "bad number '" + s + "'");
    }
    return v;
  }

  std::string name_;
  int line_;
  const std::string* source_;
  std::map<std::string, Entry> entries_;
};

FamilySpec parse_family(Section& s, const std::string& source) {
  FamilySpec spec;
  const std::string kind = s.text("kind");
  try {
    if (kind == "linear") {
      spec.kind = FamilySpec::Kind::kLinear;
      const auto [lo, hi] = s.range("g");
      spec.g = {lo, hi};
      spec.resolution = static_cast<int>(s.integer("resolution"));
      if (s.has("truncates_line")) spec.truncates_line = s.boolean("truncates_line");
    } else if (kind == "two_slope") {
      spec.kind = FamilySpec::Kind::kTwoSlope;
      const auto [llo, lhi] = s.range("lambda");
      const auto [nlo, nhi] = s.range("nu");
      spec.lambda_range = {llo, lhi};
      spec.nu_range = {nlo, nhi};
      spec.resolution = static_cast<int>(s.integer("resolution"));
    } else if (kind == "qn") {
      spec.kind = FamilySpec::Kind::kQn;
      spec.n_max = static_cast<int>(s.integer("n_max"));
    } else if (kind == "custom") {
      spec.kind = FamilySpec::Kind::kCustom;
      spec.labels = s.list("labels");
    } else {
      s.fail(s.line_of("kind"), "unknown family kind '" + kind +
                                    "' (linear, two_slope, qn, custom)");
    }
    TiltFamily::Expand(spec);  // validates parameters
  } catch (const Error& e) {
    throw ParseError(source, s.line(), e.what());
  }
  return spec;
}

}  // namespace

const std::vector<std::string>& known_check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v = range_condition_ids();
    for (const char* id : {"vague-ldp", "exp-tightness", "ldp-bounds",
                           "sandwich", "lem-x+", "varadhan", "stability",
                           "ess-smooth"}) {
      v.push_back(id);
    }
    return v;
  }();
  return ids;
}

TiltFunction parse_tilt(const std::string& text) {
  const auto parts = split(text, ':');
  auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) {
      throw Error("tilt_functions", "bad tilt parameter in '" + text + "'");
    }
    return v;
  };
  if (parts[0] == "linear" && parts.size() == 2) {
    return TiltFunction::Linear(number(parts[1]));
  }
  if (parts[0] == "two_slope" && parts.size() == 3) {
    return TiltFunction::TwoSlope(number(parts[1]), number(parts[2]));
  }
  if (parts.size() == 1) return find_custom_tilt(parts[0]);
  throw Error("tilt_functions", "bad tilt '" + text +
                                    "' (linear:<l>, two_slope:<l>:<n> or a "
                                    "registered label)");
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(source, line_no, "malformed section header");
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      for (const auto& s : sections) {
        if (s.name() == name) {
          throw ParseError(source, line_no, "duplicate section [" + name + "]");
        }
      }
      sections.emplace_back(name, line_no, &source);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line_no, "expected 'key = value'");
    }
    if (sections.empty()) {
      throw ParseError(source, line_no, "key outside of any section");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    sections.back().add(key, trim(line.substr(eq + 1)), line_no);
  }

  auto find = [&](const std::string& name) -> Section* {
    for (auto& s : sections) {
      if (s.name() == name) return &s;
    }
    return nullptr;
  };
  auto require = [&](const std::string& name) -> Section& {
    Section* s = find(name);
    if (!s) throw ParseError(source, line_no, "missing section [" + name + "]");
    return *s;
  };

  Scenario sc;
  sc.source = source;
  {
    Section& s = require("scenario");
    sc.name = s.text("name");
    if (sc.name.empty() ||
        sc.name.find_first_of("/\\ ") != std::string::npos) {
      s.fail(s.line_of("name"), "name must be a nonempty word");
    }
    if (s.has("checks")) sc.checks = s.list("checks");
    if (s.has("diagnostics")) sc.diagnostics = s.list("diagnostics");
    const auto& known = known_check_ids();
    for (const auto* list : {&sc.checks, &sc.diagnostics}) {
      for (const auto& id : *list) {
        if (std::find(known.begin(), known.end(), id) == known.end()) {
          s.fail(s.line_of(list == &sc.checks ? "checks" : "diagnostics"),
                 "unknown check id '" + id + "'");
        }
      }
    }
  }
  {
    Section& s = require("net");
    sc.net.kind = s.text("kind");
    const std::string& k = sc.net.kind;
    if (k == "iid-mean") {
      const int ln = s.line_of("base");
      for (const auto& item : s.list("base")) {
        const auto p = split(item, ':');
        char* e1 = nullptr;
        char* e2 = nullptr;
        if (p.size() != 2) s.fail(ln, "base atoms are written x:mass");
        const double x = std::strtod(p[0].c_str(), &e1);
        const double m = std::strtod(p[1].c_str(), &e2);
        if (*e1 != '\0' || *e2 != '\0' || p[0].empty() || p[1].empty()) {
          s.fail(ln, "bad base atom '" + item + "'");
        }
        sc.net.base.emplace_back(x, m);
      }
      sc.net.max_n = s.integer("max_n");
    } else if (k == "dirac") {
      if (s.has("mass")) sc.net.mass = s.number("mass");
    } else if (k == "files") {
      sc.net.measure_files = s.list("measures");
      sc.net.powers = s.numbers("powers");
      if (sc.net.powers.size() != sc.net.measure_files.size()) {
        s.fail(s.line_of("powers"), "one power per measure file required");
      }
    } else if (k != "coin" && k != "dem-zei" && k != "escaping-dirac") {
      s.fail(s.line_of("kind"),
             "unknown net kind '" + k +
                 "' (coin, dem-zei, iid-mean, dirac, escaping-dirac, files)");
    }
    s.check_all_used();
  }
  sc.window.start_index = Defaults::kWindowStart;
  sc.window.end_index = Defaults::kWindowEnd;
  sc.window.samples_per_decade = Defaults::kSamplesPerDecade;
  if (Section* s = find("window")) {
    if (s->has("start")) sc.window.start_index = s->integer("start");
    if (s->has("end")) sc.window.end_index = s->integer("end");
    if (s->has("samples_per_decade")) {
      sc.window.samples_per_decade =
          static_cast<int>(s->integer("samples_per_decade"));
    }
    if (s->has("stride")) sc.window.stride = s->integer("stride");
    s->check_all_used();
  }
  if (Section* s = find("tolerance")) {
    struct Key {
      const char* name;
      double* slot;
    };
    for (const Key& key : {Key{"limit", &sc.limit_tol}, Key{"rate", &sc.rate_tol},
                           Key{"stability", &sc.stability_tol},
                           Key{"sandwich", &sc.sandwich_slack},
                           Key{"filter", &sc.filter_tol},
                           Key{"slope", &sc.slope_tol}}) {
      if (!s->has(key.name)) continue;
      *key.slot = s->number(key.name);
      if (!(*key.slot > 0.0)) {
        s->fail(s->line_of(key.name), "tolerances must be positive");
      }
    }
    s->check_all_used();
  }
  {
    Section& s = require("free_energy");
    sc.linear.kind = FamilySpec::Kind::kLinear;
    const auto [lo, hi] = s.range("g");
    sc.linear.g = {lo, hi};
    sc.linear.resolution = static_cast<int>(s.integer("resolution"));
    if (s.has("truncates_line")) sc.linear.truncates_line = s.boolean("truncates_line");
    if (s.has("probe")) {
      const auto [plo, phi] = s.range("probe");
      sc.probe_g = OpenInterval{plo, phi};
      sc.probe_resolution = static_cast<int>(s.integer("probe_resolution"));
    }
    try {
      linear_family_slopes(sc.linear.g, sc.linear.resolution);
      if (sc.probe_g) linear_family_slopes(*sc.probe_g, sc.probe_resolution);
    } catch (const Error& e) {
      throw ParseError(source, s.line(), e.what());
    }
    s.check_all_used();
  }
  for (auto& s : sections) {
    if (s.name().rfind("family.", 0) != 0) continue;
    const std::string fname = s.name().substr(7);
    if (fname.empty()) s.fail(s.line(), "family needs a name");
    sc.families.push_back(NamedFamily{fname, parse_family(s, source)});
    s.check_all_used();
  }
  if (Section* s = find("ge_probe")) {
    FamilySpec p;
    p.kind = FamilySpec::Kind::kLinear;
    const auto [lo, hi] = s->range("g");
    p.g = {lo, hi};
    p.resolution = static_cast<int>(s->integer("resolution"));
    sc.ge_probe = p;
    s->check_all_used();
  }
  {
    Section& s = require("grid");
    try {
      sc.x_grid = parse_grid_spec(s.text("x"));
    } catch (const Error& e) {
      s.fail(s.line_of("x"), e.what());
    }
    if (s.has("delta_count")) {
      sc.delta_count = static_cast<int>(s.integer("delta_count"));
      if (sc.delta_count < 1 || sc.delta_count > 60) {
        s.fail(s.line_of("delta_count"), "delta_count must be in [1, 60]");
      }
    }
    s.check_all_used();
  }
  if (Section* s = find("varadhan")) {
    const int ln = s->line_of("tilts");
    for (const auto& t : s->list("tilts")) {
      try {
        sc.varadhan_tilts.push_back(TiltConfig{t, parse_tilt(t)});
      } catch (const Error& e) {
        s->fail(ln, e.what());
      }
    }
    s->check_all_used();
  }
  if (Section* s = find("tightness")) {
    if (s->has("eps")) sc.tightness_eps = s->numbers("eps");
    if (s->has("radii")) sc.tightness_radii = s->numbers("radii");
    s->check_all_used();
  }
  if (Section* s = find("bounds")) {
    for (const char* kind : {"closed", "open"}) {
      if (!s->has(kind)) continue;
      const int ln = s->line_of(kind);
      for (const auto& item : s->list(kind)) {
        const auto p = split(item, ':');
        char* e1 = nullptr;
        char* e2 = nullptr;
        if (p.size() != 2) s->fail(ln, "regions are written lo:hi");
        const double lo = std::strtod(p[0].c_str(), &e1);
        const double hi = std::strtod(p[1].c_str(), &e2);
        if (*e1 != '\0' || *e2 != '\0' || p[0].empty() || p[1].empty() ||
            !(lo <= hi)) {
          s->fail(ln, "bad region '" + item + "'");
        }
        const bool closed = std::string(kind) == "closed";
        std::string name = closed ? "[" : "(";
        name += p[0] + "," + p[1] + (closed ? "]" : ")");
        sc.bound_regions.push_back(RegionConfig{name, closed, lo, hi});
      }
    }
    s->check_all_used();
  }
  if (Section* s = find("output")) {
    if (s->has("csv")) sc.write_csv = s->boolean("csv");
    s->check_all_used();
  }
  if (Section* s = find("run")) {
    if (s->has("threads")) {
      const auto t = s->integer("threads");
      if (t < 1 || t > 256) s->fail(s->line_of("threads"), "threads in [1, 256]");
      sc.threads = static_cast<unsigned>(t);
    }
    s->check_all_used();
  }
  static const std::set<std::string> known_sections = {
      "scenario", "net",      "window",    "tolerance", "free_energy",
      "ge_probe", "grid",     "varadhan",  "tightness", "bounds",
      "output",   "run"};
  for (auto& s : sections) {
    if (s.name().rfind("family.", 0) == 0) continue;
    if (!known_sections.count(s.name())) {
      throw ParseError(source, s.line(), "unknown section [" + s.name() + "]");
    }
    s.check_all_used();
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli_harness", "cannot open scenario '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

ScaledMeasureNet build_net(const NetConfig& config,
                           const std::string& base_dir) {
  const std::string& k = config.kind;
  if (k == "coin") return coin_example_net();
  if (k == "dem-zei") return demzei_example_net();
  if (k == "escaping-dirac") return escaping_dirac_net();
  if (k == "dirac") return dirac_net(config.mass);
  if (k == "iid-mean") {
    return iid_mean_example_net(FiniteSupportMeasure::FromMasses(config.base),
                                config.max_n);
  }
  if (k == "files") {
    std::vector<FiniteSupportMeasure> measures;
    for (const auto& f : config.measure_files) {
      std::filesystem::path p(f);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      measures.push_back(load_measure(p.string()));
    }
    return explicit_net("files", std::move(measures), config.powers);
  }
  throw Error("cli_harness", "unknown net kind '" + k + "'");
}

}  // namespace ldpkit::harness

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

#include "ldpkit/grid_function.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ldpkit/errors.h"

namespace ldpkit {

GridFunction::GridFunction(std::vector<double> xs, std::vector<ExtReal> values,
                           std::string label, GridEdges edges)
    : xs_(std::move(xs)),
      values_(std::move(values)),
      label_(std::move(label)),
      edges_(edges) {
  if (xs_.size() != values_.size()) {
    throw Error("convex_analysis", "grid and values differ in length");
  }
  if (xs_.size() < 2) {
    throw Error("convex_analysis", "grid function needs at least two points");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || (i > 0 && !(xs_[i] > xs_[i - 1]))) {
      throw Error("convex_analysis",
                  "grid must be finite and strictly increasing");
    }
  }
}

bool GridFunction::proper() const {
  return std::any_of(values_.begin(), values_.end(),
                     [](ExtReal v) { return v.is_finite(); });
}

bool GridFunction::has_neg_inf() const {
  return std::any_of(values_.begin(), values_.end(),
                     [](ExtReal v) { return v.is_neg_inf(); });
}

std::size_t GridFunction::find(double x) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  const double tol = 1e-12 * std::max(1.0, std::fabs(x));
  std::size_t best = npos;
  double best_d = tol;
  for (auto c : {it, it == xs_.begin() ? it : it - 1}) {
    if (c == xs_.end()) continue;
    const double d = std::fabs(*c - x);
    if (d <= best_d) {
      best_d = d;
      best = static_cast<std::size_t>(c - xs_.begin());
    }
  }
  return best;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error("convex_analysis", "uniform grid needs lo < hi and n >= 2");
  }
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
  xs.back() = hi;
  return xs;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  auto bad = [&]() {
    return Error("convex_analysis",
                 "grid spec '" + spec + "' is not of the form lo:hi:n");
  };
  if (parts.size() != 3) throw bad();
  char* end = nullptr;
  const double lo = std::strtod(parts[0].c_str(), &end);
  if (parts[0].empty() || *end != '\0') throw bad();
  const double hi = std::strtod(parts[1].c_str(), &end);
  if (parts[1].empty() || *end != '\0') throw bad();
  const long n = std::strtol(parts[2].c_str(), &end, 10);
  if (parts[2].empty() || *end != '\0' || n < 2 || n > 100000000) throw bad();
  return uniform_grid(lo, hi, static_cast<int>(n));
}

std::string grid_function_to_csv(const GridFunction& f) {
  std::string out = "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += format_ext(f.x(i)) + "," + format_ext(f.value(i)) + "\n";
  }
  return out;
}

GridFunction grid_function_from_csv(const std::string& text,
                                    const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<double> xs;
  std::vector<ExtReal> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos ||
        line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(source_name, line_no, "expected 'x,value'");
    }
    const std::string xf = line.substr(0, comma);
    const std::string vf = line.substr(comma + 1);
    if (xs.empty() && values.empty() && xf.find('x') != std::string::npos) {
      continue;  // header
    }
    ExtReal x, v;
    try {
      x = parse_ext(xf);
      v = parse_ext(vf);
    } catch (const std::exception& e) {
      throw ParseError(source_name, line_no, e.what());
    }
    if (!x.is_finite()) {
      throw ParseError(source_name, line_no, "grid point must be finite");
    }
    if (!xs.empty() && !(x.value() > xs.back())) {
      throw ParseError(source_name, line_no,
                       "grid points must be strictly increasing");
    }
    xs.push_back(x.value());
    values.push_back(v);
  }
  if (xs.size() < 2) {
    throw ParseError(source_name, line_no, "need at least two grid points");
  }
  return GridFunction(std::move(xs), std::move(values));
}

void save_grid_function(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("convex_analysis", "cannot write '" + path + "'");
  out << grid_function_to_csv(f);
  if (!out) throw Error("convex_analysis", "write to '" + path + "' failed");
}

GridFunction load_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("convex_analysis", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return grid_function_from_csv(buf.str(), path);
}

}  // namespace ldpkit

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

#ifndef LDPKIT_GRID_FUNCTION_H_
#define LDPKIT_GRID_FUNCTION_H_

#include <string>
#include <vector>

#include "ldpkit/ext_real.h"

namespace ldpkit {

// How the first and last grid points relate to the sampled function.
// kTruncated: the grid is a window onto a function that continues beyond it,
// so the grid ends are not boundaries of the effective domain.
// kDomainBoundary: the function is +inf beyond the grid.
enum class GridEdges { kTruncated, kDomainBoundary };

// Extended-real function sampled on a strictly increasing grid of at least
// two points. Between grid points it is read as piecewise linear; outside
// [xs.front(), xs.back()] as +inf.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> xs, std::vector<ExtReal> values,
               std::string label = {},
               GridEdges edges = GridEdges::kTruncated);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<ExtReal>& values() const { return values_; }
  std::size_t size() const { return xs_.size(); }
  double x(std::size_t i) const { return xs_[i]; }
  ExtReal value(std::size_t i) const { return values_[i]; }

  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  GridEdges edges() const { return edges_; }
  void set_edges(GridEdges edges) { edges_ = edges; }

  // At least one finite value.
  bool proper() const;
  bool has_neg_inf() const;
  // Index of the grid point equal to x (within 1e-12 relative), or npos.
  std::size_t find(double x) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<double> xs_;
  std::vector<ExtReal> values_;
  std::string label_;
  GridEdges edges_ = GridEdges::kTruncated;
};

// n evenly spaced points lo + (hi - lo) i / (n - 1), i = 0..n-1.
std::vector<double> uniform_grid(double lo, double hi, int n);

// Parses "lo:hi:n".
std::vector<double> parse_grid_spec(const std::string& spec);

// CSV "x,value" with literal "inf"/"-inf"; values written with 17
// significant digits. An optional "x,value" header line is accepted.
std::string grid_function_to_csv(const GridFunction& f);
GridFunction grid_function_from_csv(const std::string& text,
                                    const std::string& source_name);
void save_grid_function(const GridFunction& f, const std::string& path);
GridFunction load_grid_function(const std::string& path);

}  // namespace ldpkit

#endif  // LDPKIT_GRID_FUNCTION_H_

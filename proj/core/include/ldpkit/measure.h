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

#ifndef LDPKIT_MEASURE_H_
#define LDPKIT_MEASURE_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldpkit/ext_real.h"
#include "ldpkit/tilt.h"

namespace ldpkit {

// One interval of the real line with explicit endpoint openness.
// Infinite endpoints are always treated as open.
struct Interval {
  ExtReal lo;
  ExtReal hi;
  bool lo_open = true;
  bool hi_open = true;

  bool contains(double x) const;
  bool empty() const;
};

// Finite union of pairwise disjoint intervals, sorted by lower endpoint.
class RegionSet {
 public:
  RegionSet() = default;
  explicit RegionSet(std::vector<Interval> intervals);

  static RegionSet Empty() { return RegionSet(); }
  static RegionSet Whole();
  static RegionSet Open(ExtReal lo, ExtReal hi);
  static RegionSet Closed(double lo, double hi);
  static RegionSet Point(double x) { return Closed(x, x); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;

  // Complement within the real line.
  RegionSet complement() const;
  RegionSet unite(const RegionSet& other) const;
  RegionSet intersect(const RegionSet& other) const;

  std::string describe() const;

 private:
  std::vector<Interval> intervals_;
};

struct Atom {
  double location = 0.0;
  double log_mass = 0.0;

  double mass() const;
};

// Sub-probability measure with finitely many atoms. Masses are held in log
// scale so that masses below the smallest double stay strictly positive.
// Atoms are sorted, pairwise distinct (atoms closer than kMergeDistance are
// merged at construction) and the total mass is at most 1.
class FiniteSupportMeasure {
 public:
  static constexpr double kMergeDistance = 1e-12;

  FiniteSupportMeasure() = default;

  // (location, mass) pairs in any order; masses must be > 0.
  static FiniteSupportMeasure FromMasses(
      std::vector<std::pair<double, double>> atoms);
  // (location, log mass) pairs in any order; log masses must be > -inf.
  static FiniteSupportMeasure FromLogMasses(
      std::vector<std::pair<double, double>> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_zero() const { return atoms_.empty(); }

  double log_total_mass() const;
  double total_mass() const;

  // log mu(I); -inf when the interval holds no atom. O(log n).
  double log_mass_in(const Interval& interval) const;
  double log_mass_in(const RegionSet& region) const;

 private:
  void build_index();

  std::vector<Atom> atoms_;
  // Segment tree of log-sum-exp over atom log masses, leaves at [n, 2n).
  std::vector<double> tree_;
};

// t log sum_i m_i e^{h(x_i)/t}, evaluated with the maximum exponent shifted
// out. -inf for the zero measure or when h is -inf on the whole support.
ExtReal exp_power_integral(const FiniteSupportMeasure& m,
                           const TiltFunction& h, double t);

// Same integral restricted to the atoms where h > threshold.
ExtReal exp_power_integral_above(const FiniteSupportMeasure& m,
                                 const TiltFunction& h, double t,
                                 double threshold);

// mu(r)^t with 0^t = 0.
double region_power_mass(const FiniteSupportMeasure& m, const RegionSet& r,
                         double t);

// Text format: one "location,mass" pair per line, '#' starts a comment,
// locations strictly increasing. Throws ParseError naming the line.
FiniteSupportMeasure load_measure(const std::string& path);
FiniteSupportMeasure parse_measure(const std::string& text,
                                   const std::string& source_name);

}  // namespace ldpkit

#endif  // LDPKIT_MEASURE_H_

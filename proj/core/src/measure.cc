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

#include "ldpkit/measure.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "ldpkit/errors.h"

namespace ldpkit {
namespace {

constexpr double kNegInfD = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInfD) return b;
  if (b == kNegInfD) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// Orders lower endpoints: closed before open at equal values.
bool lower_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return !a.lo_open && b.lo_open;
}

Interval normalized(Interval iv) {
  if (!iv.lo.is_finite()) iv.lo_open = true;
  if (!iv.hi.is_finite()) iv.hi_open = true;
  return iv;
}

std::string endpoint(ExtReal v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  std::ostringstream os;
  os << v.value();
  return os.str();
}

}  // namespace

bool Interval::contains(double x) const {
  const ExtReal v(x);
  const bool above = lo_open ? lo < v : lo <= v;
  const bool below = hi_open ? v < hi : v <= hi;
  return above && below;
}

bool Interval::empty() const {
  if (hi < lo) return true;
  if (lo == hi) return lo_open || hi_open || !lo.is_finite();
  return false;
}

RegionSet::RegionSet(std::vector<Interval> intervals) {
  std::vector<Interval> kept;
  for (auto iv : intervals) {
    iv = normalized(iv);
    if (!iv.empty()) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), lower_before);
  for (const auto& iv : kept) {
    if (!intervals_.empty()) {
      Interval& last = intervals_.back();
      const bool touches =
          iv.lo < last.hi ||
          (iv.lo == last.hi && (!last.hi_open || !iv.lo_open));
      if (touches) {
        if (last.hi < iv.hi) {
          last.hi = iv.hi;
          last.hi_open = iv.hi_open;
        } else if (last.hi == iv.hi) {
          last.hi_open = last.hi_open && iv.hi_open;
        }
        continue;
      }
    }
    intervals_.push_back(iv);
  }
}

RegionSet RegionSet::Whole() { return Open(kNegInf, kPosInf); }

RegionSet RegionSet::Open(ExtReal lo, ExtReal hi) {
  return RegionSet({Interval{lo, hi, true, true}});
}

RegionSet RegionSet::Closed(double lo, double hi) {
  return RegionSet({Interval{lo, hi, false, false}});
}

bool RegionSet::contains(double x) const {
  for (const auto& iv : intervals_) {
    if (iv.contains(x)) return true;
  }
  return false;
}

RegionSet RegionSet::complement() const {
  std::vector<Interval> out;
  ExtReal lo = kNegInf;
  bool lo_open = true;
  for (const auto& iv : intervals_) {
    out.push_back(Interval{lo, iv.lo, lo_open, !iv.lo_open});
    lo = iv.hi;
    lo_open = !iv.hi_open;
  }
  out.push_back(Interval{lo, kPosInf, lo_open, true});
  return RegionSet(std::move(out));
}

RegionSet RegionSet::unite(const RegionSet& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return RegionSet(std::move(all));
}

RegionSet RegionSet::intersect(const RegionSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : intervals_) {
    for (const auto& b : other.intervals_) {
      Interval c;
      if (a.lo > b.lo) {
        c.lo = a.lo;
        c.lo_open = a.lo_open;
      } else if (b.lo > a.lo) {
        c.lo = b.lo;
        c.lo_open = b.lo_open;
      } else {
        c.lo = a.lo;
        c.lo_open = a.lo_open || b.lo_open;
      }
      if (a.hi < b.hi) {
        c.hi = a.hi;
        c.hi_open = a.hi_open;
      } else if (b.hi < a.hi) {
        c.hi = b.hi;
        c.hi_open = b.hi_open;
      } else {
        c.hi = a.hi;
        c.hi_open = a.hi_open || b.hi_open;
      }
      out.push_back(c);
    }
  }
  return RegionSet(std::move(out));
}

std::string RegionSet::describe() const {
  if (intervals_.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (i > 0) out += " U ";
    if (iv.lo == iv.hi) {
      out += "{" + endpoint(iv.lo) + "}";
      continue;
    }
    out += iv.lo_open ? "(" : "[";
    out += endpoint(iv.lo) + "," + endpoint(iv.hi);
    out += iv.hi_open ? ")" : "]";
  }
  return out;
}

double Atom::mass() const { return std::exp(log_mass); }

FiniteSupportMeasure FiniteSupportMeasure::FromMasses(
    std::vector<std::pair<double, double>> atoms) {
  for (auto& [x, m] : atoms) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw Error("measure_net", "atom mass must be positive and finite");
    }
    m = std::log(m);
  }
  return FromLogMasses(std::move(atoms));
}

FiniteSupportMeasure FiniteSupportMeasure::FromLogMasses(
    std::vector<std::pair<double, double>> atoms) {
  for (const auto& [x, lm] : atoms) {
    if (!std::isfinite(x)) {
      throw Error("measure_net", "atom location must be finite");
    }
    if (std::isnan(lm) || lm == kNegInfD || lm == -kNegInfD) {
      throw Error("measure_net", "atom log mass must be finite");
    }
  }
  std::sort(atoms.begin(), atoms.end());
  FiniteSupportMeasure m;
  for (const auto& [x, lm] : atoms) {
    if (!m.atoms_.empty() &&
        x - m.atoms_.back().location < kMergeDistance) {
      m.atoms_.back().log_mass = log_add(m.atoms_.back().log_mass, lm);
    } else {
      m.atoms_.push_back(Atom{x, lm});
    }
  }
  m.build_index();
  // Total mass 1 is reached with rounding error, e.g. by convolution.
  if (m.log_total_mass() > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "total mass " << m.total_mass() << " exceeds 1";
    throw Error("measure_net", os.str());
  }
  return m;
}

void FiniteSupportMeasure::build_index() {
  const std::size_t n = atoms_.size();
  tree_.assign(2 * n, kNegInfD);
  for (std::size_t i = 0; i < n; ++i) tree_[n + i] = atoms_[i].log_mass;
  for (std::size_t i = n - 1; i >= 1 && n > 1; --i) {
    tree_[i] = log_add(tree_[2 * i], tree_[2 * i + 1]);
  }
}

double FiniteSupportMeasure::log_total_mass() const {
  double total = kNegInfD;
  for (const auto& a : atoms_) total = log_add(total, a.log_mass);
  return total;
}

double FiniteSupportMeasure::total_mass() const {
  return std::exp(log_total_mass());
}

double FiniteSupportMeasure::log_mass_in(const Interval& interval) const {
  if (interval.empty() || atoms_.empty()) return kNegInfD;
  const Interval iv = normalized(interval);
  auto first = std::partition_point(
      atoms_.begin(), atoms_.end(), [&](const Atom& a) {
        return iv.lo_open ? ExtReal(a.location) <= iv.lo
                          : ExtReal(a.location) < iv.lo;
      });
  auto last = std::partition_point(first, atoms_.end(), [&](const Atom& a) {
    return iv.hi_open ? ExtReal(a.location) < iv.hi
                      : ExtReal(a.location) <= iv.hi;
  });
  const std::size_t n = atoms_.size();
  std::size_t l = static_cast<std::size_t>(first - atoms_.begin()) + n;
  std::size_t r = static_cast<std::size_t>(last - atoms_.begin()) + n;
  double acc = kNegInfD;
  while (l < r) {
    if (l & 1) acc = log_add(acc, tree_[l++]);
    if (r & 1) acc = log_add(acc, tree_[--r]);
    l >>= 1;
    r >>= 1;
  }
  return acc;
}

double FiniteSupportMeasure::log_mass_in(const RegionSet& region) const {
  double acc = kNegInfD;
  for (const auto& iv : region.intervals()) {
    acc = log_add(acc, log_mass_in(iv));
  }
  return acc;
}

namespace {

template <typename Keep>
ExtReal log_sum_power(const FiniteSupportMeasure& m, const TiltFunction& h,
                      double t, Keep keep) {
  if (!(t > 0.0)) throw Error("measure_net", "scaling power must be > 0");
  std::vector<double> exps;
  exps.reserve(m.size());
  double top = kNegInfD;
  for (const auto& a : m.atoms()) {
    const ExtReal hx = h(a.location);
    if (hx.is_neg_inf() || !keep(hx)) continue;
    const double e = hx.value() / t + a.log_mass;
    exps.push_back(e);
    top = std::max(top, e);
  }
  if (exps.empty()) return kNegInf;
  double sum = 0.0;
  for (double e : exps) sum += std::exp(e - top);
  const double log_total = top + std::log(sum);
  // For h = 0 this is the log of the total mass. Summing n rounded masses
  // leaves a relative error of order n eps, so a total inside that band is
  // a probability measure and its log is exactly 0.
  if (h.is_zero() &&
      std::fabs(log_total) <=
          4.0 * std::numeric_limits<double>::epsilon() *
              static_cast<double>(exps.size() + 1)) {
    return ExtReal(0.0);
  }
  return ExtReal(t * log_total);
}

}  // namespace

ExtReal exp_power_integral(const FiniteSupportMeasure& m,
                           const TiltFunction& h, double t) {
  return log_sum_power(m, h, t, [](ExtReal) { return true; });
}

ExtReal exp_power_integral_above(const FiniteSupportMeasure& m,
                                 const TiltFunction& h, double t,
                                 double threshold) {
  return log_sum_power(m, h, t,
                       [threshold](ExtReal v) { return v > ExtReal(threshold); });
}

double region_power_mass(const FiniteSupportMeasure& m, const RegionSet& r,
                         double t) {
  if (!(t > 0.0)) throw Error("measure_net", "scaling power must be > 0");
  const double lm = m.log_mass_in(r);
  if (lm == kNegInfD) return 0.0;
  return std::exp(t * lm);
}

FiniteSupportMeasure parse_measure(const std::string& text,
                                   const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::pair<double, double>> atoms;
  double total = 0.0;
  auto parse_number = [&](std::string field, const char* what) {
    field.erase(0, field.find_first_not_of(" \t\r"));
    field.erase(field.find_last_not_of(" \t\r") + 1);
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() ||
        !std::isfinite(v)) {
      throw ParseError(source_name, line_no,
                       std::string("bad ") + what + " '" + field + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos ||
        line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(source_name, line_no,
                       "expected 'location,mass'");
    }
    const double x = parse_number(line.substr(0, comma), "location");
    const double m = parse_number(line.substr(comma + 1), "mass");
    if (!(m > 0.0)) {
      throw ParseError(source_name, line_no, "mass must be positive");
    }
    if (!atoms.empty() && !(x > atoms.back().first)) {
      throw ParseError(source_name, line_no,
                       "locations must be strictly increasing");
    }
    total += m;
    if (total > 1.0 + 1e-12) {
      throw ParseError(source_name, line_no, "total mass exceeds 1");
    }
    atoms.emplace_back(x, m);
  }
  return FiniteSupportMeasure::FromMasses(std::move(atoms));
}

FiniteSupportMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("measure_net", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str(), path);
}

}  // namespace ldpkit

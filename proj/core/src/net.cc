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

#include "ldpkit/net.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldpkit/errors.h"
#include "ldpkit/parallel.h"

namespace ldpkit {
namespace {

constexpr double kNegInfD = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
  double top = kNegInfD;
  for (double x : v) top = std::max(top, x);
  if (top == kNegInfD) return top;
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

// Shifts log masses so that they sum to exactly one in log scale; used where
// the true law is a probability measure and only rounding moves the total.
FiniteSupportMeasure normalized_law(std::vector<std::pair<double, double>> atoms) {
  std::vector<double> lm;
  lm.reserve(atoms.size());
  for (const auto& a : atoms) lm.push_back(a.second);
  const double total = log_sum_exp(lm);
  std::vector<std::pair<double, double>> kept;
  kept.reserve(atoms.size());
  for (auto& [x, l] : atoms) {
    const double v = l - total;
    if (v > kNegInfD) kept.emplace_back(x, v);
  }
  return FiniteSupportMeasure::FromLogMasses(std::move(kept));
}

void check_probability(const FiniteSupportMeasure& base) {
  if (base.is_zero() || std::fabs(base.log_total_mass()) > 1e-9) {
    throw Error("measure_net", "iid base must be a probability measure");
  }
}

}  // namespace

ScaledMeasureNet::ScaledMeasureNet(std::string name, std::int64_t max_index,
                                   PowerAt t_of, MeasureAt measure_of)
    : name_(std::move(name)),
      max_index_(max_index),
      t_of_(std::move(t_of)),
      measure_of_(std::move(measure_of)) {
  if (max_index_ < 1) throw Error("measure_net", "net needs max_index >= 1");
  if (!t_of_ || !measure_of_) {
    throw Error("measure_net", "net needs a power schedule and a generator");
  }
}

void ScaledMeasureNet::check_index(std::int64_t k) const {
  if (k < 1 || k > max_index_) {
    throw Error("measure_net", "index " + std::to_string(k) +
                                   " outside [1, " +
                                   std::to_string(max_index_) + "] of net '" +
                                   name_ + "'");
  }
}

double ScaledMeasureNet::t(std::int64_t k) const {
  check_index(k);
  return t_of_(k);
}

NetPoint ScaledMeasureNet::at(std::int64_t k) const {
  check_index(k);
  const double t = t_of_(k);
  if (!(t > 0.0)) throw Error("measure_net", "scaling power must be > 0");
  return NetPoint{measure_of_(k), t};
}

namespace {
double inverse_index(std::int64_t k) { return 1.0 / static_cast<double>(k); }
}  // namespace

ScaledMeasureNet coin_example_net() {
  return ScaledMeasureNet("coin", ScaledMeasureNet::kUnbounded, inverse_index,
                          [](std::int64_t) {
                            return FiniteSupportMeasure::FromMasses(
                                {{-1.0, 0.5}, {1.0, 0.5}});
                          });
}

ScaledMeasureNet demzei_example_net(LogPSchedule log_p) {
  if (!log_p) log_p = [](double eps) { return -1.0 / (eps * eps); };
  return ScaledMeasureNet(
      "dem-zei", ScaledMeasureNet::kUnbounded, inverse_index,
      [log_p](std::int64_t k) {
        const double eps = 1.0 / static_cast<double>(k);
        const double lp = log_p(eps);
        if (std::isnan(lp) || lp > -std::log(2.0)) {
          throw Error("measure_net", "schedule gives 2p > 1 at eps = " +
                                         std::to_string(eps));
        }
        const double x = eps * lp;
        std::vector<std::pair<double, double>> atoms = {{x, lp}, {-x, lp}};
        const double log_centre = std::log1p(-2.0 * std::exp(lp));
        if (log_centre > kNegInfD) atoms.emplace_back(0.0, log_centre);
        return FiniteSupportMeasure::FromLogMasses(std::move(atoms));
      });
}

FiniteSupportMeasure iid_mean_law_by_convolution(
    const FiniteSupportMeasure& base, std::int64_t n) {
  check_probability(base);
  if (n < 1) throw Error("measure_net", "iid mean needs n >= 1");
  auto convolve = [](const FiniteSupportMeasure& a,
                     const FiniteSupportMeasure& b) {
    std::vector<std::pair<double, double>> out;
    out.reserve(a.size() * b.size());
    for (const auto& p : a.atoms()) {
      for (const auto& q : b.atoms()) {
        out.emplace_back(p.location + q.location, p.log_mass + q.log_mass);
      }
    }
    return normalized_law(std::move(out));
  };
  FiniteSupportMeasure result = FiniteSupportMeasure::FromMasses({{0.0, 1.0}});
  FiniteSupportMeasure power = base;
  for (std::int64_t m = n; m > 0; m >>= 1) {
    if (m & 1) result = convolve(result, power);
    if (m > 1) power = convolve(power, power);
  }
  std::vector<std::pair<double, double>> scaled;
  scaled.reserve(result.size());
  for (const auto& a : result.atoms()) {
    scaled.emplace_back(a.location / static_cast<double>(n), a.log_mass);
  }
  return normalized_law(std::move(scaled));
}

ScaledMeasureNet iid_mean_example_net(const FiniteSupportMeasure& base,
                                      std::int64_t max_n) {
  check_probability(base);
  if (max_n < 1) throw Error("measure_net", "iid net needs max_n >= 1");
  auto atoms = base.atoms();
  std::vector<Atom> copy(atoms.begin(), atoms.end());
  return ScaledMeasureNet(
      "iid-mean", max_n, inverse_index, [copy, base](std::int64_t n) {
        if (copy.size() == 1) {
          return FiniteSupportMeasure::FromMasses({{copy[0].location, 1.0}});
        }
        if (copy.size() > 2) return iid_mean_law_by_convolution(base, n);
        const double a = copy[0].location;
        const double b = copy[1].location;
        const double la = copy[0].log_mass;
        const double lb = copy[1].log_mass;
        const double nd = static_cast<double>(n);
        const double lg_n = std::lgamma(nd + 1.0);
        std::vector<std::pair<double, double>> out;
        out.reserve(static_cast<std::size_t>(n) + 1);
        for (std::int64_t j = 0; j <= n; ++j) {
          const double jd = static_cast<double>(j);
          const double lm = lg_n - std::lgamma(jd + 1.0) -
                            std::lgamma(nd - jd + 1.0) + jd * lb +
                            (nd - jd) * la;
          out.emplace_back((jd * b + (nd - jd) * a) / nd, lm);
        }
        return normalized_law(std::move(out));
      });
}

ScaledMeasureNet escaping_dirac_net() {
  return ScaledMeasureNet("escaping-dirac", ScaledMeasureNet::kUnbounded,
                          inverse_index, [](std::int64_t k) {
                            return FiniteSupportMeasure::FromMasses(
                                {{static_cast<double>(k), 1.0}});
                          });
}

ScaledMeasureNet dirac_net(double mass) {
  if (!(mass > 0.0) || mass > 1.0) {
    throw Error("measure_net", "dirac mass must lie in (0, 1]");
  }
  return ScaledMeasureNet("dirac", ScaledMeasureNet::kUnbounded, inverse_index,
                          [mass](std::int64_t) {
                            return FiniteSupportMeasure::FromMasses(
                                {{0.0, mass}});
                          });
}

ScaledMeasureNet explicit_net(std::string name,
                              std::vector<FiniteSupportMeasure> measures,
                              std::vector<double> ts) {
  if (measures.empty() || measures.size() != ts.size()) {
    throw Error("measure_net", "explicit net needs one power per measure");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || (i > 0 && !(ts[i] < ts[i - 1]))) {
      throw Error("measure_net",
                  "powers must be positive and strictly decreasing");
    }
  }
  auto shared_m =
      std::make_shared<const std::vector<FiniteSupportMeasure>>(std::move(measures));
  auto shared_t = std::make_shared<const std::vector<double>>(std::move(ts));
  const auto count = static_cast<std::int64_t>(shared_t->size());
  return ScaledMeasureNet(
      std::move(name), count,
      [shared_t](std::int64_t k) { return (*shared_t)[k - 1]; },
      [shared_m](std::int64_t k) { return (*shared_m)[k - 1]; });
}

void WindowSpec::validate(const ScaledMeasureNet& net) const {
  if (start_index < 1 || start_index >= end_index) {
    throw Error("free_energy", "window needs 1 <= start < end, got " +
                                   describe());
  }
  if (end_index > net.max_index()) {
    throw Error("free_energy", "window " + describe() +
                                   " exceeds the index range of net '" +
                                   net.name() + "'");
  }
  if (samples_per_decade < 1 || stride < 1) {
    throw Error("free_energy", "window needs samples_per_decade >= 1 and "
                               "stride >= 1");
  }
  if (start_index % stride != 0 || end_index % stride != 0) {
    throw Error("free_energy", "window ends must be multiples of the stride");
  }
}

std::int64_t WindowSpec::tail_start() const {
  return std::max(start_index, end_index / 10);
}

std::string WindowSpec::describe() const {
  std::ostringstream os;
  os << "[" << start_index << "," << end_index
     << "] samples_per_decade=" << samples_per_decade << " stride=" << stride
     << " tail>=" << tail_start();
  return os.str();
}

std::vector<std::int64_t> window_indices(const WindowSpec& window) {
  const double lo = static_cast<double>(window.start_index);
  const double hi = static_cast<double>(window.end_index);
  const double decades = std::log10(hi / lo);
  const auto steps = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(decades * window.samples_per_decade - 1e-9)));
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i <= steps; ++i) {
    const double v = lo * std::pow(10.0, decades * static_cast<double>(i) /
                                             static_cast<double>(steps));
    std::int64_t k = std::llround(v / static_cast<double>(window.stride)) *
                     window.stride;
    k = std::clamp(k, window.start_index, window.end_index);
    out.push_back(k);
  }
  out.push_back(window.tail_start());
  out.push_back(window.end_index);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WindowSamples::WindowSamples(const ScaledMeasureNet& net,
                             const WindowSpec& window, unsigned threads)
    : window_(window), net_name_(net.name()) {
  window.validate(net);
  const auto indices = window_indices(window);
  points_.resize(indices.size());
  parallel_for(indices.size(), threads, [&](std::size_t i) {
    NetPoint p = net.at(indices[i]);
    points_[i] = SampledPoint{indices[i], p.t, std::move(p.measure)};
  });
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].t < points_[i - 1].t)) {
      throw Error("measure_net", "powers of net '" + net_name_ +
                                     "' are not strictly decreasing");
    }
  }
  const auto tail = window.tail_start();
  tail_begin_ = static_cast<std::size_t>(
      std::find_if(points_.begin(), points_.end(),
                   [tail](const SampledPoint& p) { return p.index >= tail; }) -
      points_.begin());
}

TailConditionResult tail_condition_check(const WindowSamples& samples,
                                         const TiltFamily& family, double m,
                                         double eps) {
  if (!(eps > 0.0)) throw Error("measure_net", "tail condition needs eps > 0");
  TailConditionResult result;
  const auto& pts = samples.points();
  for (const auto& h : family.members()) {
    ExtReal top = kNegInf;
    for (std::size_t i = samples.tail_begin(); i < pts.size(); ++i) {
      top = ext_max(top, exp_power_integral_above(pts[i].measure, h,
                                                  pts[i].t, m));
    }
    const ExtReal power =
        top.is_neg_inf() ? ExtReal(0.0)
                         : (top.is_pos_inf() ? kPosInf
                                             : ExtReal(std::exp(top.value())));
    if (!(power < ExtReal(eps))) {
      result.holds = false;
      result.witnesses.push_back(TailWitness{h.label(), power});
    }
  }
  return result;
}

TailConditionResult tail_condition_check(const ScaledMeasureNet& net,
                                         const TiltFamily& family, double m,
                                         double eps, const WindowSpec& window) {
  return tail_condition_check(WindowSamples(net, window), family, m, eps);
}

}  // namespace ldpkit

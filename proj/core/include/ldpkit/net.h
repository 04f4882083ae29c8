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

#ifndef LDPKIT_NET_H_
#define LDPKIT_NET_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ldpkit/measure.h"
#include "ldpkit/tilt.h"

namespace ldpkit {

struct NetPoint {
  FiniteSupportMeasure measure;
  double t = 0.0;
};

// Indexed family k -> (mu_k, t_k), k = 1, 2, ..., with t_k > 0 strictly
// decreasing to 0. Measures are produced on demand by a generator.
class ScaledMeasureNet {
 public:
  static constexpr std::int64_t kUnbounded =
      std::numeric_limits<std::int64_t>::max();

  using MeasureAt = std::function<FiniteSupportMeasure(std::int64_t)>;
  using PowerAt = std::function<double(std::int64_t)>;

  ScaledMeasureNet(std::string name, std::int64_t max_index, PowerAt t_of,
                   MeasureAt measure_of);

  const std::string& name() const { return name_; }
  std::int64_t max_index() const { return max_index_; }

  double t(std::int64_t k) const;
  NetPoint at(std::int64_t k) const;

 private:
  void check_index(std::int64_t k) const;

  std::string name_;
  std::int64_t max_index_;
  PowerAt t_of_;
  MeasureAt measure_of_;
};

// mu_k = {-1: 1/2, +1: 1/2}, t_k = 1/k.
ScaledMeasureNet coin_example_net();

// Three-atom family with eps_k = 1/k: atoms {0: 1 - 2p, -eps log p: p,
// eps log p: p}. `log_p` maps eps to log p(eps); the default is
// log p = -1/eps^2. Rejects schedules with 2p > 1.
using LogPSchedule = std::function<double(double)>;
ScaledMeasureNet demzei_example_net(LogPSchedule log_p = {});

// mu_n = law of the mean of n iid draws from `base` (a probability measure),
// t_n = 1/n, n <= max_n. Two-atom bases use the closed binomial form of the
// n-fold convolution; larger bases convolve by repeated squaring.
ScaledMeasureNet iid_mean_example_net(const FiniteSupportMeasure& base,
                                      std::int64_t max_n);

// Exact n-fold convolution of the rescaled base by repeated squaring; used
// by iid_mean_example_net for bases with more than two atoms.
FiniteSupportMeasure iid_mean_law_by_convolution(
    const FiniteSupportMeasure& base, std::int64_t n);

// mu_k = Dirac(k), t_k = 1/k: mass escaping to infinity.
ScaledMeasureNet escaping_dirac_net();

// mu_k = c Dirac(0) for all k, t_k = 1/k.
ScaledMeasureNet dirac_net(double mass = 1.0);

// Finite net from explicit measures and a strictly decreasing schedule.
ScaledMeasureNet explicit_net(std::string name,
                              std::vector<FiniteSupportMeasure> measures,
                              std::vector<double> ts);

// Tail window of indices used to approximate liminf / limsup along the net.
// Indices are sampled geometrically with `samples_per_decade` points per
// decade (start and end always included) and rounded to multiples of
// `stride`. The liminf/limsup estimates use the tail decade of the window,
// indices >= max(start, end / 10).
struct WindowSpec {
  std::int64_t start_index = 100;
  std::int64_t end_index = 1000000;
  int samples_per_decade = 8;
  std::int64_t stride = 1;

  void validate(const ScaledMeasureNet& net) const;
  std::int64_t tail_start() const;
  std::string describe() const;
};

std::vector<std::int64_t> window_indices(const WindowSpec& window);

struct SampledPoint {
  std::int64_t index = 0;
  double t = 0.0;
  FiniteSupportMeasure measure;
};

// The net evaluated on the window's sample indices, materialized once so
// that many tilts and balls can be evaluated against it.
class WindowSamples {
 public:
  WindowSamples(const ScaledMeasureNet& net, const WindowSpec& window,
                unsigned threads = 1);

  const std::vector<SampledPoint>& points() const { return points_; }
  // Position in points() of the first tail sample.
  std::size_t tail_begin() const { return tail_begin_; }
  const WindowSpec& window() const { return window_; }
  const std::string& net_name() const { return net_name_; }

 private:
  std::vector<SampledPoint> points_;
  std::size_t tail_begin_ = 0;
  WindowSpec window_;
  std::string net_name_;
};

struct TailWitness {
  std::string tilt;
  ExtReal limsup_power;  // estimated limsup mu^t(e^{h/t} 1_{h>M})
};

struct TailConditionResult {
  bool holds = true;
  std::vector<TailWitness> witnesses;
};

// limsup mu^t(e^{h/t} 1_{h > M}) < eps for every member, with the limsup
// taken over the window's tail samples.
TailConditionResult tail_condition_check(const WindowSamples& samples,
                                         const TiltFamily& family, double m,
                                         double eps);
TailConditionResult tail_condition_check(const ScaledMeasureNet& net,
                                         const TiltFamily& family, double m,
                                         double eps, const WindowSpec& window);

}  // namespace ldpkit

#endif  // LDPKIT_NET_H_

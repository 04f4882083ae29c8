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

#ifndef LDPKIT_TILT_H_
#define LDPKIT_TILT_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ldpkit/ext_real.h"

namespace ldpkit {

// A tilt function h : R -> [-inf, +inf). Linear(l) is x -> l*x;
// TwoSlope(l, n) is l*x on x <= 0 and n*x on x >= 0; Custom wraps a
// compiled-in evaluator registered under a label.
class TiltFunction {
 public:
  enum class Kind { kLinear, kTwoSlope, kCustom };
  using Evaluator = std::function<ExtReal(double)>;

  static TiltFunction Linear(double slope);
  static TiltFunction TwoSlope(double left_slope, double right_slope);
  static TiltFunction Custom(std::string label, Evaluator eval);

  // Q_n(x) = n|x|e^{-|x|} - x.
  static TiltFunction Qn(int n);

  ExtReal operator()(double x) const {
    switch (kind_) {
      case Kind::kLinear:
        return ExtReal(left_ * x);
      case Kind::kTwoSlope:
        return ExtReal(x <= 0.0 ? left_ * x : right_ * x);
      case Kind::kCustom:
        break;
    }
    return (*eval_)(x);
  }

  Kind kind() const { return kind_; }
  // Slopes of the piecewise-linear kinds; zero for Custom.
  double left_slope() const { return left_; }
  double right_slope() const { return right_; }
  const std::string& label() const { return label_; }

  // True for h(x) = 0 identically (Linear(0) or TwoSlope(0, 0)).
  bool is_zero() const;

 private:
  TiltFunction(Kind kind, double left, double right, std::string label,
               std::shared_ptr<const Evaluator> eval);

  Kind kind_;
  double left_ = 0.0;
  double right_ = 0.0;
  std::string label_;
  std::shared_ptr<const Evaluator> eval_;
};

// Compiled-in custom tilts, looked up by label. Recognized labels:
// "Q<n>" for n >= 1, "abs" (|x|), "neg_abs" (-|x|), "zero".
TiltFunction find_custom_tilt(const std::string& label);

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ClosedRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Parametric description of a tilt family; expands deterministically.
struct FamilySpec {
  enum class Kind { kLinear, kTwoSlope, kQn, kCustom };

  Kind kind = Kind::kLinear;
  // kLinear: open interval G and resolution. When truncates_line is set, G
  // stands for a bounded window onto the whole real line and is widened by
  // doubled(); otherwise G is the genuine interval.
  OpenInterval g;
  bool truncates_line = false;
  // kTwoSlope: closed parameter ranges.
  ClosedRange lambda_range;
  ClosedRange nu_range;
  int resolution = 0;
  // kQn
  int n_max = 0;
  // kCustom
  std::vector<std::string> labels;

  // The spec with every truncated parameter bound doubled at the same
  // grid step. Genuine intervals and explicit lists are unchanged.
  FamilySpec doubled() const;
  std::string describe() const;
};

class TiltFamily {
 public:
  TiltFamily() = default;
  explicit TiltFamily(std::vector<TiltFunction> members)
      : members_(std::move(members)) {}

  static TiltFamily Expand(const FamilySpec& spec);

  const std::vector<TiltFunction>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  void append(const TiltFamily& other);

 private:
  std::vector<TiltFunction> members_;
};

// {h_l : l in G}, `resolution` evenly spaced slopes strictly inside G:
// l_i = lo + i (hi - lo) / (resolution + 1), i = 1..resolution.
TiltFamily linear_family(OpenInterval g, int resolution);

// Cartesian grid of TwoSlope members, resolution points per axis including
// the range endpoints. Ordered with lambda outer, nu inner.
TiltFamily two_slope_family(ClosedRange lambda_range, ClosedRange nu_range,
                            int resolution);

// {Q_1, ..., Q_{n_max}}.
TiltFamily qn_family(int n_max);

// The slopes linear_family(g, resolution) uses.
std::vector<double> linear_family_slopes(OpenInterval g, int resolution);

}  // namespace ldpkit

#endif  // LDPKIT_TILT_H_

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

#include "ldpkit/tilt.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ldpkit/errors.h"

namespace ldpkit {
namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

TiltFunction::TiltFunction(Kind kind, double left, double right,
                           std::string label,
                           std::shared_ptr<const Evaluator> eval)
    : kind_(kind),
      left_(left),
      right_(right),
      label_(std::move(label)),
      eval_(std::move(eval)) {}

TiltFunction TiltFunction::Linear(double slope) {
  return TiltFunction(Kind::kLinear, slope, slope, "h(" + number(slope) + ")",
                      nullptr);
}

TiltFunction TiltFunction::TwoSlope(double left_slope, double right_slope) {
  return TiltFunction(
      Kind::kTwoSlope, left_slope, right_slope,
      "h(" + number(left_slope) + "," + number(right_slope) + ")", nullptr);
}

TiltFunction TiltFunction::Custom(std::string label, Evaluator eval) {
  if (!eval) throw Error("tilt_functions", "custom tilt without evaluator");
  return TiltFunction(Kind::kCustom, 0.0, 0.0, std::move(label),
                      std::make_shared<const Evaluator>(std::move(eval)));
}

TiltFunction TiltFunction::Qn(int n) {
  if (n < 1) throw Error("tilt_functions", "Q_n needs n >= 1");
  const double c = n;
  return Custom("Q" + std::to_string(n), [c](double x) {
    const double a = std::fabs(x);
    return ExtReal(c * a * std::exp(-a) - x);
  });
}

bool TiltFunction::is_zero() const {
  return kind_ != Kind::kCustom && left_ == 0.0 && right_ == 0.0;
}

TiltFunction find_custom_tilt(const std::string& label) {
  if (label.size() > 1 && label[0] == 'Q') {
    try {
      std::size_t used = 0;
      int n = std::stoi(label.substr(1), &used);
      if (used == label.size() - 1 && n >= 1) return TiltFunction::Qn(n);
    } catch (const std::exception&) {
    }
  }
  if (label == "abs") {
    return TiltFunction::Custom("abs",
                                [](double x) { return ExtReal(std::fabs(x)); });
  }
  if (label == "neg_abs") {
    return TiltFunction::Custom(
        "neg_abs", [](double x) { return ExtReal(-std::fabs(x)); });
  }
  if (label == "zero") {
    return TiltFunction::Custom("zero", [](double) { return ExtReal(0.0); });
  }
  throw Error("tilt_functions", "no registered custom tilt '" + label + "'");
}

std::vector<double> linear_family_slopes(OpenInterval g, int resolution) {
  if (!(g.lo < g.hi) || !std::isfinite(g.lo) || !std::isfinite(g.hi)) {
    throw Error("tilt_functions", "linear family needs a nonempty bounded "
                                  "open interval");
  }
  if (resolution < 2) {
    throw Error("tilt_functions", "linear family resolution must be >= 2");
  }
  std::vector<double> slopes(resolution);
  const double width = g.hi - g.lo;
  for (int i = 1; i <= resolution; ++i) {
    slopes[i - 1] = g.lo + width * i / (resolution + 1);
  }
  return slopes;
}

TiltFamily linear_family(OpenInterval g, int resolution) {
  std::vector<TiltFunction> members;
  for (double l : linear_family_slopes(g, resolution)) {
    members.push_back(TiltFunction::Linear(l));
  }
  return TiltFamily(std::move(members));
}

TiltFamily two_slope_family(ClosedRange lambda_range, ClosedRange nu_range,
                            int resolution) {
  if (resolution < 2) {
    throw Error("tilt_functions", "two-slope resolution must be >= 2");
  }
  if (lambda_range.lo > lambda_range.hi || nu_range.lo > nu_range.hi) {
    throw Error("tilt_functions", "two-slope range with lo > hi");
  }
  auto axis = [resolution](ClosedRange r) {
    std::vector<double> v(resolution);
    for (int i = 0; i < resolution; ++i) {
      v[i] = r.lo + (r.hi - r.lo) * i / (resolution - 1);
    }
    return v;
  };
  std::vector<TiltFunction> members;
  members.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (double l : axis(lambda_range)) {
    for (double n : axis(nu_range)) {
      members.push_back(TiltFunction::TwoSlope(l, n));
    }
  }
  return TiltFamily(std::move(members));
}

TiltFamily qn_family(int n_max) {
  if (n_max < 1) throw Error("tilt_functions", "qn family needs n_max >= 1");
  std::vector<TiltFunction> members;
  for (int n = 1; n <= n_max; ++n) members.push_back(TiltFunction::Qn(n));
  return TiltFamily(std::move(members));
}

TiltFamily TiltFamily::Expand(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::kLinear:
      return linear_family(spec.g, spec.resolution);
    case FamilySpec::Kind::kTwoSlope:
      return two_slope_family(spec.lambda_range, spec.nu_range,
                              spec.resolution);
    case FamilySpec::Kind::kQn:
      return qn_family(spec.n_max);
    case FamilySpec::Kind::kCustom: {
      std::vector<TiltFunction> members;
      for (const auto& label : spec.labels) {
        members.push_back(find_custom_tilt(label));
      }
      return TiltFamily(std::move(members));
    }
  }
  throw Error("tilt_functions", "unknown family kind");
}

void TiltFamily::append(const TiltFamily& other) {
  members_.insert(members_.end(), other.members_.begin(), other.members_.end());
}

FamilySpec FamilySpec::doubled() const {
  FamilySpec out = *this;
  switch (kind) {
    case Kind::kLinear:
      if (truncates_line) {
        // Same spacing (hi - lo) / (resolution + 1) on the doubled interval.
        out.g = {2 * g.lo, 2 * g.hi};
        out.resolution = 2 * resolution + 1;
      }
      break;
    case Kind::kTwoSlope:
      out.lambda_range = {2 * lambda_range.lo, 2 * lambda_range.hi};
      out.nu_range = {2 * nu_range.lo, 2 * nu_range.hi};
      out.resolution = 2 * resolution - 1;
      break;
    case Kind::kQn:
      out.n_max = 2 * n_max;
      break;
    case Kind::kCustom:
      break;
  }
  return out;
}

std::string FamilySpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kLinear:
      os << "linear G=(" << number(g.lo) << "," << number(g.hi)
         << ") resolution=" << resolution
         << (truncates_line ? " truncating R" : "");
      break;
    case Kind::kTwoSlope:
      os << "two_slope lambda=[" << number(lambda_range.lo) << ","
         << number(lambda_range.hi) << "] nu=[" << number(nu_range.lo) << ","
         << number(nu_range.hi) << "] resolution=" << resolution;
      break;
    case Kind::kQn:
      os << "qn n_max=" << n_max;
      break;
    case Kind::kCustom:
      os << "custom";
      for (const auto& l : labels) os << " " << l;
      break;
  }
  return os.str();
}

}  // namespace ldpkit

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

#ifndef LDPKIT_EXT_REAL_H_
#define LDPKIT_EXT_REAL_H_

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace ldpkit {

// A value in [-inf, +inf]. Backed by an IEEE double that is never NaN.
//
// Addition follows the lower convention: -inf absorbs, so that
// x + (+inf) = +inf only for x > -inf, and (-inf) + (+inf) = -inf. This is
// the convention needed by sup_h {h(x) - Lambda(h)} where a member with
// h(x) = -inf must never contribute +inf.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal PosInf() {
    return ExtReal(std::numeric_limits<double>::infinity());
  }
  static constexpr ExtReal NegInf() {
    return ExtReal(-std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  constexpr bool is_pos_inf() const {
    return v_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_neg_inf() const {
    return v_ == -std::numeric_limits<double>::infinity();
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    return a.v_ <=> b.v_;
  }

  friend constexpr ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }
  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return NegInf();
    return ExtReal(a.v_ + b.v_);
  }
  friend constexpr ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

 private:
  double v_ = 0.0;
};

inline constexpr ExtReal kPosInf = ExtReal::PosInf();
inline constexpr ExtReal kNegInf = ExtReal::NegInf();

inline ExtReal ext_max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal ext_min(ExtReal a, ExtReal b) { return b < a ? b : a; }

// -log p with -log 0 = +inf.
inline ExtReal neg_log(double p) {
  if (p <= 0.0) return kPosInf;
  return ExtReal(-std::log(p));
}

// |a - b| treating equal infinities as distance 0.
inline double ext_distance(ExtReal a, ExtReal b) {
  if (a == b) return 0.0;
  if (!a.is_finite() || !b.is_finite()) {
    return std::numeric_limits<double>::infinity();
  }
  return std::fabs(a.value() - b.value());
}

// "inf", "-inf" or a round-trippable decimal.
std::string format_ext(ExtReal v);

// Accepts "inf", "+inf", "-inf" (any case) or a decimal number.
ExtReal parse_ext(const std::string& text);

}  // namespace ldpkit

#endif  // LDPKIT_EXT_REAL_H_

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

#include "ldpkit/ext_real.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace ldpkit {

std::string format_ext(ExtReal v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v.value());
  return buf;
}

ExtReal parse_ext(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") {
    return kPosInf;
  }
  if (s == "-inf" || s == "-infinity") return kNegInf;
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size() || std::isnan(v)) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return ExtReal(v);
}

}  // namespace ldpkit

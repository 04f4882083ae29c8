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

#ifndef LDPKIT_HARNESS_JSON_UTIL_H_
#define LDPKIT_HARNESS_JSON_UTIL_H_

#include <nlohmann/json.hpp>

#include "ldpkit/ext_real.h"
#include "ldpkit/grid_function.h"
#include "ldpkit/ldp_verifier.h"

namespace ldpkit::harness {

using Json = nlohmann::ordered_json;

// Finite values as numbers, infinities as "inf" / "-inf".
inline Json ext_json(ExtReal v) {
  if (v.value() == 0.0) return Json(0.0);  // no negative zero
  if (v.is_finite()) return Json(v.value());
  return Json(format_ext(v));
}

inline Json witnesses_json(const std::vector<Witness>& ws,
                           std::size_t limit = 25) {
  Json out = Json::array();
  for (std::size_t i = 0; i < ws.size() && i < limit; ++i) {
    out.push_back(Json{{"x", ext_json(ws[i].x)}, {"detail", ws[i].detail}});
  }
  return out;
}

inline Json claim_json(const ClaimCheck& c) {
  return Json{{"claim", c.claim_id},
              {"holds", c.holds},
              {"informational", c.informational},
              {"max_violation", ext_json(c.max_violation)},
              {"witness_count", c.witnesses.size()},
              {"witnesses", witnesses_json(c.witnesses)}};
}

inline Json condition_json(const ConditionReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.conclusions_checked) claims.push_back(claim_json(c));
  return Json{{"condition", r.condition_id},
              {"hypothesis_holds", r.hypothesis_holds},
              {"holds", r.holds()},
              {"witness_count", r.witnesses.size()},
              {"witnesses", witnesses_json(r.witnesses)},
              {"conclusions", claims},
              {"notes", r.notes}};
}

}  // namespace ldpkit::harness

#endif  // LDPKIT_HARNESS_JSON_UTIL_H_

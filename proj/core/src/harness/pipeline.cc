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

#include "ldpkit/harness/pipeline.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "json_util.h"
#include "ldpkit/convex.h"
#include "ldpkit/errors.h"

namespace ldpkit::harness {
namespace {

void validate(const Scenario& sc) {
  for (double tol : {sc.limit_tol, sc.rate_tol, sc.stability_tol,
                     sc.sandwich_slack, sc.filter_tol, sc.slope_tol}) {
    if (!(tol > 0.0)) {
      throw Error("cli_harness", "scenario '" + sc.name +
                                     "': tolerances must be positive");
    }
  }
  if (sc.x_grid.size() < 2) {
    throw Error("cli_harness", "scenario '" + sc.name + "': x grid too small");
  }
  for (const auto& id : sc.checks) {
    const auto& known = known_check_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw Error("cli_harness", "unknown check id '" + id + "'");
    }
  }
}

LimitOptions limit_options(const Scenario& sc) {
  LimitOptions opt;
  opt.tol = sc.limit_tol;
  opt.threads = sc.threads;
  return opt;
}

FamilyEvaluation linear_evaluation(const FamilySpec& spec,
                                   const FreeEnergyGrid& L) {
  FamilyEvaluation fe;
  fe.family = TiltFamily::Expand(spec);
  fe.lambdas = L.estimates;
  fe.all_exist = L.all_converged();
  return fe;
}

FamilyEvaluation combine(const std::vector<const FamilyEvaluation*>& parts) {
  FamilyEvaluation out;
  out.all_exist = true;
  for (const auto* p : parts) {
    out.family.append(p->family);
    out.lambdas.insert(out.lambdas.end(), p->lambdas.begin(),
                       p->lambdas.end());
    out.all_exist = out.all_exist && p->all_exist;
  }
  return out;
}

void require_exist(const FamilyEvaluation& fe, const std::string& what) {
  if (fe.all_exist) return;
  std::string missing;
  int shown = 0;
  for (std::size_t i = 0; i < fe.lambdas.size(); ++i) {
    if (fe.lambdas[i].converged) continue;
    if (shown++ < 5) {
      missing += (missing.empty() ? "" : ", ") +
                 fe.family.members()[i].label();
    }
  }
  throw Error("cli_harness", "Lambda(h) did not converge on the window for " +
                                 what + " members: " + missing);
}

CheckOutcome make_outcome(const std::string& id, bool gating, bool holds,
                          const Json& details) {
  return CheckOutcome{id, gating, holds, details.dump()};
}

// Claims the theorems attach to each range condition, as (claim, mask) pairs
// drawn from rate_comparison.
struct ClaimPlan {
  std::string target;  // "L|G*" or "Lambda|S*"
  std::string mask;
};

std::vector<ClaimPlan> plan_for(const std::string& letter, bool zero_in_g);

// Conclusions for (e) and (f) read int Dom wherever (a) to (d) read Dom.
std::vector<ClaimPlan> conclusion_plan(const std::string& id, bool zero_in_g) {
  const std::string base = id.rfind("open-problem-", 0) == 0
                               ? id.substr(std::string("open-problem-").size())
                               : id;
  // e-x and f-x share the conclusions of x.
  const bool interior = base.size() == 3 && base[1] == '-';
  const std::string letter = interior ? base.substr(2) : base;
  auto plan = plan_for(letter, zero_in_g);
  if (interior) {
    for (auto& p : plan) {
      if (p.mask.find("Dom(") != std::string::npos) p.mask = "int " + p.mask;
    }
  }
  return plan;
}

std::vector<ClaimPlan> plan_for(const std::string& letter, bool zero_in_g) {
  if (letter == "a") {
    const std::string m = zero_in_g ? "Dom(J)" : "Dom(J)&{J>-Lbar0}";
    return {{"L|G*", m}, {"Lambda|S*", m}};
  }
  if (letter == "b") return {{"L|G*", "Dom(J)"}, {"Lambda|S*", "Dom(J)"}};
  if (letter == "c") {
    if (zero_in_g) return {{"Lambda|S*", "all"}, {"L|G*", "Dom(J)"}};
    return {{"Lambda|S*", "{J>-Lbar0}"},
            {"L|G*", "Dom(Lambda|S*)&{J>-Lbar0}"}};
  }
  if (letter == "d" || letter == "ellis") {
    return {{"Lambda|S*", "all"}, {"L|G*", "Dom(J)"}};
  }
  return {{"L|G*", "all"}};  // GE-a, GE-b
}

std::vector<ClaimCheck> conclusions(const std::vector<ClaimPlan>& plan,
                                    const GridFunction& J,
                                    const GridFunction& lg_star,
                                    const GridFunction& abstract_star,
                                    ExtReal lambda0_bar, double filter_tol,
                                    double tol) {
  const auto above = above_mask(J, -lambda0_bar + ExtReal(filter_tol));
  auto mask_for = [&](const std::string& name) {
    if (name == "all") return std::vector<bool>(J.size(), true);
    if (name == "{J>-Lbar0}") return above;
    const bool interior = name.rfind("int ", 0) == 0;
    const GridFunction& f =
        name.find("Dom(J)") != std::string::npos ? J : abstract_star;
    const auto dom = interior ? interior_dom_mask(f) : dom_mask(f);
    return name.find('&') != std::string::npos ? mask_and(dom, above) : dom;
  };
  std::vector<ClaimCheck> out;
  for (const auto& p : plan) {
    const auto checks = rate_comparison(J, lg_star, abstract_star,
                                        {NamedMask{p.mask, mask_for(p.mask)}},
                                        tol);
    for (const auto& c : checks) {
      if (c.claim_id == "J=" + p.target + "@" + p.mask ||
          c.claim_id == "J=" + p.target + "@not-" + p.mask) {
        out.push_back(c);
      }
    }
  }
  return out;
}

Json chain_json(const std::vector<std::pair<std::string, std::vector<Witness>>>&
                    links) {
  Json out = Json::array();
  for (const auto& [name, ws] : links) {
    out.push_back(Json{{"link", name},
                       {"holds", ws.empty()},
                       {"witness_count", ws.size()},
                       {"witnesses", witnesses_json(ws)}});
  }
  return out;
}

}  // namespace

bool PipelineResult::all_gating_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) {
    return !c.gating || c.holds;
  });
}

FreeEnergyGrid run_free_energy(const Scenario& sc, const std::string& base_dir) {
  validate(sc);
  const ScaledMeasureNet net = build_net(sc.net, base_dir);
  sc.window.validate(net);
  const WindowSamples samples(net, sc.window, sc.threads);
  FreeEnergyGrid L = L_grid(samples, sc.linear.g, sc.linear.resolution,
                            limit_options(sc));
  L.values.set_edges(sc.linear.truncates_line ? GridEdges::kTruncated
                                              : GridEdges::kDomainBoundary);
  return L;
}

PipelineResult run_pipeline(const Scenario& sc, const std::string& base_dir) {
  validate(sc);
  const ScaledMeasureNet net = build_net(sc.net, base_dir);
  sc.window.validate(net);
  const WindowSamples samples(net, sc.window, sc.threads);
  const LimitOptions opt = limit_options(sc);
  const GridEdges edges = sc.linear.truncates_line
                              ? GridEdges::kTruncated
                              : GridEdges::kDomainBoundary;

  PipelineResult r;
  r.scenario = sc;
  r.lambda_zero = lambda_of(samples, TiltFunction::Linear(0.0), opt);
  const ExtReal lambda0_bar = r.lambda_zero.value();

  // Free energy on G and its conjugate.
  r.L = L_grid(samples, sc.linear.g, sc.linear.resolution, opt);
  r.L.values.set_edges(edges);
  const FamilySpec linear_doubled = sc.linear.doubled();
  FamilyEvaluation lin_base = linear_evaluation(sc.linear, r.L);
  FamilyEvaluation lin_doubled;
  if (sc.linear.truncates_line) {
    r.L_doubled = L_grid(samples, linear_doubled.g, linear_doubled.resolution,
                         opt);
    r.L_doubled->values.set_edges(edges);
    lin_doubled = linear_evaluation(linear_doubled, *r.L_doubled);
  } else {
    lin_doubled = lin_base;
  }
  if (sc.probe_g) {
    r.L_probe = L_grid(samples, *sc.probe_g, sc.probe_resolution, opt);
  }
  require_exist(lin_base, "linear family");
  require_exist(lin_doubled, "doubled linear family");
  r.lg_star_raw = linear_restriction_conjugate(lin_base, sc.x_grid);
  if (sc.linear.truncates_line) {
    const GridFunction d = linear_restriction_conjugate(lin_doubled, sc.x_grid);
    r.lg_star = stabilize_under_doubling(r.lg_star_raw, d, sc.stability_tol)
                    .value;
  } else {
    r.lg_star = r.lg_star_raw;
  }
  r.lg_star.set_label("L|G*");

  // Abstract conjugate over S = linear family plus the extra families.
  std::vector<const FamilyEvaluation*> base_parts = {&lin_base};
  std::vector<const FamilyEvaluation*> doubled_parts = {&lin_doubled};
  r.families.reserve(sc.families.size());
  for (const auto& nf : sc.families) {
    FamilyTable t;
    t.name = nf.name;
    t.description = nf.spec.describe();
    t.base = evaluate_family(samples, TiltFamily::Expand(nf.spec), opt);
    t.doubled = evaluate_family(samples, TiltFamily::Expand(nf.spec.doubled()),
                                opt);
    require_exist(t.base, "family '" + nf.name + "'");
    require_exist(t.doubled, "doubled family '" + nf.name + "'");
    r.families.push_back(std::move(t));
  }
  for (const auto& t : r.families) {
    base_parts.push_back(&t.base);
    doubled_parts.push_back(&t.doubled);
  }
  const FamilyEvaluation s_base = combine(base_parts);
  const FamilyEvaluation s_doubled = combine(doubled_parts);
  r.abstract_raw = abstract_lf(s_base, sc.x_grid, sc.threads);
  const GridFunction abstract_doubled =
      abstract_lf(s_doubled, sc.x_grid, sc.threads);
  r.abstract_star =
      stabilize_under_doubling(r.abstract_raw, abstract_doubled,
                               sc.stability_tol)
          .value;
  r.abstract_star.set_label("Lambda|S*");

  // Local rates.
  r.rates = rate_grid(samples, sc.x_grid, default_deltas(sc.delta_count),
                      sc.threads);
  r.vague = vague_ldp_check(r.rates, sc.rate_tol);
  const GridFunction& J = r.vague.J;

  const bool two_slope = std::any_of(
      sc.families.begin(), sc.families.end(), [](const NamedFamily& f) {
        return f.spec.kind == FamilySpec::Kind::kTwoSlope;
      });
  RangeConditionOptions range_opt;
  range_opt.filter_tol = sc.filter_tol;
  range_opt.slope_tol = sc.slope_tol;
  range_opt.family_is_two_slope = two_slope;
  const RangeTargets targets{sc.x_grid, r.rates.l0, r.rates.l1,
                             r.abstract_star, r.lg_star};

  auto run_check = [&](const std::string& id, bool gating) {
    const auto& range_ids = range_condition_ids();
    if (std::find(range_ids.begin(), range_ids.end(), id) != range_ids.end()) {
      const bool ge = id == "GE-a" || id == "GE-b";
      FamilySpec g_spec = sc.linear;
      FreeEnergyGrid L_used = r.L;
      RangeTargets t = targets;
      std::string basis = "G = " + sc.linear.describe();
      if (ge && sc.ge_probe) {
        g_spec = *sc.ge_probe;
        L_used = L_grid(samples, g_spec.g, g_spec.resolution, opt);
        L_used.values.set_edges(GridEdges::kDomainBoundary);
        const FamilyEvaluation fe = linear_evaluation(g_spec, L_used);
        require_exist(fe, "GE probe family");
        t.lg_star = linear_restriction_conjugate(fe, sc.x_grid);
        basis = "G = " + g_spec.describe() + " (GE probe, genuine interval)";
      }
      auto reps = range_condition_check(L_used.values, g_spec.g, t,
                                        lambda0_bar, {id}, range_opt);
      ConditionReport& rep = reps.front();
      const bool zero_in_g = g_spec.g.lo < 0.0 && 0.0 < g_spec.g.hi;
      rep.conclusions_checked =
          conclusions(conclusion_plan(id, zero_in_g), J, *t.lg_star,
                      r.abstract_star, lambda0_bar, sc.filter_tol,
                      sc.rate_tol);
      rep.notes.push_back(basis);
      Json d = condition_json(rep);
      d["tolerance"] = sc.rate_tol;
      return make_outcome(id, gating, rep.holds(), d);
    }
    if (id == "vague-ldp") {
      Json d{{"max_gap", ext_json(r.vague.max_gap)},
             {"tolerance", sc.rate_tol},
             {"witness_count", r.vague.witnesses.size()},
             {"witnesses", witnesses_json(r.vague.witnesses)}};
      return make_outcome(id, gating, r.vague.holds, d);
    }
    if (id == "exp-tightness") {
      const auto res = exponential_tightness_check(samples, sc.tightness_eps,
                                                   sc.tightness_radii);
      Json rows = Json::array();
      for (const auto& row : res.table) {
        rows.push_back(Json{
            {"eps", row.eps},
            {"radius", row.radius ? Json(*row.radius) : Json(nullptr)},
            {"limsup_mass", row.limsup_mass}});
      }
      return make_outcome(id, gating, res.holds, Json{{"rows", rows}});
    }
    if (id == "ldp-bounds") {
      std::vector<TaggedRegion> regions;
      for (const auto& rc : sc.bound_regions) {
        regions.push_back(TaggedRegion{
            rc.name,
            rc.closed ? RegionSet::Closed(rc.lo, rc.hi)
                      : RegionSet::Open(ExtReal(rc.lo), ExtReal(rc.hi)),
            rc.closed});
      }
      const auto res = ldp_bounds_check(samples, J, regions, sc.rate_tol);
      Json rows = Json::array();
      for (const auto& row : res.rows) {
        rows.push_back(Json{{"region", row.name},
                            {"closed", row.closed},
                            {"measured", row.measured},
                            {"capacity", row.capacity},
                            {"holds", row.holds}});
      }
      return make_outcome(id, gating, res.holds,
                          Json{{"tolerance", sc.rate_tol}, {"rows", rows}});
    }
    if (id == "sandwich") {
      const double s = sc.sandwich_slack;
      const auto& l0 = r.rates.l0;
      const auto& l1 = r.rates.l1;
      const std::vector<std::pair<std::string, std::vector<Witness>>> raw = {
          {"L|G* <= Lambda|S*", pointwise_le(r.lg_star_raw, r.abstract_raw, s)},
          {"Lambda|S* <= l0", pointwise_le(r.abstract_raw, l0, s)},
          {"l0 <= l1", pointwise_le(l0, l1, s)}};
      const std::vector<std::pair<std::string, std::vector<Witness>>> stab = {
          {"L|G* <= Lambda|S*", pointwise_le(r.lg_star, r.abstract_star, s)},
          {"Lambda|S* <= l0", pointwise_le(r.abstract_star, l0, s)}};
      bool holds = true;
      for (const auto* chain : {&raw, &stab}) {
        for (const auto& link : *chain) holds = holds && link.second.empty();
      }
      Json d{{"slack", s},
             {"sampled_families", chain_json(raw)},
             {"stabilized", chain_json(stab)}};
      return make_outcome(id, gating, holds, d);
    }
    if (id == "lem-x+") {
      bool holds = true;
      Json rows = Json::array();
      std::size_t checked = 0;
      for (std::size_t i = 0; i < r.L.values.size(); ++i) {
        if (!r.L.values.value(i).is_finite()) continue;
        const auto res =
            derivative_bound_check(r.L.values, r.rates, i, sc.rate_tol);
        ++checked;
        holds = holds && res.holds;
        if (res.holds) continue;
        for (const auto& side : res.sides) {
          if (side.holds) continue;
          rows.push_back(Json{{"lambda0", res.lambda0},
                              {"side", side.side},
                              {"slope", ext_json(side.slope)},
                              {"l1", ext_json(side.l1)},
                              {"bound", ext_json(side.bound)}});
        }
      }
      Json d{{"basis", "full-net surrogate"},
             {"tolerance", sc.rate_tol},
             {"lambda0_checked", checked},
             {"violations", rows}};
      return make_outcome(id, gating, holds, d);
    }
    if (id == "varadhan") {
      LimitOptions vopt = opt;
      vopt.tol = sc.rate_tol;
      bool holds = true;
      Json rows = Json::array();
      for (const auto& tc : sc.varadhan_tilts) {
        const auto res =
            varadhan_identity_check(samples, tc.tilt, r.rates, vopt);
        holds = holds && res.holds;
        rows.push_back(Json{{"tilt", tc.text},
                            {"lambda", ext_json(res.lambda)},
                            {"sup_h_minus_l1", ext_json(res.sup_h_minus_l1)},
                            {"gap", ext_json(res.gap)},
                            {"holds", res.holds}});
      }
      return make_outcome(id, gating, holds,
                          Json{{"tolerance", sc.rate_tol}, {"tilts", rows}});
    }
    if (id == "stability") {
      Json rows = Json::array();
      bool holds = r.lambda_zero.converged;
      auto add = [&](const std::string& what, bool ok,
                     const std::vector<double>& bad) {
        holds = holds && ok;
        rows.push_back(Json{{"table", what}, {"converged", ok},
                            {"unconverged", bad}});
      };
      add("L", r.L.all_converged(), r.L.unconverged_slopes());
      if (r.L_doubled) {
        add("L doubled", r.L_doubled->all_converged(),
            r.L_doubled->unconverged_slopes());
      }
      for (const auto& t : r.families) {
        add(t.name, t.base.all_exist && t.doubled.all_exist, {});
      }
      return make_outcome(
          id, gating, holds,
          Json{{"tolerance", sc.limit_tol},
               {"lambda_zero_converged", r.lambda_zero.converged},
               {"tables", rows}});
    }
    if (id == "ess-smooth") {
      const auto res = essential_smoothness_check(r.L.values);
      Json ws = Json::array();
      for (std::size_t i = 0; i < res.witnesses.size() && i < 25; ++i) {
        ws.push_back(Json{{"x", res.witnesses[i].x},
                          {"clause", res.witnesses[i].clause},
                          {"detail", res.witnesses[i].detail}});
      }
      Json d{{"interior_nonempty", res.interior_nonempty},
             {"differentiable", res.differentiable},
             {"steep_at_boundary", res.steep_at_boundary},
             {"witness_count", res.witnesses.size()},
             {"witnesses", ws}};
      return make_outcome(id, gating, res.holds, d);
    }
    throw Error("cli_harness", "unknown check id '" + id + "'");
  };

  for (const auto& id : sc.checks) r.checks.push_back(run_check(id, true));
  for (const auto& id : sc.diagnostics) r.checks.push_back(run_check(id, false));
  return r;
}

}  // namespace ldpkit::harness

// Copyright 2026 The cpip Authors.
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

#include "cpip/report.h"

#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace cpip {

using nlohmann::json;

std::string CheckModeName(CheckMode mode) {
  switch (mode) {
    case CheckMode::kFeasible:
      return "feasible";
    case CheckMode::kStrict:
      return "strict";
    case CheckMode::kBicriteria:
      return "bicriteria";
  }
  return "unknown";
}

std::string ConstraintFamilyName(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kCover:
      return "cover";
    case ConstraintFamily::kNonnegativity:
      return "nonnegativity";
    case ConstraintFamily::kMultiplicity:
      return "multiplicity";
    case ConstraintFamily::kRelaxedMultiplicity:
      return "relaxed_multiplicity";
    case ConstraintFamily::kPacking:
      return "packing";
    case ConstraintFamily::kRelaxedPacking:
      return "relaxed_packing";
  }
  return "unknown";
}

namespace {

bool Checks(CheckMode mode, ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kCover:
    case ConstraintFamily::kNonnegativity:
      return true;
    case ConstraintFamily::kMultiplicity:
      return mode != CheckMode::kBicriteria;
    case ConstraintFamily::kRelaxedMultiplicity:
      return mode == CheckMode::kBicriteria;
    case ConstraintFamily::kPacking:
      return mode == CheckMode::kFeasible;
    case ConstraintFamily::kRelaxedPacking:
      return mode != CheckMode::kFeasible;
  }
  return true;
}

std::string VectorText(const IntegerVector& x) {
  return absl::StrCat("[", absl::StrJoin(x, ", "), "]");
}

}  // namespace

bool ViolationReport::Ok(CheckMode mode) const {
  for (const Violation& v : violations) {
    if (Checks(mode, v.family)) return false;
  }
  return true;
}

std::vector<Violation> ViolationReport::For(CheckMode mode) const {
  std::vector<Violation> out;
  for (const Violation& v : violations) {
    if (Checks(mode, v.family)) out.push_back(v);
  }
  return out;
}

json ViolationReport::ToJson() const {
  json out = json::object();
  for (CheckMode mode :
       {CheckMode::kFeasible, CheckMode::kStrict, CheckMode::kBicriteria}) {
    out[std::string(CheckModeName(mode))] = Ok(mode);
  }
  json list = json::array();
  for (const Violation& v : violations) {
    list.push_back({{"family", std::string(ConstraintFamilyName(v.family))},
                    {"index", v.index},
                    {"amount", RationalToJson(v.amount)}});
  }
  out["violations"] = std::move(list);
  return out;
}

ViolationReport CheckSolution(const CpipInstance& instance,
                              const IntegerVector& x,
                              const Rational& epsilon) {
  ViolationReport report;
  report.epsilon = epsilon;
  const FractionalVector xf = ToFractional(x);
  const Rational stretch = 1 + epsilon;

  const RationalVector cover = CoverActivity(instance, xf);
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    if (cover[i] < instance.demand()[i]) {
      report.violations.push_back({ConstraintFamily::kCover, i,
                                   instance.demand()[i] - cover[i]});
    }
  }
  for (int j = 0; j < instance.num_vars(); ++j) {
    if (x[j] < 0) {
      report.violations.push_back(
          {ConstraintFamily::kNonnegativity, j, Rational(-x[j])});
    }
    const Bound& d = instance.bounds()[j];
    if (!d.has_value()) continue;
    if (xf[j] > *d) {
      report.violations.push_back(
          {ConstraintFamily::kMultiplicity, j, xf[j] - *d});
    }
    const Rational relaxed = CeilRational(stretch * *d);
    if (xf[j] > relaxed) {
      report.violations.push_back(
          {ConstraintFamily::kRelaxedMultiplicity, j, xf[j] - relaxed});
    }
  }
  const RationalVector pack = PackActivity(instance, xf);
  const RationalVector beta = instance.PackingRowSums();
  for (int i = 0; i < instance.num_pack_rows(); ++i) {
    const Rational& b = instance.capacity()[i];
    if (pack[i] > b) {
      report.violations.push_back({ConstraintFamily::kPacking, i, pack[i] - b});
    }
    const Rational relaxed = stretch * b + beta[i];
    if (pack[i] > relaxed) {
      report.violations.push_back(
          {ConstraintFamily::kRelaxedPacking, i, pack[i] - relaxed});
    }
  }
  return report;
}

json RationalToJson(const Rational& value) {
  if (IsIntegral(value) && value.get_num().fits_slong_p()) {
    return static_cast<int64_t>(value.get_num().get_si());
  }
  return RationalToString(value);
}

json IntegerVectorToJson(const IntegerVector& x) {
  json out = json::array();
  for (int64_t v : x) out.push_back(v);
  return out;
}

json FractionalVectorToJson(const FractionalVector& x) {
  json out = json::array();
  for (const Rational& v : x) out.push_back(RationalToJson(v));
  return out;
}

std::optional<double> SolveReport::RatioTo(
    const std::optional<Rational>& bound) const {
  if (!cost.has_value() || !bound.has_value()) return std::nullopt;
  if (sgn(*bound) == 0) {
    if (sgn(*cost) == 0) return 1.0;
    return std::nullopt;
  }
  return Rational(*cost / *bound).get_d();
}

bool SolveReport::GuaranteesHold() const {
  if (checks.has_value() && check_mode.has_value() && !checks->Ok(*check_mode))
    return false;
  if (cost.has_value() && cost_bound.has_value() && *cost > *cost_bound)
    return false;
  return true;
}

json SolveReport::ToJson() const {
  json out = json::object();
  out["mode"] = mode;
  out["status"] = status;
  if (!message.empty()) out["message"] = message;
  if (x.has_value()) out["x"] = IntegerVectorToJson(*x);
  if (fractional_x.has_value()) {
    out["x_fractional"] = FractionalVectorToJson(*fractional_x);
  }
  if (cost.has_value()) out["cost"] = RationalToJson(*cost);
  if (fopt.has_value()) out["fopt"] = RationalToJson(*fopt);
  if (fopt_kc.has_value()) out["fopt_kc"] = RationalToJson(*fopt_kc);
  if (opt.has_value()) out["opt"] = RationalToJson(*opt);
  json ratios = json::object();
  if (auto r = RatioTo(fopt)) ratios["cost_over_fopt"] = *r;
  if (auto r = RatioTo(fopt_kc)) ratios["cost_over_fopt_kc"] = *r;
  if (auto r = RatioTo(opt)) ratios["cost_over_opt"] = *r;
  out["ratios"] = std::move(ratios);
  if (cost_bound.has_value()) {
    out["cost_bound"] = {{"formula", cost_bound_formula},
                         {"value", RationalToJson(*cost_bound)},
                         {"holds", !cost.has_value() || *cost <= *cost_bound}};
  }
  if (checks.has_value()) {
    json guarantees = checks->ToJson();
    if (check_mode.has_value()) {
      guarantees["mode"] = std::string(CheckModeName(*check_mode));
      guarantees["ok"] = checks->Ok(*check_mode);
    }
    out["guarantees"] = std::move(guarantees);
  }
  json config = json::object();
  config["epsilon"] = RationalToJson(epsilon);
  if (lambda.has_value()) config["lambda"] = RationalToJson(*lambda);
  if (granularity.has_value()) config["K"] = *granularity;
  if (scale.has_value()) config["L"] = *scale;
  config["seed"] = seed;
  if (!rng.empty()) config["rng"] = rng;
  config["arithmetic"] = std::string(ArithmeticModeName(arithmetic));
  config["prune"] = prune;
  out["config"] = std::move(config);
  if (!kc_sets.empty() || cut_rows > 0 || lp_rounds > 0) {
    out["kc"] = {{"sets", kc_sets},
                 {"cut_rows", cut_rows},
                 {"lp_rounds", lp_rounds},
                 {"pinned", pinned}};
  }
  if (certificate.has_value()) {
    out["certificate"] = {{"verified", certificate->empty()},
                          {"issues", *certificate}};
  }
  if (!oracle_caps.empty()) out["oracle_caps"] = oracle_caps;
  if (unpruned_x.has_value()) {
    out["unpruned"] = {{"x", IntegerVectorToJson(*unpruned_x)},
                       {"cost", RationalToJson(unpruned_cost.value_or(0))}};
  }
  if (include_timing) out["wall_ms"] = wall_ms;
  return out;
}

std::string SolveReport::ToText() const {
  std::string out;
  absl::StrAppend(&out, "mode: ", mode, "\nstatus: ", status, "\n");
  if (!message.empty()) absl::StrAppend(&out, "message: ", message, "\n");
  if (x.has_value()) absl::StrAppend(&out, "x: ", VectorText(*x), "\n");
  if (fractional_x.has_value()) {
    std::vector<std::string> parts;
    for (const Rational& v : *fractional_x) parts.push_back(RationalToString(v));
    absl::StrAppend(&out, "x: [", absl::StrJoin(parts, ", "), "]\n");
  }
  auto line = [&out](std::string_view name, const std::optional<Rational>& v) {
    if (!v.has_value()) return;
    absl::StrAppendFormat(&out, "%s: %s (%.9g)\n", std::string(name),
                          RationalToString(*v), v->get_d());
  };
  line("cost", cost);
  line("fopt", fopt);
  line("fopt_kc", fopt_kc);
  line("opt", opt);
  if (auto r = RatioTo(fopt)) absl::StrAppendFormat(&out, "cost/fopt: %.6f\n", *r);
  if (auto r = RatioTo(fopt_kc)) {
    absl::StrAppendFormat(&out, "cost/fopt_kc: %.6f\n", *r);
  }
  if (auto r = RatioTo(opt)) absl::StrAppendFormat(&out, "cost/opt: %.6f\n", *r);
  if (cost_bound.has_value()) {
    absl::StrAppendFormat(&out, "cost bound (%s): %.9g %s\n",
                          cost_bound_formula, cost_bound->get_d(),
                          !cost.has_value() || *cost <= *cost_bound ? "OK"
                                                                    : "VIOLATED");
  }
  if (checks.has_value()) {
    absl::StrAppend(&out, "guarantees:\n");
    for (CheckMode m :
         {CheckMode::kFeasible, CheckMode::kStrict, CheckMode::kBicriteria}) {
      absl::StrAppend(&out, "  ", CheckModeName(m), ": ",
                      checks->Ok(m) ? "OK" : "VIOLATED",
                      check_mode == m ? "  <- required" : "", "\n");
    }
    for (const Violation& v : checks->violations) {
      const bool shortfall = v.family == ConstraintFamily::kCover ||
                             v.family == ConstraintFamily::kNonnegativity;
      absl::StrAppend(&out, "  ", ConstraintFamilyName(v.family), "[", v.index,
                      shortfall ? "] short by " : "] exceeded by ",
                      RationalToString(v.amount), "\n");
    }
  }
  absl::StrAppend(&out, "config: epsilon=", RationalToString(epsilon));
  if (lambda.has_value()) {
    absl::StrAppend(&out, " lambda=", RationalToString(*lambda));
  }
  if (granularity.has_value()) absl::StrAppend(&out, " K=", *granularity);
  if (scale.has_value()) absl::StrAppendFormat(&out, " L=%.9g", *scale);
  absl::StrAppend(&out, " seed=", seed);
  if (!rng.empty()) absl::StrAppend(&out, " rng=", rng);
  absl::StrAppend(&out, " arithmetic=", ArithmeticModeName(arithmetic),
                  " prune=", prune ? "on" : "off", "\n");
  if (!kc_sets.empty() || cut_rows > 0 || lp_rounds > 0) {
    absl::StrAppend(&out, "kc: rounds=", lp_rounds, " cut_rows=", cut_rows,
                    " sets=", kc_sets.size(), " pinned=[",
                    absl::StrJoin(pinned, ", "), "]\n");
  }
  if (certificate.has_value()) {
    absl::StrAppend(&out, "lp certificate: ",
                    certificate->empty() ? "verified" : "FAILED", "\n");
    for (const std::string& issue : *certificate) {
      absl::StrAppend(&out, "  ", issue, "\n");
    }
  }
  if (!oracle_caps.empty()) {
    absl::StrAppend(&out, "oracle caps: [", absl::StrJoin(oracle_caps, ", "),
                    "]\n");
  }
  if (unpruned_x.has_value()) {
    absl::StrAppend(&out, "unpruned x: ", VectorText(*unpruned_x), " cost ",
                    RationalToString(unpruned_cost.value_or(0)), "\n");
  }
  if (include_timing) absl::StrAppendFormat(&out, "wall_ms: %.3f\n", wall_ms);
  return out;
}

}  // namespace cpip

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

#include "cpip/kc.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace cpip {

std::vector<std::pair<int, LpRow>> KcSystem::CutRows() const {
  std::vector<std::pair<int, LpRow>> rows;
  for (size_t i = 0; i < residual.size(); ++i) {
    if (sgn(residual[i]) <= 0) continue;
    rows.emplace_back(static_cast<int>(i),
                      LpRow{coefficients[i], RowSense::kGreaterEqual,
                            residual[i]});
  }
  return rows;
}

absl::StatusOr<RationalVector> ResidualDemand(const CpipInstance& instance,
                                              const PinSet& pinned,
                                              const BoundVector& floor_bounds) {
  for (int j : pinned) {
    if (j < 0 || j >= instance.num_vars()) {
      return absl::InvalidArgumentError(
          absl::StrCat("pinned index ", j, " out of range"));
    }
    if (!floor_bounds[j].has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "cannot pin variable ", j, ": its multiplicity is unbounded"));
    }
  }
  RationalVector residual(instance.num_cover_rows());
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    Rational r = instance.demand()[i];
    for (int j : pinned) r -= instance.cover_matrix()[i][j] * *floor_bounds[j];
    residual[i] = sgn(r) > 0 ? r : Rational(0);
  }
  return residual;
}

absl::StatusOr<KcSystem> BuildKcSystem(const CpipInstance& instance,
                                       const PinSet& pinned,
                                       const BoundVector& floor_bounds) {
  auto residual = ResidualDemand(instance, pinned, floor_bounds);
  if (!residual.ok()) return residual.status();
  KcSystem system;
  system.pinned = pinned;
  std::sort(system.pinned.begin(), system.pinned.end());
  system.residual = *std::move(residual);
  std::vector<bool> in_f(instance.num_vars(), false);
  for (int j : pinned) in_f[j] = true;
  system.coefficients.assign(instance.num_cover_rows(),
                             RationalVector(instance.num_vars(), Rational(0)));
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    const Rational& cap = system.residual[i];
    for (int j = 0; j < instance.num_vars(); ++j) {
      if (in_f[j]) continue;
      const Rational& a = instance.cover_matrix()[i][j];
      system.coefficients[i][j] = a < cap ? a : cap;
    }
  }
  return system;
}

PinSet HighSet(const FractionalVector& x, const BoundVector& floor_bounds,
               const Rational& lambda, ArithmeticMode mode) {
  PinSet out;
  for (size_t j = 0; j < x.size(); ++j) {
    if (!floor_bounds[j].has_value()) continue;
    const Rational& d = *floor_bounds[j];
    const Rational lhs = x[j] * lambda;
    bool high = lhs >= d;
    if (!high && mode == ArithmeticMode::kFloat) {
      high = lhs.get_d() >= d.get_d() * (1.0 - 1e-12);
    }
    if (high) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::vector<KcViolation> FindViolatedKc(const CpipInstance& instance,
                                        const FractionalVector& x,
                                        const Rational& lambda,
                                        const BoundVector& floor_bounds,
                                        ArithmeticMode mode) {
  std::vector<KcViolation> out;
  const PinSet pinned = HighSet(x, floor_bounds, lambda, mode);
  auto system = BuildKcSystem(instance, pinned, floor_bounds);
  // HighSet only returns finite-bound indices.
  if (!system.ok()) return out;
  for (const auto& [row, cut] : system->CutRows()) {
    const Rational shortfall = cut.rhs - Dot(cut.coefficients, x);
    if (sgn(shortfall) <= 0) continue;
    if (mode == ArithmeticMode::kFloat &&
        shortfall.get_d() <= kFloatTolerance * (1.0 + cut.rhs.get_d())) {
      continue;
    }
    out.push_back({pinned, row, shortfall});
  }
  return out;
}

absl::StatusOr<LpKcResult> SolveLpKc(const CpipInstance& instance,
                                     const Rational& lambda,
                                     const SolveOptions& options) {
  if (lambda <= 1) return absl::InvalidArgumentError("lambda must exceed 1");
  const CpipInstance normalized = NormalizeWidth(instance);
  const BoundVector floor_bounds = FloorBounds(normalized.bounds());
  LpKcResult result;
  result.final_problem = BuildStandardLp(normalized, floor_bounds);
  SimplexOptions simplex;
  simplex.mode = options.arithmetic;
  std::set<std::pair<PinSet, int>> added;
  std::set<PinSet> sets;
  std::vector<KcViolation> outstanding;
  for (int round = 1; round <= options.max_rounds; ++round) {
    result.rounds = round;
    auto lp = SolveLp(result.final_problem, simplex);
    if (!lp.ok()) return lp.status();
    if (lp->status != LpStatus::kOptimal) {
      return absl::FailedPreconditionError(absl::StrCat(
          LpStatusName(lp->status), ": ",
          round == 1 ? "base LP" : "LP with KC cuts", " has no solution"));
    }
    result.objective_history.push_back(lp->objective_value);
    result.certificate_reports.push_back(
        VerifyCertificate(result.final_problem, *lp, 1e-7));
    result.x = lp->primal;
    result.objective = lp->objective_value;
    result.final_solution = *std::move(lp);

    outstanding = FindViolatedKc(normalized, result.x, lambda, floor_bounds,
                                 options.arithmetic);
    if (outstanding.empty()) return result;
    int new_rows = 0;
    for (const KcViolation& v : outstanding) {
      if (!added.insert({v.pinned, v.row}).second) continue;
      if (sets.insert(v.pinned).second) result.sets_seen.push_back(v.pinned);
      auto system = BuildKcSystem(normalized, v.pinned, floor_bounds);
      if (!system.ok()) return system.status();
      result.final_problem.rows.push_back(
          {system->coefficients[v.row], RowSense::kGreaterEqual,
           system->residual[v.row]});
      ++new_rows;
    }
    result.cut_rows += new_rows;
    if (new_rows == 0) {
      return absl::InternalError(
          "KC separation repeated an existing cut; the LP solve is not "
          "accurate enough (try rational arithmetic)");
    }
  }
  std::vector<std::string> pending;
  for (const KcViolation& v : outstanding) {
    pending.push_back(absl::StrFormat("F={%s} row %d short by %.3g",
                                      absl::StrJoin(v.pinned, ","), v.row,
                                      v.amount.get_d()));
  }
  std::vector<std::string> iterate;
  for (const Rational& v : result.x) iterate.push_back(RationalToString(v));
  return absl::ResourceExhaustedError(absl::StrCat(
      "KC cutting-plane loop hit max_rounds=", options.max_rounds,
      "; last iterate [", absl::StrJoin(iterate, ", "), "] objective ",
      RationalToString(result.objective), "; outstanding: ",
      absl::StrJoin(pending, "; ")));
}

PinningPlan MakePinningPlan(const FractionalVector& xbar,
                            const BoundVector& floor_bounds,
                            const Rational& epsilon, ArithmeticMode mode) {
  PinningPlan plan;
  plan.floor_bounds = floor_bounds;
  plan.pinned = HighSet(xbar, floor_bounds, 1 + epsilon, mode);
  plan.restricted_bounds.reserve(xbar.size());
  plan.restricted_xbar = xbar;
  for (int j : plan.pinned) plan.restricted_xbar[j] = 0;
  for (const Rational& v : plan.restricted_xbar) {
    plan.restricted_bounds.emplace_back(v);
  }
  return plan;
}

absl::StatusOr<StrictSolve> SolveCipStrict(const CpipInstance& instance,
                                           const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (sgn(options.epsilon) <= 0 || options.epsilon > 1) {
    return absl::InvalidArgumentError("epsilon must lie in (0, 1]");
  }
  const CpipInstance normalized = NormalizeWidth(instance);
  const Rational lambda = 1 + options.epsilon;
  StrictSolve out;
  auto lp_kc = SolveLpKc(normalized, lambda, options);
  if (!lp_kc.ok()) return lp_kc.status();
  out.lp_kc = *std::move(lp_kc);
  const FractionalVector& xbar = out.lp_kc.x;

  out.plan = MakePinningPlan(xbar, FloorBounds(normalized.bounds()),
                             options.epsilon, options.arithmetic);
  const BoundVector& floor_bounds = out.plan.floor_bounds;

  Rational pinned_cost = 0;
  for (int j : out.plan.pinned) {
    pinned_cost += normalized.cost()[j] * *floor_bounds[j];
  }
  const Rational xbar_cost = normalized.Cost(xbar);
  if (pinned_cost > lambda * xbar_cost &&
      options.arithmetic == ArithmeticMode::kRational) {
    return absl::InternalError("pinned cost exceeds (1+eps) c.xbar");
  }

  auto restricted = BuildKcSystem(normalized, out.plan.pinned, floor_bounds);
  if (!restricted.ok()) return restricted.status();
  out.restricted = *std::move(restricted);
  if (options.arithmetic == ArithmeticMode::kRational) {
    for (size_t i = 0; i < out.restricted.residual.size(); ++i) {
      if (Dot(out.restricted.coefficients[i], out.plan.restricted_xbar) <
          out.restricted.residual[i]) {
        return absl::InternalError(absl::StrCat(
            "restricted fractional solution misses KC row ", i));
      }
    }
  }

  const CoverSystem system{out.restricted.coefficients,
                           out.restricted.residual};
  auto rounding =
      BicriteriaRound(out.plan.restricted_xbar, system, normalized.cost(),
                      out.plan.restricted_bounds, options.epsilon);
  if (!rounding.ok()) return rounding.status();
  out.restricted_rounding = *std::move(rounding);

  IntegerVector x = out.restricted_rounding.x;
  for (int j : out.plan.pinned) x[j] = FloorToInt(*floor_bounds[j]);
  for (int j = 0; j < normalized.num_vars(); ++j) {
    const Bound& d = normalized.bounds()[j];
    if (d.has_value() && Rational(static_cast<long>(x[j])) > *d) {
      return absl::InternalError(
          absl::StrCat("strict multiplicity broken at variable ", j));
    }
  }

  SolveReport& report = out.report;
  report.mode = "strict";
  if (options.prune) {
    report.unpruned_x = x;
    report.unpruned_cost = instance.Cost(x);
    x = PruneCover(normalized, x);
  }
  out.x = x;
  report.x = x;
  report.cost = instance.Cost(x);
  report.fopt = out.lp_kc.objective_history.front();
  report.fopt_kc = out.lp_kc.objective;
  const Rational k(static_cast<long>(out.restricted_rounding.granularity));
  report.cost_bound = (1 + options.epsilon + 4 * k) * out.lp_kc.objective;
  report.cost_bound_formula = "(1+eps+4K)*fopt_kc";
  report.certificate = CertificateIssues(
      out.lp_kc.final_problem, out.lp_kc.final_solution, 1e-7);
  report.checks = CheckSolution(instance, x, options.epsilon);
  report.check_mode = CheckMode::kStrict;
  report.epsilon = options.epsilon;
  report.lambda = lambda;
  report.granularity = out.restricted_rounding.granularity;
  report.scale = out.restricted_rounding.scale;
  report.seed = options.seed;
  report.arithmetic = options.arithmetic;
  report.prune = options.prune;
  report.kc_sets = out.lp_kc.sets_seen;
  report.cut_rows = out.lp_kc.cut_rows;
  report.lp_rounds = out.lp_kc.rounds;
  report.pinned = out.plan.pinned;
  report.include_timing = options.include_timing;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out;
}

}  // namespace cpip

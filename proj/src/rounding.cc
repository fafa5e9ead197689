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

#include "cpip/rounding.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace cpip {

int CoverSystem::num_active_rows() const {
  int count = 0;
  for (const Rational& a : demand) count += sgn(a) > 0 ? 1 : 0;
  return count;
}

std::optional<Rational> CoverSystem::Width() const {
  std::optional<Rational> width;
  for (size_t i = 0; i < demand.size(); ++i) {
    if (sgn(demand[i]) <= 0) continue;
    for (const Rational& v : matrix[i]) {
      if (sgn(v) <= 0) continue;
      Rational ratio = demand[i] / v;
      if (!width.has_value() || ratio < *width) width = std::move(ratio);
    }
  }
  return width;
}

absl::StatusOr<double> ComputeScaleFactor(int num_rows, const Rational& width) {
  if (num_rows < 1) {
    return absl::InvalidArgumentError("scale factor needs at least one row");
  }
  if (width < 1) {
    return absl::FailedPreconditionError(absl::StrCat(
        "width ", RationalToString(width), " < 1: normalize width first"));
  }
  const double ratio = 4.0 * std::log(2.0 * num_rows) / width.get_d();
  return 1.0 + std::max(ratio, std::sqrt(ratio));
}

Rational ScaleToRational(double scale) { return RationalFromDouble(scale); }

IntegerVector RandomizedRound(const FractionalVector& xbar,
                              const Rational& scale, uint64_t seed) {
  std::mt19937_64 rng(seed);
  IntegerVector out;
  out.reserve(xbar.size());
  for (const Rational& v : xbar) {
    const Rational scaled = scale * v;
    const int64_t floor = FloorToInt(scaled);
    const Rational frac = scaled - floor;
    // Draw for every coordinate so streams stay aligned across inputs.
    const uint64_t bits = rng() >> 11;
    const Rational uniform(mpz_class(static_cast<unsigned long>(bits)),
                           mpz_class(1) << 53);
    out.push_back(uniform < frac ? floor + 1 : floor);
  }
  return out;
}

double EstimatorState::Potential() const {
  double sum = cost_term;
  for (double log_term : log_row_terms) sum += std::exp(log_term);
  return sum;
}

namespace {

// log E[exp(-t w X)] for X = floor + Bernoulli(frac).
double LogMoment(double t, double w, double floor, double frac) {
  if (w == 0.0) return 0.0;
  const double fixed = -t * w * floor;
  if (frac == 0.0) return fixed;
  return fixed + std::log1p(frac * std::expm1(-t * w));
}

constexpr double kMonotoneSlack = 1e-12;

}  // namespace

absl::StatusOr<DerandomizedRounding> DerandomizedRound(
    const FractionalVector& xbar, const CoverSystem& system,
    const RationalVector& cost, const Rational& scale) {
  const int n = static_cast<int>(xbar.size());
  if (static_cast<int>(cost.size()) != n) {
    return absl::InvalidArgumentError("cost and xbar differ in length");
  }
  if (scale < 1) return absl::InvalidArgumentError("scale factor must be >= 1");

  std::vector<int> rows;
  for (size_t i = 0; i < system.demand.size(); ++i) {
    if (sgn(system.demand[i]) > 0) rows.push_back(static_cast<int>(i));
  }

  std::vector<Rational> scaled(n);
  std::vector<int64_t> floors(n);
  std::vector<double> fracs(n);
  for (int j = 0; j < n; ++j) {
    scaled[j] = scale * xbar[j];
    floors[j] = FloorToInt(scaled[j]);
    fracs[j] = Rational(scaled[j] - floors[j]).get_d();
  }

  EstimatorState state;
  const Rational base_cost = Dot(cost, xbar);
  const double cost_norm = 2.0 * scale.get_d() * base_cost.get_d();
  if (cost_norm > 0.0) {
    state.cost_term = Dot(cost, scaled).get_d() / cost_norm;
  }
  if (!rows.empty()) {
    auto width = system.Width();
    if (!width.has_value()) {
      return absl::FailedPreconditionError(
          "cover rows with positive demand but no positive coefficient");
    }
    state.width = width->get_d();
    state.t = std::log(scale.get_d());
    for (int i : rows) {
      std::vector<double> w(n, 0.0);
      double log_term = state.t * state.width;
      for (int j = 0; j < n; ++j) {
        const Rational& coef = system.matrix[i][j];
        if (sgn(coef) == 0) continue;
        w[j] = Rational(coef * *width / system.demand[i]).get_d();
        log_term += LogMoment(state.t, w[j], static_cast<double>(floors[j]),
                              fracs[j]);
      }
      state.weights.push_back(std::move(w));
      state.log_row_terms.push_back(log_term);
    }
  }

  DerandomizedRounding result;
  double potential = state.Potential();
  result.potential_trace.push_back(potential);
  if (!(potential < 1.0)) {
    return absl::InternalError(absl::StrFormat(
        "width precondition violated: initial estimator %.17g >= 1",
        potential));
  }

  result.x.assign(n, 0);
  std::vector<double> candidate(state.log_row_terms.size());
  for (int j = 0; j < n; ++j) {
    const double floor = static_cast<double>(floors[j]);
    auto evaluate = [&](int64_t value, std::vector<double>& logs) {
      double phi = state.cost_term;
      if (cost_norm > 0.0) {
        phi += cost[j].get_d() *
               (static_cast<double>(value) - scaled[j].get_d()) / cost_norm;
      }
      for (size_t r = 0; r < logs.size(); ++r) {
        const double w = state.weights[r][j];
        logs[r] = state.log_row_terms[r];
        if (w != 0.0) {
          logs[r] += -state.t * w * static_cast<double>(value) -
                     LogMoment(state.t, w, floor, fracs[j]);
        }
        phi += std::exp(logs[r]);
      }
      return phi;
    };
    std::vector<double> logs_floor(candidate.size());
    const double phi_floor = evaluate(floors[j], logs_floor);
    int64_t chosen = floors[j];
    double phi = phi_floor;
    if (fracs[j] > 0.0) {
      std::vector<double> logs_ceil(candidate.size());
      const double phi_ceil = evaluate(floors[j] + 1, logs_ceil);
      if (phi_ceil < phi_floor) {
        chosen = floors[j] + 1;
        phi = phi_ceil;
        logs_floor.swap(logs_ceil);
      }
    }
    if (phi > potential + kMonotoneSlack * std::max(1.0, potential)) {
      return absl::InternalError(absl::StrFormat(
          "estimator increased at coordinate %d: %.17g -> %.17g", j, potential,
          phi));
    }
    if (cost_norm > 0.0) {
      state.cost_term += cost[j].get_d() *
                         (static_cast<double>(chosen) - scaled[j].get_d()) /
                         cost_norm;
    }
    state.log_row_terms.swap(logs_floor);
    state.fixed_prefix = j + 1;
    result.x[j] = chosen;
    potential = phi;
    result.potential_trace.push_back(potential);
  }
  result.final_state = std::move(state);

  // Exact postconditions.
  const FractionalVector xf = ToFractional(result.x);
  for (int i : rows) {
    if (Dot(system.matrix[i], xf) < system.demand[i]) {
      return absl::InternalError(
          absl::StrCat("derandomized rounding left cover row ", i, " short"));
    }
  }
  if (Dot(cost, xf) > 2 * scale * base_cost) {
    return absl::InternalError("derandomized rounding exceeded 2L cost");
  }
  return result;
}

absl::StatusOr<GranularRounding> GranularRound(
    const FractionalVector& xbar, const CoverSystem& system,
    const RationalVector& cost, int64_t granularity,
    const std::optional<Rational>& max_scale) {
  if (granularity < 1) {
    return absl::InvalidArgumentError("granularity K must be >= 1");
  }
  GranularRounding out;
  out.granularity = granularity;
  const int m = system.num_active_rows();
  if (m == 0) {
    out.x.assign(xbar.size(), Rational(0));
    out.exact_scale = 1;
    out.integer_rounding.x.assign(xbar.size(), 0);
    return out;
  }
  auto width = system.Width();
  if (!width.has_value()) {
    return absl::FailedPreconditionError("no covering structure");
  }
  const Rational k(static_cast<long>(granularity));
  auto scale = ComputeScaleFactor(m, k * *width);
  if (!scale.ok()) return scale.status();
  out.scale = *scale;
  out.exact_scale = ScaleToRational(*scale);
  if (max_scale.has_value() && out.exact_scale > *max_scale) {
    out.exact_scale = *max_scale;
    out.scale = max_scale->get_d();
  }

  RationalVector scaled_demand = system.demand;
  for (Rational& a : scaled_demand) a *= k;
  FractionalVector scaled_xbar = xbar;
  for (Rational& v : scaled_xbar) v *= k;
  const CoverSystem scaled_system{system.matrix, scaled_demand};

  auto rounded =
      DerandomizedRound(scaled_xbar, scaled_system, cost, out.exact_scale);
  if (!rounded.ok()) return rounded.status();
  out.x.reserve(xbar.size());
  for (int64_t v : rounded->x) {
    Rational value(mpz_class(static_cast<long>(v)), k.get_num());
    value.canonicalize();
    out.x.push_back(std::move(value));
  }
  out.integer_rounding = *std::move(rounded);
  return out;
}

absl::StatusOr<int64_t> BicriteriaGranularity(int num_rows,
                                              const Rational& width,
                                              const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon > 1) {
    return absl::InvalidArgumentError("epsilon must lie in (0, 1]");
  }
  if (num_rows < 1) return 1;
  if (width < 1) {
    return absl::FailedPreconditionError("normalize width first");
  }
  const double eps = epsilon.get_d();
  const double target =
      4.0 * std::log(2.0 * num_rows) / (width.get_d() * eps * eps);
  int64_t k = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(target)));
  // Guard against the ceiling landing one short after rounding error.
  while (true) {
    auto scale = ComputeScaleFactor(
        num_rows, Rational(static_cast<long>(k)) * width);
    if (!scale.ok()) return scale.status();
    if (*scale <= 1.0 + eps) break;
    ++k;
  }
  return k;
}

absl::StatusOr<BicriteriaRounding> BicriteriaRound(
    const FractionalVector& xbar, const CoverSystem& system,
    const RationalVector& cost, const BoundVector& bounds,
    const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon > 1) {
    return absl::InvalidArgumentError("epsilon must lie in (0, 1]");
  }
  if (bounds.size() != xbar.size()) {
    return absl::InvalidArgumentError("bounds and xbar differ in length");
  }
  for (size_t j = 0; j < xbar.size(); ++j) {
    if (sgn(xbar[j]) < 0 || (bounds[j].has_value() && xbar[j] > *bounds[j])) {
      return absl::InvalidArgumentError(
          absl::StrCat("xbar[", j, "] outside [0, d_j]"));
    }
  }
  BicriteriaRounding out;
  const int m = system.num_active_rows();
  if (m == 0) {
    out.x.assign(xbar.size(), 0);
    out.granularity = 1;
    out.granular.x.assign(xbar.size(), Rational(0));
    out.granular.exact_scale = 1;
    return out;
  }
  auto width = system.Width();
  if (!width.has_value()) {
    return absl::FailedPreconditionError("no covering structure");
  }
  auto k = BicriteriaGranularity(m, *width, epsilon);
  if (!k.ok()) return k.status();
  auto granular = GranularRound(xbar, system, cost, *k, 1 + epsilon);
  if (!granular.ok()) return granular.status();
  out.granularity = *k;
  out.scale = granular->scale;
  out.x.reserve(xbar.size());
  for (const Rational& v : granular->x) out.x.push_back(CeilToInt(v));
  out.granular = *std::move(granular);
  return out;
}

IntegerVector PruneCover(const CpipInstance& instance, IntegerVector x) {
  const int n = instance.num_vars();
  RationalVector slack = CoverActivity(instance, ToFractional(x));
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    slack[i] -= instance.demand()[i];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return instance.cost()[lhs] > instance.cost()[rhs];
  });
  for (int j : order) {
    if (sgn(instance.cost()[j]) <= 0 || x[j] <= 0) continue;
    int64_t drop = x[j];
    for (int i = 0; i < instance.num_cover_rows() && drop > 0; ++i) {
      const Rational& coef = instance.cover_matrix()[i][j];
      if (sgn(coef) <= 0) continue;
      if (sgn(slack[i]) < 0) {
        drop = 0;
        break;
      }
      drop = std::min(drop, FloorToInt(slack[i] / coef));
    }
    if (drop <= 0) continue;
    x[j] -= drop;
    for (int i = 0; i < instance.num_cover_rows(); ++i) {
      const Rational& coef = instance.cover_matrix()[i][j];
      if (sgn(coef) > 0) slack[i] -= coef * drop;
    }
  }
  return x;
}

absl::StatusOr<BicriteriaSolve> SolveCpipBicriteria(
    const CpipInstance& instance, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (sgn(options.epsilon) <= 0 || options.epsilon > 1) {
    return absl::InvalidArgumentError("epsilon must lie in (0, 1]");
  }
  const CpipInstance normalized = NormalizeWidth(instance);
  BicriteriaSolve out;
  out.lp = BuildStandardLp(normalized);
  SimplexOptions simplex;
  simplex.mode = options.arithmetic;
  auto lp = SolveLp(out.lp, simplex);
  if (!lp.ok()) return lp.status();
  if (lp->status != LpStatus::kOptimal) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no fractional solution (LP ", LpStatusName(lp->status), ")"));
  }
  out.lp_solution = *std::move(lp);

  const CoverSystem system{normalized.cover_matrix(), normalized.demand()};
  auto rounding =
      BicriteriaRound(out.lp_solution.primal, system, normalized.cost(),
                      normalized.bounds(), options.epsilon);
  if (!rounding.ok()) return rounding.status();
  out.rounding = *std::move(rounding);

  SolveReport& report = out.report;
  report.mode = "bicriteria";
  if (options.prune) {
    report.unpruned_x = out.rounding.x;
    report.unpruned_cost = instance.Cost(out.rounding.x);
  }
  out.x = options.prune ? PruneCover(normalized, out.rounding.x)
                        : out.rounding.x;
  report.x = out.x;
  report.cost = instance.Cost(out.x);
  report.fopt = out.lp_solution.objective_value;
  report.cost_bound = 4 * Rational(static_cast<long>(out.rounding.granularity)) *
                      out.lp_solution.objective_value;
  report.cost_bound_formula = "4K*fopt";
  report.certificate = CertificateIssues(out.lp, out.lp_solution, 1e-7);
  report.checks = CheckSolution(instance, out.x, options.epsilon);
  report.check_mode = CheckMode::kBicriteria;
  report.epsilon = options.epsilon;
  report.granularity = out.rounding.granularity;
  report.scale = out.rounding.scale;
  report.seed = options.seed;
  report.arithmetic = options.arithmetic;
  report.prune = options.prune;
  report.include_timing = options.include_timing;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out;
}

}  // namespace cpip

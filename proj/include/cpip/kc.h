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

// Knapsack-cover (KC) inequalities and the pinning solver that meets
// multiplicity bounds exactly.
//
// For a pinned set F (variables imagined at their upper bounds d'):
//   a^F_i  = max(0, a_i - sum_{j in F} A_ij d'_j)
//   A^F_ij = min(A_ij, a^F_i) for j not in F, 0 for j in F
// and A^F x >= a^F holds for every integer point of the cover system.

#ifndef CPIP_KC_H_
#define CPIP_KC_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "cpip/model.h"
#include "cpip/rational.h"
#include "cpip/report.h"
#include "cpip/rounding.h"
#include "cpip/simplex.h"

namespace cpip {

// Sorted variable indices.
using PinSet = std::vector<int>;

struct KcSystem {
  PinSet pinned;
  RationalVector residual;      // a^F
  RationalMatrix coefficients;  // A^F

  // Rows with positive residual demand, as ">=" LP rows.
  std::vector<std::pair<int, LpRow>> CutRows() const;
};

// Fails when some j in F has an unbounded d'_j.
absl::StatusOr<RationalVector> ResidualDemand(const CpipInstance& instance,
                                              const PinSet& pinned,
                                              const BoundVector& floor_bounds);

absl::StatusOr<KcSystem> BuildKcSystem(const CpipInstance& instance,
                                       const PinSet& pinned,
                                       const BoundVector& floor_bounds);

// F_lambda(x) = { j : d'_j finite, x_j >= d'_j / lambda }. In float mode
// the comparison leans toward inclusion by a relative 1e-12.
PinSet HighSet(const FractionalVector& x, const BoundVector& floor_bounds,
               const Rational& lambda, ArithmeticMode mode);

struct KcViolation {
  PinSet pinned;
  int row = 0;
  Rational amount;  // a^F_i - (A^F x)_i
};

// KC rows of F_lambda(x) that x violates. Empty means x meets condition (iv)
// of a lambda-relaxed solution.
std::vector<KcViolation> FindViolatedKc(const CpipInstance& instance,
                                        const FractionalVector& x,
                                        const Rational& lambda,
                                        const BoundVector& floor_bounds,
                                        ArithmeticMode mode);

struct LpKcResult {
  FractionalVector x;
  Rational objective;
  LpProblem final_problem;
  LpSolution final_solution;
  std::vector<Rational> objective_history;  // one per LP solve
  std::vector<PinSet> sets_seen;            // distinct F that produced cuts
  int cut_rows = 0;
  int rounds = 0;
  // Certificate check of every LP solved along the way.
  std::vector<std::vector<CertificateViolation>> certificate_reports;
};

// Cutting-plane realization of a lambda-relaxed LP-KC solution: solve the
// standard LP over d' = floor(d), add violated KC rows for F_lambda(x),
// repeat. Only valid inequalities are added, so the objective never exceeds
// the LP-KC optimum. `instance` must be width-normalized.
absl::StatusOr<LpKcResult> SolveLpKc(const CpipInstance& instance,
                                     const Rational& lambda,
                                     const SolveOptions& options);

struct PinningPlan {
  BoundVector floor_bounds;          // d'
  PinSet pinned;                     // F
  BoundVector restricted_bounds;     // d''
  FractionalVector restricted_xbar;  // xbar'
};

PinningPlan MakePinningPlan(const FractionalVector& xbar,
                            const BoundVector& floor_bounds,
                            const Rational& epsilon, ArithmeticMode mode);

struct StrictSolve {
  IntegerVector x;
  LpKcResult lp_kc;
  PinningPlan plan;
  KcSystem restricted;
  BicriteriaRounding restricted_rounding;
  SolveReport report;
};

// Pins F = { j : xbar_j >= d'_j/(1+eps) } to d'_j and rounds the rest on
// the KC-restricted system with BicriteriaRound. Output satisfies x <= d
// with no tolerance, A x >= a, B x <= (1+eps) b + beta and
// c.x <= (1 + eps + 4K) c.xbar.
absl::StatusOr<StrictSolve> SolveCipStrict(const CpipInstance& instance,
                                           const SolveOptions& options);

}  // namespace cpip

#endif  // CPIP_KC_H_

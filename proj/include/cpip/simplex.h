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

// Dense two-phase primal simplex for
//
//   min c.x  s.t.  g_k . x (>= | <=) h_k,  0 <= x_j <= u_j
//
// Finite upper bounds are appended as explicit "<=" rows after the problem
// rows; unbounded variables get no row. Every OPTIMAL answer carries a dual
// solution, every INFEASIBLE answer a Farkas ray, and both can be checked
// independently with VerifyCertificate / VerifyInfeasibility.

#ifndef CPIP_SIMPLEX_H_
#define CPIP_SIMPLEX_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cpip/model.h"
#include "cpip/rational.h"

namespace cpip {

enum class RowSense { kGreaterEqual, kLessEqual };

struct LpRow {
  RationalVector coefficients;
  RowSense sense = RowSense::kGreaterEqual;
  Rational rhs;
};

struct LpProblem {
  RationalVector objective;
  std::vector<LpRow> rows;
  BoundVector upper_bounds;  // lower bounds are all zero

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
std::string LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  FractionalVector primal;
  // Multipliers in the Lagrangian c.x - sum_k y_k (g_k.x - h_k)
  // - sum_j z_j (x_j - u_j): y_k >= 0 on ">=" rows, y_k <= 0 on "<=" rows,
  // z_j <= 0 and zero where u_j is unbounded.
  RationalVector row_duals;
  RationalVector bound_duals;
  Rational objective_value;
  // Set for kInfeasible: y.g_j + z_j <= 0 for all j, y.h + z.u > 0 with the
  // same sign pattern as the duals.
  RationalVector farkas_rows;
  RationalVector farkas_bounds;
  ArithmeticMode mode = ArithmeticMode::kRational;
  int iterations = 0;
};

enum class PivotRule { kLargestCoefficient, kBland };

struct SimplexOptions {
  ArithmeticMode mode = ArithmeticMode::kRational;
  PivotRule rule = PivotRule::kLargestCoefficient;
  // Switch to Bland's rule after this many consecutive degenerate pivots.
  int degenerate_pivots_before_bland = 25;
  int max_iterations = 50000;
};

absl::StatusOr<LpSolution> SolveLp(const LpProblem& problem,
                                   const SimplexOptions& options = {});

struct CertificateViolation {
  enum class Kind {
    kPrimalRow,
    kPrimalUpperBound,
    kPrimalNonnegativity,
    kDualSign,
    kBoundDualSign,
    kReducedCost,
    kDualityGap,
    kFarkasColumn,
    kFarkasValue,
  };
  Kind kind;
  int index = -1;  // row or variable, -1 for global conditions
  double amount = 0.0;

  std::string Describe() const;
};

// Empty result means certified. Feasibility violations are measured against
// tol * (1 + |rhs|), the gap against tol * (1 + |objective|).
std::vector<CertificateViolation> VerifyCertificate(const LpProblem& problem,
                                                    const LpSolution& solution,
                                                    double tolerance);

// VerifyCertificate (or VerifyInfeasibility for INFEASIBLE answers) as
// human-readable lines.
std::vector<std::string> CertificateIssues(const LpProblem& problem,
                                           const LpSolution& solution,
                                           double tolerance);

// Checks the Farkas ray of an INFEASIBLE answer.
std::vector<CertificateViolation> VerifyInfeasibility(
    const LpProblem& problem, const LpSolution& solution, double tolerance);

// Standard relaxation of an instance: cover rows (>=), then pack rows (<=),
// with the given per-variable upper bounds.
LpProblem BuildStandardLp(const CpipInstance& instance,
                          const BoundVector& upper_bounds);
inline LpProblem BuildStandardLp(const CpipInstance& instance) {
  return BuildStandardLp(instance, instance.bounds());
}

}  // namespace cpip

#endif  // CPIP_SIMPLEX_H_

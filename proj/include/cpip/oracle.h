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

// Exhaustive ground truth for small instances.

#ifndef CPIP_ORACLE_H_
#define CPIP_ORACLE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cpip/kc.h"
#include "cpip/model.h"
#include "cpip/rational.h"

namespace cpip {

struct OracleBudget {
  int64_t max_points = 2'000'000;
};

// Effective per-variable search bound: floor(d_j) when finite, otherwise
// ceil(max_i a_i / min_{A_ij > 0} A_ij) (0 for a column with no positive
// cover entry).
std::vector<int64_t> OracleCaps(const CpipInstance& instance);

// prod_j (caps_j + 1), saturated at INT64_MAX.
int64_t SearchSpaceSize(const std::vector<int64_t>& caps);

enum class OracleStatus { kOptimal, kInfeasible, kBudgetExceeded };
std::string OracleStatusName(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  IntegerVector x;
  Rational cost;
  std::vector<int64_t> caps;
  int64_t space_size = 0;
  int64_t nodes_visited = 0;
};

// min { c.x : A x >= a, B x <= b, 0 <= x <= caps, x integer } by
// depth-first enumeration in lexicographic order, pruned on packing rows,
// on unreachable cover rows and on cost. Ties go to the lexicographically
// smallest x.
OracleResult BruteForceOpt(const CpipInstance& instance,
                           const OracleBudget& budget = {});

using KcBuilder = std::function<absl::StatusOr<KcSystem>(
    const CpipInstance&, const PinSet&, const BoundVector&)>;

struct KcCounterexample {
  PinSet pinned;
  IntegerVector y;
  int row = 0;
  Rational lhs;
  Rational rhs;
};

struct KcValidityReport {
  int64_t sets_checked = 0;
  int64_t points_checked = 0;  // cover-feasible integer points
  std::vector<KcCounterexample> counterexamples;

  bool Ok() const { return counterexamples.empty(); }
};

// For every F among the finite-bound variables and every integer y with
// A y >= a and 0 <= y <= floor(d) (caps for unbounded d), checks
// A^F y >= a^F. Fails with ResourceExhausted when 2^|F| times the search
// space exceeds the budget. `builder` defaults to BuildKcSystem.
absl::StatusOr<KcValidityReport> CheckKcValidity(
    const CpipInstance& instance, const OracleBudget& budget = {},
    const KcBuilder& builder = BuildKcSystem);

}  // namespace cpip

#endif  // CPIP_ORACLE_H_

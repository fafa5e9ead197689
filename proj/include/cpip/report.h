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

// Solution checking and the per-solve report shared by every solver.

#ifndef CPIP_REPORT_H_
#define CPIP_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpip/model.h"
#include "cpip/rational.h"
#include "json.hpp"

namespace cpip {

// Which guarantee set a solution is judged against.
//   kFeasible:   A x >= a, B x <= b,             x <= d
//   kStrict:     A x >= a, B x <= (1+eps) b + beta, x <= d
//   kBicriteria: A x >= a, B x <= (1+eps) b + beta, x <= ceil((1+eps) d)
enum class CheckMode { kFeasible, kStrict, kBicriteria };
std::string CheckModeName(CheckMode mode);

enum class ConstraintFamily {
  kCover,
  kNonnegativity,
  kMultiplicity,           // x_j <= d_j
  kRelaxedMultiplicity,    // x_j <= ceil((1+eps) d_j)
  kPacking,                // (B x)_i <= b_i
  kRelaxedPacking,         // (B x)_i <= (1+eps) b_i + beta_i
};
std::string ConstraintFamilyName(ConstraintFamily family);

struct Violation {
  ConstraintFamily family;
  int index = 0;
  Rational amount;  // how far past the limit, > 0
};

struct ViolationReport {
  Rational epsilon;
  std::vector<Violation> violations;

  // True when no violation belongs to a family checked by `mode`.
  bool Ok(CheckMode mode) const;
  std::vector<Violation> For(CheckMode mode) const;
  nlohmann::json ToJson() const;
};

// Exact check of every constraint family; report-only.
ViolationReport CheckSolution(const CpipInstance& instance,
                              const IntegerVector& x,
                              const Rational& epsilon);

struct SolveReport {
  std::string mode;
  std::string status = "ok";
  std::string message;

  std::optional<IntegerVector> x;
  std::optional<FractionalVector> fractional_x;
  std::optional<Rational> cost;

  // Lower bounds and reference values.
  std::optional<Rational> fopt;
  std::optional<Rational> fopt_kc;
  std::optional<Rational> opt;

  // Concrete guarantee: cost <= cost_bound.
  std::optional<Rational> cost_bound;
  std::string cost_bound_formula;

  std::optional<ViolationReport> checks;
  std::optional<CheckMode> check_mode;

  // Configuration echo.
  Rational epsilon = 1;
  std::optional<Rational> lambda;
  std::optional<int64_t> granularity;  // K
  std::optional<double> scale;         // L (or L')
  uint64_t seed = 0;
  std::string rng;
  ArithmeticMode arithmetic = ArithmeticMode::kRational;
  bool prune = true;

  // KC bookkeeping.
  std::vector<std::vector<int>> kc_sets;
  int cut_rows = 0;
  int lp_rounds = 0;
  std::vector<int> pinned;

  // Issues found by the LP certificate check; empty means verified.
  std::optional<std::vector<std::string>> certificate;
  // Oracle search bounds when OPT came from enumeration.
  std::vector<int64_t> oracle_caps;

  std::optional<IntegerVector> unpruned_x;
  std::optional<Rational> unpruned_cost;

  double wall_ms = 0.0;
  bool include_timing = true;

  std::optional<double> RatioTo(const std::optional<Rational>& bound) const;
  bool GuaranteesHold() const;

  nlohmann::json ToJson() const;
  std::string ToText() const;
};

nlohmann::json RationalToJson(const Rational& value);
nlohmann::json IntegerVectorToJson(const IntegerVector& x);
nlohmann::json FractionalVectorToJson(const FractionalVector& x);

}  // namespace cpip

#endif  // CPIP_REPORT_H_

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

// Instance generators and the benchmark harness.
//
// Every generator is a pure function of its arguments; randomness comes
// from mt19937_64 seeded with the given seed, consumed through raw 64-bit
// draws so output does not depend on the standard library's distributions.

#ifndef CPIP_GENBENCH_H_
#define CPIP_GENBENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cpip/model.h"
#include "cpip/oracle.h"
#include "cpip/rational.h"
#include "json.hpp"

namespace cpip {

enum class Family { kSetCover, kMultisetMulticover, kKnapsackGap, kRandomCpip };
std::string FamilyName(Family family);
std::optional<Family> ParseFamily(std::string_view name);

struct GeneratorSpec {
  Family family = Family::kRandomCpip;
  int m = 4;  // cover rows (elements)
  int n = 4;  // variables (sets)
  int r = 0;  // packing rows (RANDOM_CPIP only)
  double density = 0.5;
  int coef_max = 3;   // largest nonzero entry of A and B
  int cost_min = 1;
  int cost_max = 10;
  int max_bound = 3;  // finite d_j drawn from {1..max_bound}
  // RANDOM_CPIP: probability that d_j is unbounded.
  double unbounded_fraction = 0.0;
  uint64_t seed = 0;
  Rational delta = Rational(1, 10);  // KNAPSACK_GAP only
};

// min{x_2 : (1-delta) x_1 + x_2 >= 1, x_1 <= 1}. Requires 0 < delta < 1.
absl::StatusOr<CpipInstance> KnapsackGap(const Rational& delta);

// A_ij in {0,1} with probability `density` of a 1, a_i = 1, d_j = 1, integer
// costs in [cost_min, cost_max]. Rows left empty get one random set.
absl::StatusOr<CpipInstance> GenSetCover(const GeneratorSpec& spec);

// Integer A_ij in {0..coef_max}, finite d_j in {1..max_bound} with at least
// one d_j = max_bound, and a_i in {1..sum_j A_ij d_j}.
absl::StatusOr<CpipInstance> GenMultisetMulticover(const GeneratorSpec& spec);

// General instance with halves in A and B. A reference point z
// (z_j = ceil(d_j/2), or a random value for unbounded d_j) fixes
// b = B z + slack and a = s * A z with s in {1/4, 1/2, 3/4, 1}, so z is
// feasible both fractionally and integrally.
absl::StatusOr<CpipInstance> GenRandomCpip(const GeneratorSpec& spec);

absl::StatusOr<CpipInstance> Generate(const GeneratorSpec& spec);

struct BenchConfig {
  std::vector<GeneratorSpec> specs;
  std::vector<Rational> epsilons = {Rational(1)};
  // Instance i is generated with seed + i; knapsack-gap ignores it.
  uint64_t seed = 0;
  ArithmeticMode arithmetic = ArithmeticMode::kRational;
  bool prune = true;
  OracleBudget budget;
  bool include_timing = false;
};

struct BenchRow {
  int id = 0;
  std::string family;
  int m = 0, n = 0, r = 0;
  Rational epsilon;
  std::optional<Rational> fopt;
  std::optional<Rational> fopt_kc;
  std::optional<Rational> opt;
  std::optional<Rational> bicriteria_cost;
  // max_j (x_j - d_j) and max_i ((B x)_i - b_i), floored at 0.
  std::optional<Rational> bicriteria_multiplicity_excess;
  std::optional<Rational> bicriteria_packing_excess;
  bool bicriteria_ok = false;
  std::optional<Rational> strict_cost;
  bool strict_ok = false;
  std::optional<int64_t> granularity;  // K of the bicriteria solve
  std::optional<double> scale;         // L' of the bicriteria solve
  double wall_ms = 0.0;
  std::vector<std::string> errors;

  std::optional<double> BicriteriaRatio() const;  // cost / fopt
  std::optional<double> StrictRatio() const;      // cost / OPT
  std::optional<double> StrictKcRatio() const;    // cost / fopt_kc
  std::optional<double> GapRatio() const;         // OPT / fopt
};

struct RatioSummary {
  int count = 0;
  double mean = 0.0;
  double max = 0.0;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  bool include_timing = false;

  RatioSummary Summarize(std::optional<double> (BenchRow::*ratio)() const) const;
  std::string ToText() const;
  // One JSON document per row, then one summary document.
  std::string ToJsonLines() const;
};

nlohmann::json BenchRowToJson(const BenchRow& row, bool include_timing);

// Runs every generator setting at every epsilon. Failures are recorded in the row.
BenchTable RunBench(const BenchConfig& config);

}  // namespace cpip

#endif  // CPIP_GENBENCH_H_

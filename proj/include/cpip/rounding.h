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

// Rounding fractional covers to integer (or 1/K-granular) covers.
//
// The chain is
//   scale by L = 1 + max{4 ln(2m)/W, sqrt(4 ln(2m)/W)} and round each
//   coordinate to floor/ceil            -> RandomizedRound / DerandomizedRound
//   run that on (A, K a) and divide by K -> GranularRound
//   pick K = ceil(4 ln(2m) / (W eps^2)), round the granular vector up
//                                        -> BicriteriaRound
//   LP relaxation + BicriteriaRound      -> SolveCpipBicriteria
//
// Cost guarantees are the explicit constants 2L (integer rounding), 2L'
// (granular rounding) and 4K (bicriteria rounding).

#ifndef CPIP_ROUNDING_H_
#define CPIP_ROUNDING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cpip/model.h"
#include "cpip/rational.h"
#include "cpip/report.h"
#include "cpip/simplex.h"

namespace cpip {

inline constexpr char kRngName[] = "mt19937_64";

// A cover system A x >= a. Rows with a_i = 0 are ignored everywhere.
struct CoverSystem {
  const RationalMatrix& matrix;
  const RationalVector& demand;

  int num_active_rows() const;
  // min { a_i / A_ij : A_ij > 0, a_i > 0 }; nullopt if there is none.
  std::optional<Rational> Width() const;
};

struct RoundingParams {
  Rational epsilon = 1;
  int64_t granularity = 1;  // K
  double scale = 1.0;       // L
  uint64_t seed = 0;
};

// L = 1 + max{4 ln(2m)/W, sqrt(4 ln(2m)/W)}. Fails unless m >= 1 and
// W >= 1 ("normalize width first").
absl::StatusOr<double> ComputeScaleFactor(int num_rows, const Rational& width);

// Exact rational version of a scale factor, used to form L * xbar.
Rational ScaleToRational(double scale);

// x' = L xbar; each coordinate independently becomes ceil(x'_j) with
// probability x'_j - floor(x'_j), floor(x'_j) otherwise. Reproducible for a
// given seed (mt19937_64, 53-bit uniforms compared exactly).
IntegerVector RandomizedRound(const FractionalVector& xbar,
                              const Rational& scale, uint64_t seed);

// Pessimistic estimator for the failure event
//   c.x > 2L c.xbar   or   (A x)_i < a_i for some i
// of RandomizedRound: a Markov term for the cost plus one Chernoff
// exponential-moment term per row,
//   row_i = e^{t W} prod_j E[e^{-t w_ij x_j}],  w_ij = A_ij W / a_i,  t = ln L.
// Row terms are kept as logarithms.
struct EstimatorState {
  double t = 0.0;
  double width = 0.0;
  double cost_term = 0.0;
  std::vector<double> log_row_terms;
  std::vector<std::vector<double>> weights;  // active rows x n
  int fixed_prefix = 0;

  double Potential() const;
};

struct DerandomizedRounding {
  IntegerVector x;
  // Potential before fixing anything, then after each coordinate.
  std::vector<double> potential_trace;
  EstimatorState final_state;
};

// Method of conditional probabilities over the estimator above, fixing
// coordinates 1..n in order and preferring floor on ties. Postconditions
// (checked exactly): x <= ceil(L xbar), A x >= a, c.x <= 2L c.xbar.
absl::StatusOr<DerandomizedRounding> DerandomizedRound(
    const FractionalVector& xbar, const CoverSystem& system,
    const RationalVector& cost, const Rational& scale);

struct GranularRounding {
  FractionalVector x;  // every entry an integer multiple of 1/K
  int64_t granularity = 1;
  double scale = 1.0;  // L' = L(m, K W)
  Rational exact_scale;
  DerandomizedRounding integer_rounding;  // on (A, K a) from K xbar
};

// Rounds K xbar over (A, K a) with L' = L(m, K W) and returns the result
// divided by K. `max_scale` caps L' (used by BicriteriaRound to keep
// L' <= 1 + eps exact).
absl::StatusOr<GranularRounding> GranularRound(
    const FractionalVector& xbar, const CoverSystem& system,
    const RationalVector& cost, int64_t granularity,
    const std::optional<Rational>& max_scale = std::nullopt);

// Smallest K >= ceil(4 ln(2m)/(W eps^2)) with L(m, K W) <= 1 + eps.
absl::StatusOr<int64_t> BicriteriaGranularity(int num_rows,
                                              const Rational& width,
                                              const Rational& epsilon);

struct BicriteriaRounding {
  IntegerVector x;
  int64_t granularity = 1;
  double scale = 1.0;
  GranularRounding granular;
};

// x = ceil(granular rounding of xbar). Guarantees x <= ceil((1+eps) xbar),
// A x >= a and c.x <= 4K c.xbar. Requires xbar <= d.
absl::StatusOr<BicriteriaRounding> BicriteriaRound(
    const FractionalVector& xbar, const CoverSystem& system,
    const RationalVector& cost, const BoundVector& bounds,
    const Rational& epsilon);

// Lowers coordinates with positive cost, most expensive first, as far as
// the cover rows allow. Never raises a coordinate, so every upper-bound
// style guarantee of the input is kept and the cost never increases.
IntegerVector PruneCover(const CpipInstance& instance, IntegerVector x);

struct SolveOptions {
  Rational epsilon = 1;
  ArithmeticMode arithmetic = ArithmeticMode::kRational;
  bool prune = true;
  uint64_t seed = 0;
  int max_rounds = 1000;
  bool include_timing = true;
};

struct BicriteriaSolve {
  IntegerVector x;
  LpProblem lp;
  LpSolution lp_solution;
  BicriteriaRounding rounding;
  SolveReport report;
};

// Standard LP relaxation (with B x <= b and x <= d) followed by
// BicriteriaRound on the cover rows. Normalizes the width first.
// Fails with "no fractional solution" when the LP is infeasible.
absl::StatusOr<BicriteriaSolve> SolveCpipBicriteria(
    const CpipInstance& instance, const SolveOptions& options);

}  // namespace cpip

#endif  // CPIP_ROUNDING_H_

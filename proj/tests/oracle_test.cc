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

#include "cpip/oracle.h"

#include "cpip/kc.h"
#include "cpip/report.h"
#include "cpip/rounding.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cpip {
namespace {

using ::cpip::testing::ForEachPoint;
using ::cpip::testing::Gap;
using ::cpip::testing::Inst;
using ::cpip::testing::NaiveIntegerOptimum;
using ::cpip::testing::Q;
using ::cpip::testing::RandomInstance;

TEST(BruteForceOptTest, GapInstanceLexicographicTieBreak) {
  const OracleResult r = BruteForceOpt(Gap(Q("1/10")));
  ASSERT_EQ(r.status, OracleStatus::kOptimal);
  EXPECT_EQ(r.cost, 1);
  EXPECT_EQ(r.x, (IntegerVector{0, 1}));
}

TEST(BruteForceOptTest, ZeroDemandIsZero) {
  const OracleResult r = BruteForceOpt(
      Inst(R"({"A": [[1, 1]], "a": [0], "c": [2, 3], "d": [2, 2]})"));
  ASSERT_EQ(r.status, OracleStatus::kOptimal);
  EXPECT_EQ(r.x, (IntegerVector{0, 0}));
  EXPECT_EQ(r.cost, 0);
}

TEST(BruteForceOptTest, CapsForUnboundedVariables) {
  const CpipInstance inst =
      Inst(R"({"A": [[2, 3, 0], [1, 0, 0]], "a": [5, 2], "c": [1, 1, 1],
               "d": [null, null, null]})");
  EXPECT_EQ(OracleCaps(inst), (std::vector<int64_t>{5, 2, 0}));
  const CpipInstance bounded =
      Inst(R"({"A": [[1]], "a": [1], "c": [1], "d": ["7/2"]})");
  EXPECT_EQ(OracleCaps(bounded), (std::vector<int64_t>{3}));
}

TEST(BruteForceOptTest, BudgetExceededReportsSize) {
  const CpipInstance inst =
      Inst(R"({"A": [[1, 1, 1]], "a": [1], "c": [1, 1, 1], "d": [9, 9, 9]})");
  const OracleResult r = BruteForceOpt(inst, {999});
  EXPECT_EQ(r.status, OracleStatus::kBudgetExceeded);
  EXPECT_EQ(r.space_size, 1000);
  EXPECT_EQ(BruteForceOpt(inst, {1000}).status, OracleStatus::kOptimal);
}

TEST(BruteForceOptTest, PackingMakesInfeasible) {
  const OracleResult r = BruteForceOpt(
      Inst(R"({"A": [[1]], "a": [2], "B": [[1]], "b": [1], "c": [1],
               "d": [3]})"));
  EXPECT_EQ(r.status, OracleStatus::kInfeasible);
}

TEST(BruteForceOptTest, AgreesWithNaiveEnumeration) {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    const CpipInstance inst = RandomInstance(seed, 6, 2, 3, 0.2);
    const OracleResult r = BruteForceOpt(inst);
    const auto naive = NaiveIntegerOptimum(inst, OracleCaps(inst));
    ASSERT_TRUE(naive.has_value());
    ASSERT_EQ(r.status, OracleStatus::kOptimal);
    EXPECT_EQ(r.cost, naive->second) << "seed " << seed;
    EXPECT_EQ(r.x, naive->first) << "seed " << seed;
  }
}

// Every algorithm output that is integer feasible and within d costs at
// least OPT.
TEST(BruteForceOptTest, LowerBoundsEveryFeasibleOutput) {
  int compared = 0;
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const CpipInstance inst = RandomInstance(seed, 5, 2, 3);
    const OracleResult opt = BruteForceOpt(inst);
    ASSERT_EQ(opt.status, OracleStatus::kOptimal);
    SolveOptions options;
    std::vector<IntegerVector> outputs;
    if (auto s = SolveCipStrict(inst, options); s.ok()) outputs.push_back(s->x);
    if (auto b = SolveCpipBicriteria(inst, options); b.ok()) {
      outputs.push_back(b->x);
    }
    for (const IntegerVector& y : outputs) {
      if (!CheckSolution(inst, y, 1).Ok(CheckMode::kFeasible)) continue;
      ++compared;
      EXPECT_GE(inst.Cost(y), opt.cost);
    }
  }
  EXPECT_GT(compared, 0);
}

TEST(CheckSolutionTest, FeasibleStrictSolutionIsClean) {
  const CpipInstance gap = Gap(Q("1/10"));
  const ViolationReport r = CheckSolution(gap, {1, 1}, 1);
  EXPECT_TRUE(r.Ok(CheckMode::kStrict));
  EXPECT_TRUE(r.For(CheckMode::kStrict).empty());
}

TEST(CheckSolutionTest, RelaxedMultiplicityViolationNamesVariable) {
  const CpipInstance inst =
      Inst(R"({"A": [[1, 1]], "a": [1], "c": [1, 1], "d": [1, 2]})");
  // ceil((1 + 1/2) * 2) = 3.
  const ViolationReport r = CheckSolution(inst, {0, 4}, Q("1/2"));
  const auto v = r.For(CheckMode::kBicriteria);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].family, ConstraintFamily::kRelaxedMultiplicity);
  EXPECT_EQ(v[0].index, 1);
  EXPECT_EQ(v[0].amount, 1);
}

// Checker completeness: over every point of a small box the feasible-mode
// verdict equals a direct evaluation of the constraints.
TEST(CheckSolutionTest, VerdictMatchesDirectEvaluation) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const CpipInstance inst = RandomInstance(seed, 4, 2, 2);
    std::vector<int64_t> box(inst.num_vars(), 3);
    ForEachPoint(box, [&](const IntegerVector& x) {
      bool within = true;
      for (int j = 0; j < inst.num_vars(); ++j) {
        within = within && Rational(static_cast<long>(x[j])) <= *inst.bounds()[j];
      }
      const bool expected = within && testing::CoverFeasible(inst, x) &&
                            testing::PackFeasible(inst, x);
      ASSERT_EQ(CheckSolution(inst, x, 1).Ok(CheckMode::kFeasible), expected);
    });
  }
}

TEST(CheckSolutionTest, PerturbedFeasibleSolutionsAreCaught) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const CpipInstance inst = RandomInstance(seed, 5, 2, 3);
    const OracleResult opt = BruteForceOpt(inst);
    ASSERT_EQ(opt.status, OracleStatus::kOptimal);
    ASSERT_TRUE(CheckSolution(inst, opt.x, 1).Ok(CheckMode::kFeasible));
    for (int j = 0; j < inst.num_vars(); ++j) {
      for (int delta : {-1, 1}) {
        IntegerVector y = opt.x;
        y[j] += delta;
        const ViolationReport r = CheckSolution(inst, y, 1);
        bool within = Rational(static_cast<long>(y[j])) <= *inst.bounds()[j];
        const bool expected = y[j] >= 0 && within &&
                              testing::CoverFeasible(inst, y) &&
                              testing::PackFeasible(inst, y);
        EXPECT_EQ(r.Ok(CheckMode::kFeasible), expected);
      }
    }
  }
}

TEST(CheckKcValidityTest, GapInstanceAllPinSets) {
  auto r = CheckKcValidity(Gap(Q("1/10")));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->Ok());
  EXPECT_EQ(r->sets_checked, 2);  // only x1 has a finite bound
}

TEST(CheckKcValidityTest, EmptyPinSetOnly) {
  const CpipInstance inst = NormalizeWidth(RandomInstance(3, 4, 0, 2, 1.0));
  auto r = CheckKcValidity(inst);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->sets_checked, 1);
  EXPECT_TRUE(r->Ok());
}

TEST(CheckKcValidityTest, RandomInstancesHaveNoCounterexample) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const CpipInstance inst = NormalizeWidth(RandomInstance(seed, 4, 0, 2));
    auto r = CheckKcValidity(inst);
    ASSERT_TRUE(r.ok()) << r.status();
    EXPECT_TRUE(r->Ok()) << "seed " << seed;
    EXPECT_GT(r->points_checked, 0);
  }
}

TEST(CheckKcValidityTest, BudgetIsEnforced) {
  const CpipInstance inst =
      Inst(R"({"A": [[1, 1, 1]], "a": [1], "c": [1, 1, 1], "d": [2, 2, 2]})");
  auto r = CheckKcValidity(inst, {100});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
}

// Coefficients on F instead of its complement.
absl::StatusOr<KcSystem> SwappedOrientation(const CpipInstance& inst,
                                            const PinSet& pinned,
                                            const BoundVector& d) {
  auto kc = BuildKcSystem(inst, pinned, d);
  if (!kc.ok()) return kc;
  for (int i = 0; i < inst.num_cover_rows(); ++i) {
    for (int j = 0; j < inst.num_vars(); ++j) {
      const bool in_f =
          std::find(pinned.begin(), pinned.end(), j) != pinned.end();
      const Rational& a = inst.cover_matrix()[i][j];
      kc->coefficients[i][j] =
          in_f ? (a < kc->residual[i] ? a : kc->residual[i]) : Rational(0);
    }
  }
  return kc;
}

// Truncation at half the residual demand.
absl::StatusOr<KcSystem> OverTruncated(const CpipInstance& inst,
                                       const PinSet& pinned,
                                       const BoundVector& d) {
  auto kc = BuildKcSystem(inst, pinned, d);
  if (!kc.ok()) return kc;
  for (int i = 0; i < inst.num_cover_rows(); ++i) {
    const Rational half = kc->residual[i] / 2;
    for (Rational& a : kc->coefficients[i]) {
      if (a > half) a = half;
    }
  }
  return kc;
}

// Skipping the min keeps A_ij for j outside F; the inequality gets weaker,
// so it stays valid.
absl::StatusOr<KcSystem> Untruncated(const CpipInstance& inst,
                                     const PinSet& pinned,
                                     const BoundVector& d) {
  auto kc = BuildKcSystem(inst, pinned, d);
  if (!kc.ok()) return kc;
  for (int i = 0; i < inst.num_cover_rows(); ++i) {
    for (int j = 0; j < inst.num_vars(); ++j) {
      if (sgn(kc->coefficients[i][j]) > 0) {
        kc->coefficients[i][j] = inst.cover_matrix()[i][j];
      }
    }
  }
  return kc;
}

TEST(CheckKcValidityTest, SwappedOrientationIsCaught) {
  auto r = CheckKcValidity(Gap(Q("1/10")), {}, SwappedOrientation);
  ASSERT_TRUE(r.ok());
  ASSERT_FALSE(r->Ok());
  bool pinned_first = false;
  for (const KcCounterexample& c : r->counterexamples) {
    pinned_first = pinned_first || c.pinned == PinSet{0};
  }
  EXPECT_TRUE(pinned_first);
}

TEST(CheckKcValidityTest, OverTruncationIsCaught) {
  auto r = CheckKcValidity(Gap(Q("1/10")), {}, OverTruncated);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->Ok());
}

TEST(CheckKcValidityTest, MissingTruncationStaysValid) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto r = CheckKcValidity(NormalizeWidth(RandomInstance(seed, 4, 0, 2)), {},
                             Untruncated);
    ASSERT_TRUE(r.ok());
    EXPECT_TRUE(r->Ok());
  }
}

}  // namespace
}  // namespace cpip

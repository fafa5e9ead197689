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

#include "cpip/simplex.h"

#include <cmath>
#include <random>

#include "absl/strings/match.h"
#include "cpip/genbench.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cpip {
namespace {

using ::cpip::testing::Gap;
using ::cpip::testing::Q;
using ::cpip::testing::Qv;
using ::cpip::testing::VertexEnumerationOptimum;

SimplexOptions Float() {
  SimplexOptions o;
  o.mode = ArithmeticMode::kFloat;
  return o;
}

// m <= 10 cover rows, n <= 5 variables, up to 2 packing rows.
CpipInstance SmallLpInstance(uint64_t seed) {
  std::mt19937_64 rng(seed + 1000);
  GeneratorSpec spec;
  spec.m = 1 + static_cast<int>(rng() % 10);
  spec.n = 1 + static_cast<int>(rng() % 5);
  spec.r = static_cast<int>(rng() % 3);
  spec.density = 0.6;
  spec.cost_min = 0;
  spec.unbounded_fraction = 0.25;
  spec.seed = seed;
  return *GenRandomCpip(spec);
}

TEST(SolveLpTest, GapInstanceFractionalOptimum) {
  const LpProblem lp = BuildStandardLp(Gap(Q("1/10")));
  auto sol = SolveLp(lp);
  ASSERT_TRUE(sol.ok()) << sol.status();
  ASSERT_EQ(sol->status, LpStatus::kOptimal);
  EXPECT_EQ(sol->objective_value, Q("1/10"));
  EXPECT_EQ(sol->primal, Qv({"1", "1/10"}));
  EXPECT_TRUE(VerifyCertificate(lp, *sol, 1e-12).empty());

  auto fsol = SolveLp(lp, Float());
  ASSERT_TRUE(fsol.ok()) << fsol.status();
  EXPECT_NEAR(fsol->objective_value.get_d(), 0.1, 1e-9);
  EXPECT_EQ(fsol->mode, ArithmeticMode::kFloat);
}

TEST(SolveLpTest, ContradictoryBoundIsInfeasibleWithFarkasRay) {
  LpProblem lp;
  lp.objective = Qv({"0"});
  lp.rows.push_back({Qv({"1"}), RowSense::kGreaterEqual, Q("1")});
  lp.upper_bounds = {Q("1/2")};
  for (const SimplexOptions& options : {SimplexOptions{}, Float()}) {
    auto sol = SolveLp(lp, options);
    ASSERT_TRUE(sol.ok()) << sol.status();
    EXPECT_EQ(sol->status, LpStatus::kInfeasible);
    EXPECT_TRUE(VerifyInfeasibility(lp, *sol, 1e-9).empty());
  }
}

TEST(SolveLpTest, ContradictoryRowsAreInfeasible) {
  LpProblem lp;
  lp.objective = Qv({"1", "1"});
  lp.rows.push_back({Qv({"1", "1"}), RowSense::kGreaterEqual, Q("3")});
  lp.rows.push_back({Qv({"1", "2"}), RowSense::kLessEqual, Q("2")});
  lp.upper_bounds = {std::nullopt, std::nullopt};
  auto sol = SolveLp(lp);
  ASSERT_TRUE(sol.ok());
  ASSERT_EQ(sol->status, LpStatus::kInfeasible);
  EXPECT_TRUE(VerifyInfeasibility(lp, *sol, 0.0).empty());
  // A wrong ray is caught.
  LpSolution bogus = *sol;
  for (Rational& v : bogus.farkas_rows) v = -v;
  EXPECT_FALSE(VerifyInfeasibility(lp, bogus, 1e-9).empty());
}

TEST(SolveLpTest, NegativeCostWithoutBoundIsUnbounded) {
  LpProblem lp;
  lp.objective = Qv({"-1"});
  lp.rows.push_back({Qv({"1"}), RowSense::kGreaterEqual, Q("1")});
  lp.upper_bounds = {std::nullopt};
  auto sol = SolveLp(lp);
  ASSERT_TRUE(sol.ok());
  EXPECT_EQ(sol->status, LpStatus::kUnbounded);
}

TEST(SolveLpTest, MatchesVertexEnumerationOnRandomInstances) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const CpipInstance inst = SmallLpInstance(seed);
    const LpProblem lp = BuildStandardLp(inst);
    const std::optional<Rational> expected = VertexEnumerationOptimum(lp);
    ASSERT_TRUE(expected.has_value()) << "generator made an infeasible LP";

    auto sol = SolveLp(lp);
    ASSERT_TRUE(sol.ok()) << sol.status();
    ASSERT_EQ(sol->status, LpStatus::kOptimal) << "seed " << seed;
    EXPECT_EQ(sol->objective_value, *expected) << "seed " << seed;
    EXPECT_TRUE(VerifyCertificate(lp, *sol, 0.0).empty()) << "seed " << seed;

    auto fsol = SolveLp(lp, Float());
    ASSERT_TRUE(fsol.ok()) << fsol.status();
    EXPECT_NEAR(fsol->objective_value.get_d(), expected->get_d(),
                1e-9 * (1 + std::abs(expected->get_d())));
  }
}

TEST(SolveLpTest, BlandFromTheStartReachesSameOptimum) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const LpProblem lp = BuildStandardLp(SmallLpInstance(seed));
    SimplexOptions bland;
    bland.rule = PivotRule::kBland;
    SimplexOptions early;
    early.degenerate_pivots_before_bland = 0;
    auto a = SolveLp(lp);
    auto b = SolveLp(lp, bland);
    auto c = SolveLp(lp, early);
    ASSERT_TRUE(a.ok() && b.ok() && c.ok());
    EXPECT_EQ(a->objective_value, b->objective_value);
    EXPECT_EQ(a->objective_value, c->objective_value);
  }
}

TEST(SolveLpTest, Deterministic) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const LpProblem lp = BuildStandardLp(SmallLpInstance(seed));
    auto a = SolveLp(lp);
    auto b = SolveLp(lp);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(a->primal, b->primal);
    EXPECT_EQ(a->row_duals, b->row_duals);
    EXPECT_EQ(a->iterations, b->iterations);
  }
}

TEST(SolveLpTest, AddingRowNeverLowersObjective) {
  std::mt19937_64 rng(5);
  for (uint64_t seed = 0; seed < 60; ++seed) {
    LpProblem lp = BuildStandardLp(SmallLpInstance(seed));
    auto before = SolveLp(lp);
    ASSERT_TRUE(before.ok());
    LpRow extra;
    for (int j = 0; j < lp.num_vars(); ++j) {
      extra.coefficients.push_back(Rational(static_cast<long>(rng() % 3)));
    }
    extra.rhs = Rational(static_cast<long>(rng() % 4));
    lp.rows.push_back(extra);
    auto after = SolveLp(lp);
    ASSERT_TRUE(after.ok());
    if (after->status == LpStatus::kOptimal) {
      EXPECT_GE(after->objective_value, before->objective_value);
    }
  }
}

TEST(SolveLpTest, IterationLimitIsReported) {
  const LpProblem lp = BuildStandardLp(SmallLpInstance(3));
  SimplexOptions o;
  o.max_iterations = 0;
  auto sol = SolveLp(lp, o);
  ASSERT_FALSE(sol.ok());
  EXPECT_EQ(sol.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(VerifyCertificateTest, PerturbedTightRowIsNamed) {
  const LpProblem lp = BuildStandardLp(Gap(Q("1/10")));
  auto sol = SolveLp(lp);
  ASSERT_TRUE(sol.ok());
  LpSolution bad = *sol;
  bad.primal[1] -= Q("1/1000");
  const auto report = VerifyCertificate(lp, bad, 1e-7);
  ASSERT_FALSE(report.empty());
  bool named = false;
  for (const CertificateViolation& v : report) {
    if (v.kind == CertificateViolation::Kind::kPrimalRow && v.index == 0) {
      named = true;
      EXPECT_TRUE(absl::StrContains(v.Describe(), "row 0")) << v.Describe();
    }
  }
  EXPECT_TRUE(named);
}

TEST(VerifyCertificateTest, WrongDualSignIsReported) {
  const LpProblem lp = BuildStandardLp(Gap(Q("1/10")));
  auto sol = SolveLp(lp);
  ASSERT_TRUE(sol.ok());
  LpSolution bad = *sol;
  bad.row_duals[0] = -1;
  EXPECT_FALSE(VerifyCertificate(lp, bad, 1e-7).empty());
}

TEST(BuildStandardLpTest, RowOrderCoverThenPack) {
  const CpipInstance inst = testing::Inst(
      R"({"A": [[1, 2]], "a": [3], "B": [[4, 5]], "b": [6], "c": [1, 1],
          "d": [2, null]})");
  const LpProblem lp = BuildStandardLp(inst);
  ASSERT_EQ(lp.num_rows(), 2);
  EXPECT_EQ(lp.rows[0].sense, RowSense::kGreaterEqual);
  EXPECT_EQ(lp.rows[1].sense, RowSense::kLessEqual);
  EXPECT_EQ(lp.rows[1].rhs, 6);
  EXPECT_EQ(*lp.upper_bounds[0], 2);
  EXPECT_FALSE(lp.upper_bounds[1].has_value());
}

}  // namespace
}  // namespace cpip

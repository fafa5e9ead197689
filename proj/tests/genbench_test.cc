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

#include "cpip/genbench.h"

#include "cpip/kc.h"
#include "cpip/oracle.h"
#include "cpip/simplex.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cpip {
namespace {

using ::cpip::testing::Q;
using ::cpip::testing::Qv;

GeneratorSpec Spec(Family family, int m, int n, uint64_t seed) {
  GeneratorSpec spec;
  spec.family = family;
  spec.m = m;
  spec.n = n;
  spec.seed = seed;
  return spec;
}

TEST(FamilyTest, NamesRoundTrip) {
  for (Family f : {Family::kSetCover, Family::kMultisetMulticover,
                   Family::kKnapsackGap, Family::kRandomCpip}) {
    EXPECT_EQ(ParseFamily(FamilyName(f)), f);
  }
  EXPECT_FALSE(ParseFamily("nope").has_value());
}

TEST(GenSetCoverTest, ZeroOneRowsWithUnitDemand) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorSpec spec = Spec(Family::kSetCover, 8, 5, seed);
    spec.density = 0.2;
    auto inst = GenSetCover(spec);
    ASSERT_TRUE(inst.ok()) << inst.status();
    for (int i = 0; i < inst->num_cover_rows(); ++i) {
      EXPECT_EQ(inst->demand()[i], 1);
      bool nonzero = false;
      for (const Rational& a : inst->cover_matrix()[i]) {
        EXPECT_TRUE(a == 0 || a == 1);
        nonzero = nonzero || a == 1;
      }
      EXPECT_TRUE(nonzero) << "seed " << seed << " row " << i;
    }
    for (const Bound& d : inst->bounds()) EXPECT_EQ(*d, 1);
  }
}

TEST(GenMultisetMulticoverTest, IntegerEntriesAndFiniteBounds) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorSpec spec = Spec(Family::kMultisetMulticover, 5, 4, seed);
    spec.max_bound = 4;
    auto inst = GenMultisetMulticover(spec);
    ASSERT_TRUE(inst.ok()) << inst.status();
    bool hits_max = false;
    for (const Bound& d : inst->bounds()) {
      ASSERT_TRUE(d.has_value());
      EXPECT_TRUE(IsIntegral(*d));
      EXPECT_GE(*d, 1);
      EXPECT_LE(*d, 4);
      hits_max = hits_max || *d == 4;
    }
    EXPECT_TRUE(hits_max);
    for (int i = 0; i < inst->num_cover_rows(); ++i) {
      Rational reach = 0;
      for (int j = 0; j < inst->num_vars(); ++j) {
        EXPECT_TRUE(IsIntegral(inst->cover_matrix()[i][j]));
        reach += inst->cover_matrix()[i][j] * *inst->bounds()[j];
      }
      EXPECT_TRUE(IsIntegral(inst->demand()[i]));
      EXPECT_GE(inst->demand()[i], 1);
      EXPECT_LE(inst->demand()[i], reach);
    }
  }
}

TEST(GenerateTest, SameSeedSameInstance) {
  for (Family f : {Family::kSetCover, Family::kMultisetMulticover,
                   Family::kRandomCpip}) {
    GeneratorSpec spec = Spec(f, 6, 5, 42);
    spec.r = f == Family::kRandomCpip ? 2 : 0;
    EXPECT_EQ(*Generate(spec), *Generate(spec));
    GeneratorSpec other = spec;
    other.seed = 43;
    EXPECT_NE(SerializeInstance(*Generate(spec)),
              SerializeInstance(*Generate(other)));
  }
}

TEST(GenRandomCpipTest, LpIsFeasibleAndBounded) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorSpec spec = Spec(Family::kRandomCpip, 6, 5, seed);
    spec.r = 2;
    spec.unbounded_fraction = 0.3;
    auto inst = GenRandomCpip(spec);
    ASSERT_TRUE(inst.ok());
    auto sol = SolveLp(BuildStandardLp(*inst));
    ASSERT_TRUE(sol.ok());
    EXPECT_EQ(sol->status, LpStatus::kOptimal) << "seed " << seed;
  }
}

TEST(GenRandomCpipTest, ZeroPackingRowsIsPureCip) {
  auto inst = GenRandomCpip(Spec(Family::kRandomCpip, 4, 4, 7));
  ASSERT_TRUE(inst.ok());
  EXPECT_EQ(inst->num_pack_rows(), 0);
}

TEST(GenRandomCpipTest, OneByOneRunsEndToEnd) {
  auto inst = GenRandomCpip(Spec(Family::kRandomCpip, 1, 1, 3));
  ASSERT_TRUE(inst.ok());
  auto strict = SolveCipStrict(*inst, {});
  ASSERT_TRUE(strict.ok()) << strict.status();
  EXPECT_TRUE(strict->report.GuaranteesHold());
  EXPECT_EQ(BruteForceOpt(*inst).status, OracleStatus::kOptimal);
}

TEST(KnapsackGapTest, RejectsDeltaOutsideOpenInterval) {
  for (const char* bad : {"0", "1", "-1/2", "3/2"}) {
    EXPECT_FALSE(KnapsackGap(Q(bad)).ok()) << bad;
  }
}

TEST(KnapsackGapTest, LpHalfAndIntegerOne) {
  auto inst = KnapsackGap(Q("1/2"));
  ASSERT_TRUE(inst.ok());
  EXPECT_EQ(inst->cover_matrix()[0], Qv({"1/2", "1"}));
  auto lp = SolveLp(BuildStandardLp(*inst));
  ASSERT_TRUE(lp.ok());
  EXPECT_EQ(lp->objective_value, Q("1/2"));
  EXPECT_EQ(BruteForceOpt(*inst).cost, 1);
}

TEST(KnapsackGapTest, GapRatioIsInverseDelta) {
  for (const char* delta : {"1/2", "1/10", "1/100", "1/1000"}) {
    auto inst = KnapsackGap(Q(delta));
    ASSERT_TRUE(inst.ok());
    auto lp = SolveLp(BuildStandardLp(*inst));
    ASSERT_TRUE(lp.ok());
    const Rational ratio = BruteForceOpt(*inst).cost / lp->objective_value;
    EXPECT_EQ(ratio, 1 / Q(delta));
  }
}

TEST(KnapsackGapTest, KcCutForPinnedFirstVariable) {
  auto inst = KnapsackGap(Q("1/10"));
  ASSERT_TRUE(inst.ok());
  auto kc = BuildKcSystem(*inst, {0}, FloorBounds(inst->bounds()));
  ASSERT_TRUE(kc.ok());
  EXPECT_EQ(kc->coefficients[0], Qv({"0", "1/10"}));
  EXPECT_EQ(kc->residual[0], Q("1/10"));
}

BenchConfig GapSweep() {
  BenchConfig config;
  for (const char* delta : {"1/2", "1/10", "1/100", "1/1000"}) {
    GeneratorSpec spec;
    spec.family = Family::kKnapsackGap;
    spec.delta = Q(delta);
    config.specs.push_back(spec);
  }
  return config;
}

TEST(RunBenchTest, GapSweepStrictRatioIsOne) {
  const BenchTable table = RunBench(GapSweep());
  ASSERT_EQ(table.rows.size(), 4u);
  for (const BenchRow& row : table.rows) {
    EXPECT_TRUE(row.errors.empty());
    ASSERT_TRUE(row.StrictRatio().has_value());
    EXPECT_DOUBLE_EQ(*row.StrictRatio(), 1.0);
    EXPECT_TRUE(row.strict_ok);
    EXPECT_TRUE(row.bicriteria_ok);
  }
  EXPECT_NEAR(*table.rows[3].GapRatio(), 1000.0, 1e-9);
  const RatioSummary s = table.Summarize(&BenchRow::StrictRatio);
  EXPECT_EQ(s.count, 4);
  EXPECT_DOUBLE_EQ(s.max, 1.0);
}

TEST(RunBenchTest, EmptySpecSetGivesEmptyTable) {
  const BenchTable table = RunBench(BenchConfig{});
  EXPECT_TRUE(table.rows.empty());
  EXPECT_EQ(table.Summarize(&BenchRow::StrictRatio).count, 0);
  EXPECT_FALSE(table.ToText().empty());
}

TEST(RunBenchTest, SameSeedIsBitIdentical) {
  BenchConfig config;
  config.seed = 11;
  config.epsilons = {Q("1/2"), Q("1")};
  for (int k = 0; k < 3; ++k) {
    GeneratorSpec spec = Spec(Family::kRandomCpip, 4, 4, 0);
    spec.r = 1;
    config.specs.push_back(spec);
  }
  const BenchTable a = RunBench(config);
  const BenchTable b = RunBench(config);
  ASSERT_EQ(a.rows.size(), 6u);
  EXPECT_EQ(a.ToText(), b.ToText());
  EXPECT_EQ(a.ToJsonLines(), b.ToJsonLines());
}

TEST(RunBenchTest, StrictRatioWithinGuarantee) {
  BenchConfig config;
  config.seed = 5;
  for (int k = 0; k < 10; ++k) {
    GeneratorSpec spec = Spec(Family::kMultisetMulticover, 4, 4, 0);
    config.specs.push_back(spec);
  }
  const BenchTable table = RunBench(config);
  for (const BenchRow& row : table.rows) {
    EXPECT_TRUE(row.errors.empty());
    EXPECT_TRUE(row.strict_ok);
    ASSERT_TRUE(row.StrictRatio().has_value());
    EXPECT_GE(*row.StrictRatio(), 1.0 - 1e-12);
  }
}

}  // namespace
}  // namespace cpip

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

#include <algorithm>
#include <chrono>
#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cpip/kc.h"
#include "cpip/report.h"
#include "cpip/rounding.h"

namespace cpip {
namespace {

using json = nlohmann::json;

class Draws {
 public:
  explicit Draws(uint64_t seed) : engine_(seed) {}

  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  bool Bernoulli(double p) { return Unit() < p; }
  int64_t Int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(engine_() %
                                     static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

absl::Status CheckDims(const GeneratorSpec& spec, bool allow_packing) {
  if (spec.m < 1 || spec.n < 1) {
    return absl::InvalidArgumentError("m and n must be positive");
  }
  if (spec.r < 0 || (!allow_packing && spec.r != 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "r must be ", allow_packing ? "nonnegative" : "0 for this family"));
  }
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    return absl::InvalidArgumentError("density must lie in (0, 1]");
  }
  if (spec.coef_max < 1 || spec.max_bound < 1) {
    return absl::InvalidArgumentError("coef_max and max_bound must be >= 1");
  }
  if (spec.cost_min < 0 || spec.cost_max < spec.cost_min) {
    return absl::InvalidArgumentError("need 0 <= cost_min <= cost_max");
  }
  return absl::OkStatus();
}

RationalVector DrawCosts(const GeneratorSpec& spec, Draws& draws) {
  RationalVector c(spec.n);
  for (Rational& v : c) {
    v = Rational(static_cast<long>(draws.Int(spec.cost_min, spec.cost_max)));
  }
  return c;
}

void RepairEmptyRow(RationalVector& row, const Rational& value, Draws& draws) {
  for (const Rational& v : row) {
    if (sgn(v) > 0) return;
  }
  row[draws.Int(0, static_cast<int64_t>(row.size()) - 1)] = value;
}

std::string Num(const std::optional<Rational>& v) {
  return v.has_value() ? absl::StrFormat("%.6g", v->get_d()) : "-";
}

std::string Num(const std::optional<double>& v) {
  return v.has_value() ? absl::StrFormat("%.6g", *v) : "-";
}

json OptionalRational(const std::optional<Rational>& v) {
  return v.has_value() ? RationalToJson(*v) : json(nullptr);
}

json OptionalDouble(const std::optional<double>& v) {
  return v.has_value() ? json(*v) : json(nullptr);
}

std::optional<double> Ratio(const std::optional<Rational>& num,
                            const std::optional<Rational>& den) {
  if (!num.has_value() || !den.has_value()) return std::nullopt;
  if (sgn(*den) == 0) {
    return sgn(*num) == 0 ? std::optional<double>(1.0) : std::nullopt;
  }
  return Rational(*num / *den).get_d();
}

Rational MaxExcess(const ViolationReport& report, ConstraintFamily family) {
  Rational out = 0;
  for (const Violation& v : report.violations) {
    if (v.family == family && v.amount > out) out = v.amount;
  }
  return out;
}

}  // namespace

std::string FamilyName(Family family) {
  switch (family) {
    case Family::kSetCover:
      return "set-cover";
    case Family::kMultisetMulticover:
      return "multiset-multicover";
    case Family::kKnapsackGap:
      return "knapsack-gap";
    case Family::kRandomCpip:
      return "random-cpip";
  }
  return "unknown";
}

std::optional<Family> ParseFamily(std::string_view name) {
  for (Family f : {Family::kSetCover, Family::kMultisetMulticover,
                   Family::kKnapsackGap, Family::kRandomCpip}) {
    if (name == FamilyName(f)) return f;
  }
  return std::nullopt;
}

absl::StatusOr<CpipInstance> KnapsackGap(const Rational& delta) {
  if (sgn(delta) <= 0 || delta >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "delta must lie in (0, 1), got ", RationalToString(delta)));
  }
  return CpipInstance::Create({{1 - delta, Rational(1)}}, {Rational(1)}, {},
                              {}, {Rational(0), Rational(1)},
                              {Rational(1), std::nullopt});
}

absl::StatusOr<CpipInstance> GenSetCover(const GeneratorSpec& spec) {
  if (absl::Status s = CheckDims(spec, false); !s.ok()) return s;
  Draws draws(spec.seed);
  RationalMatrix a(spec.m, RationalVector(spec.n, Rational(0)));
  for (auto& row : a) {
    for (Rational& v : row) {
      if (draws.Bernoulli(spec.density)) v = 1;
    }
  }
  for (auto& row : a) RepairEmptyRow(row, Rational(1), draws);
  RationalVector c = DrawCosts(spec, draws);
  return CpipInstance::Create(std::move(a), RationalVector(spec.m, Rational(1)),
                              {}, {}, std::move(c),
                              BoundVector(spec.n, Rational(1)));
}

absl::StatusOr<CpipInstance> GenMultisetMulticover(const GeneratorSpec& spec) {
  if (absl::Status s = CheckDims(spec, false); !s.ok()) return s;
  Draws draws(spec.seed);
  BoundVector d(spec.n);
  for (Bound& v : d) v = Rational(static_cast<long>(draws.Int(1, spec.max_bound)));
  if (std::none_of(d.begin(), d.end(), [&](const Bound& v) {
        return *v == spec.max_bound;
      })) {
    d[draws.Int(0, spec.n - 1)] = Rational(spec.max_bound);
  }
  RationalMatrix a(spec.m, RationalVector(spec.n, Rational(0)));
  for (auto& row : a) {
    for (Rational& v : row) {
      if (draws.Bernoulli(spec.density)) {
        v = Rational(static_cast<long>(draws.Int(1, spec.coef_max)));
      }
    }
    RepairEmptyRow(row, Rational(1), draws);
  }
  RationalVector demand(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    Rational reach = 0;
    for (int j = 0; j < spec.n; ++j) reach += a[i][j] * *d[j];
    demand[i] = Rational(static_cast<long>(draws.Int(1, FloorToInt(reach))));
  }
  RationalVector c = DrawCosts(spec, draws);
  return CpipInstance::Create(std::move(a), std::move(demand), {}, {},
                              std::move(c), std::move(d));
}

absl::StatusOr<CpipInstance> GenRandomCpip(const GeneratorSpec& spec) {
  if (absl::Status s = CheckDims(spec, true); !s.ok()) return s;
  Draws draws(spec.seed);
  BoundVector d(spec.n);
  RationalVector z(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    if (draws.Bernoulli(spec.unbounded_fraction)) {
      d[j] = std::nullopt;
      z[j] = Rational(static_cast<long>(draws.Int(1, spec.max_bound)));
    } else {
      const int64_t bound = draws.Int(1, spec.max_bound);
      d[j] = Rational(static_cast<long>(bound));
      z[j] = Rational(static_cast<long>((bound + 1) / 2));
    }
  }
  auto draw_matrix = [&](int rows) {
    RationalMatrix out(rows, RationalVector(spec.n, Rational(0)));
    for (auto& row : out) {
      for (Rational& v : row) {
        if (draws.Bernoulli(spec.density)) {
          v = Rational(static_cast<long>(draws.Int(1, 2 * spec.coef_max)), 2);
          v.canonicalize();
        }
      }
    }
    return out;
  };
  RationalMatrix a = draw_matrix(spec.m);
  for (auto& row : a) RepairEmptyRow(row, Rational(1), draws);
  RationalVector demand(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    Rational scale(static_cast<long>(draws.Int(1, 4)), 4);
    scale.canonicalize();
    demand[i] = scale * Dot(a[i], z);
  }
  RationalMatrix b = draw_matrix(spec.r);
  RationalVector capacity(spec.r);
  for (int k = 0; k < spec.r; ++k) {
    capacity[k] = Dot(b[k], z) + static_cast<long>(draws.Int(0, 2));
  }
  RationalVector c = DrawCosts(spec, draws);
  return CpipInstance::Create(std::move(a), std::move(demand), std::move(b),
                              std::move(capacity), std::move(c), std::move(d));
}

absl::StatusOr<CpipInstance> Generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::kSetCover:
      return GenSetCover(spec);
    case Family::kMultisetMulticover:
      return GenMultisetMulticover(spec);
    case Family::kKnapsackGap:
      return KnapsackGap(spec.delta);
    case Family::kRandomCpip:
      return GenRandomCpip(spec);
  }
  return absl::InvalidArgumentError("unknown family");
}

std::optional<double> BenchRow::BicriteriaRatio() const {
  return Ratio(bicriteria_cost, fopt);
}
std::optional<double> BenchRow::StrictRatio() const {
  return Ratio(strict_cost, opt);
}
std::optional<double> BenchRow::StrictKcRatio() const {
  return Ratio(strict_cost, fopt_kc);
}
std::optional<double> BenchRow::GapRatio() const { return Ratio(opt, fopt); }

RatioSummary BenchTable::Summarize(
    std::optional<double> (BenchRow::*ratio)() const) const {
  RatioSummary out;
  double total = 0.0;
  for (const BenchRow& row : rows) {
    const std::optional<double> v = (row.*ratio)();
    if (!v.has_value()) continue;
    ++out.count;
    total += *v;
    out.max = std::max(out.max, *v);
  }
  if (out.count > 0) out.mean = total / out.count;
  return out;
}

json BenchRowToJson(const BenchRow& row, bool include_timing) {
  json out = {
      {"id", row.id},
      {"family", row.family},
      {"m", row.m},
      {"n", row.n},
      {"r", row.r},
      {"epsilon", RationalToJson(row.epsilon)},
      {"fopt", OptionalRational(row.fopt)},
      {"fopt_kc", OptionalRational(row.fopt_kc)},
      {"opt", OptionalRational(row.opt)},
      {"bicriteria",
       {{"cost", OptionalRational(row.bicriteria_cost)},
        {"multiplicity_excess",
         OptionalRational(row.bicriteria_multiplicity_excess)},
        {"packing_excess", OptionalRational(row.bicriteria_packing_excess)},
        {"guarantees_ok", row.bicriteria_ok},
        {"K", row.granularity.has_value() ? json(*row.granularity)
                                          : json(nullptr)},
        {"L", OptionalDouble(row.scale)}}},
      {"strict",
       {{"cost", OptionalRational(row.strict_cost)},
        {"guarantees_ok", row.strict_ok}}},
      {"ratios",
       {{"bicriteria_over_fopt", OptionalDouble(row.BicriteriaRatio())},
        {"strict_over_opt", OptionalDouble(row.StrictRatio())},
        {"strict_over_fopt_kc", OptionalDouble(row.StrictKcRatio())},
        {"opt_over_fopt", OptionalDouble(row.GapRatio())}}},
      {"errors", row.errors},
  };
  if (include_timing) out["wall_ms"] = row.wall_ms;
  return out;
}

std::string BenchTable::ToText() const {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {
      "id",   "family",  "m",        "n",        "r",        "eps",
      "fopt", "fopt_kc", "opt",      "bic_cost", "mult_exc", "pack_exc",
      "K",    "L",       "strict",   "bic/fopt", "str/opt",  "status"};
  if (include_timing) header.insert(header.end() - 1, "wall_ms");
  cells.push_back(header);
  for (const BenchRow& row : rows) {
    std::vector<std::string> line = {
        absl::StrCat(row.id),
        row.family,
        absl::StrCat(row.m),
        absl::StrCat(row.n),
        absl::StrCat(row.r),
        RationalToString(row.epsilon),
        Num(row.fopt),
        Num(row.fopt_kc),
        Num(row.opt),
        Num(row.bicriteria_cost),
        Num(row.bicriteria_multiplicity_excess),
        Num(row.bicriteria_packing_excess),
        row.granularity ? absl::StrCat(*row.granularity) : "-",
        Num(row.scale),
        Num(row.strict_cost),
        Num(row.BicriteriaRatio()),
        Num(row.StrictRatio()),
        !row.errors.empty()                      ? "error"
        : row.bicriteria_ok && row.strict_ok     ? "ok"
                                                 : "VIOLATED"};
    if (include_timing) {
      line.insert(line.end() - 1, absl::StrFormat("%.1f", row.wall_ms));
    }
    cells.push_back(std::move(line));
  }
  std::vector<size_t> widths(header.size(), 0);
  for (const auto& line : cells) {
    for (size_t k = 0; k < line.size(); ++k) {
      widths[k] = std::max(widths[k], line[k].size());
    }
  }
  std::string out;
  for (const auto& line : cells) {
    std::string text;
    for (size_t k = 0; k < line.size(); ++k) {
      if (k > 0) text += "  ";
      text += line[k];
      if (k + 1 < line.size()) text.append(widths[k] - line[k].size(), ' ');
    }
    absl::StrAppend(&out, text, "\n");
  }
  auto summary = [&](std::string_view name,
                     std::optional<double> (BenchRow::*ratio)() const) {
    const RatioSummary s = Summarize(ratio);
    absl::StrAppendFormat(&out, "%-22s count=%d mean=%.6f max=%.6f\n",
                          std::string(name), s.count, s.mean, s.max);
  };
  summary("bicriteria cost/fopt", &BenchRow::BicriteriaRatio);
  summary("strict cost/opt", &BenchRow::StrictRatio);
  summary("strict cost/fopt_kc", &BenchRow::StrictKcRatio);
  summary("opt/fopt", &BenchRow::GapRatio);
  for (const BenchRow& row : rows) {
    for (const std::string& e : row.errors) {
      absl::StrAppend(&out, "error[", row.id, "]: ", e, "\n");
    }
  }
  return out;
}

std::string BenchTable::ToJsonLines() const {
  std::string out;
  for (const BenchRow& row : rows) {
    absl::StrAppend(&out, BenchRowToJson(row, include_timing).dump(), "\n");
  }
  json summary = json::object();
  auto add = [&](const char* name,
                 std::optional<double> (BenchRow::*ratio)() const) {
    const RatioSummary s = Summarize(ratio);
    summary[name] = {{"count", s.count}, {"mean", s.mean}, {"max", s.max}};
  };
  add("bicriteria_over_fopt", &BenchRow::BicriteriaRatio);
  add("strict_over_opt", &BenchRow::StrictRatio);
  add("strict_over_fopt_kc", &BenchRow::StrictKcRatio);
  add("opt_over_fopt", &BenchRow::GapRatio);
  absl::StrAppend(&out, json{{"summary", summary}}.dump(), "\n");
  return out;
}

BenchTable RunBench(const BenchConfig& config) {
  BenchTable table;
  table.include_timing = config.include_timing;
  int id = 0;
  for (size_t s = 0; s < config.specs.size(); ++s) {
    GeneratorSpec spec = config.specs[s];
    spec.seed = config.seed + s;
    auto instance = Generate(spec);
    for (const Rational& eps : config.epsilons) {
      const auto start = std::chrono::steady_clock::now();
      BenchRow row;
      row.id = id++;
      row.family = FamilyName(spec.family);
      row.epsilon = eps;
      if (!instance.ok()) {
        row.errors.push_back(
            absl::StrCat("generate: ", instance.status().message()));
        table.rows.push_back(std::move(row));
        continue;
      }
      row.m = instance->num_cover_rows();
      row.n = instance->num_vars();
      row.r = instance->num_pack_rows();
      SolveOptions options;
      options.epsilon = eps;
      options.arithmetic = config.arithmetic;
      options.prune = config.prune;
      options.seed = config.seed;
      options.include_timing = config.include_timing;

      if (auto bic = SolveCpipBicriteria(*instance, options); bic.ok()) {
        const SolveReport& rep = bic->report;
        row.fopt = rep.fopt;
        row.bicriteria_cost = rep.cost;
        row.bicriteria_multiplicity_excess =
            MaxExcess(*rep.checks, ConstraintFamily::kMultiplicity);
        row.bicriteria_packing_excess =
            MaxExcess(*rep.checks, ConstraintFamily::kPacking);
        row.bicriteria_ok = rep.GuaranteesHold();
        row.granularity = rep.granularity;
        row.scale = rep.scale;
      } else {
        row.errors.push_back(
            absl::StrCat("bicriteria: ", bic.status().message()));
      }
      if (auto strict = SolveCipStrict(*instance, options); strict.ok()) {
        row.fopt_kc = strict->report.fopt_kc;
        row.strict_cost = strict->report.cost;
        row.strict_ok = strict->report.GuaranteesHold();
      } else {
        row.errors.push_back(
            absl::StrCat("strict: ", strict.status().message()));
      }
      const OracleResult oracle = BruteForceOpt(*instance, config.budget);
      if (oracle.status == OracleStatus::kOptimal) row.opt = oracle.cost;
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace cpip

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

#include "cpip/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "cpip/genbench.h"
#include "cpip/kc.h"
#include "cpip/model.h"
#include "cpip/oracle.h"
#include "cpip/report.h"
#include "cpip/rounding.h"
#include "cpip/simplex.h"
#include "json.hpp"

namespace cpip {
namespace {

using json = nlohmann::json;

struct Flags {
  std::string input = "-";
  std::string mode = "strict";
  std::string epsilon = "1";
  std::string lambda;
  uint64_t seed = 0;
  std::string arithmetic = "rational";
  double tolerance = 1e-7;
  std::string format = "text";
  int max_rounds = 1000;
  bool no_prune = false;
  bool with_oracle = false;
  bool timing = false;
  int64_t budget = 2'000'000;

  // round
  std::string method = "derandomized";
  int64_t granularity = 2;
  std::string xbar;

  // oracle
  bool kc_validity = false;

  // check
  std::string x;
  std::string check_mode = "strict";

  // gen / bench
  std::vector<std::string> families;
  GeneratorSpec spec;
  std::string delta = "1/10";
  int count = 1;
  std::string epsilons = "1";
  std::string deltas = "1/2,1/10,1/100,1/1000";
};

struct Settings {
  SolveOptions options;
  Rational lambda;
  bool machine = false;
};

class UsageError {
 public:
  explicit UsageError(std::string message) : message_(std::move(message)) {}
  const std::string& message() const { return message_; }

 private:
  std::string message_;
};

Rational ParseOrThrow(const std::string& text, const std::string& name) {
  auto value = ParseRational(text);
  if (!value.ok()) {
    throw UsageError(absl::StrCat("--", name, ": ", value.status().message()));
  }
  return *value;
}

std::vector<Rational> ParseList(const std::string& text,
                                const std::string& name) {
  std::vector<Rational> out;
  for (absl::string_view part :
       absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    out.push_back(ParseOrThrow(std::string(part), name));
  }
  return out;
}

Settings Resolve(const Flags& flags) {
  Settings s;
  s.options.epsilon = ParseOrThrow(flags.epsilon, "epsilon");
  if (sgn(s.options.epsilon) <= 0 || s.options.epsilon > 1) {
    throw UsageError("--epsilon must lie in (0, 1]");
  }
  s.lambda = flags.lambda.empty() ? Rational(1 + s.options.epsilon)
                                  : ParseOrThrow(flags.lambda, "lambda");
  if (s.lambda <= 1) throw UsageError("--lambda must exceed 1");
  if (!(flags.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  auto mode = ParseArithmeticMode(flags.arithmetic);
  if (!mode.has_value()) {
    throw UsageError("--arithmetic must be rational or float");
  }
  if (flags.max_rounds < 1) throw UsageError("--max-rounds must be positive");
  if (flags.budget < 1) throw UsageError("--budget must be positive");
  s.options.arithmetic = *mode;
  s.options.prune = !flags.no_prune;
  s.options.seed = flags.seed;
  s.options.max_rounds = flags.max_rounds;
  s.options.include_timing = flags.timing;
  s.machine = flags.format == "machine";
  return s;
}

std::string ReadInput(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream file(path);
  if (!file) throw UsageError(absl::StrCat("cannot open ", path));
  return std::string(std::istreambuf_iterator<char>(file), {});
}

CpipInstance LoadInstance(const Flags& flags, std::istream& in) {
  auto instance = ParseInstance(ReadInput(flags.input, in));
  if (!instance.ok()) {
    throw UsageError(absl::StrCat(flags.input == "-" ? "<stdin>" : flags.input,
                                  ": ", instance.status().message()));
  }
  return *std::move(instance);
}

std::vector<Rational> ParseVectorText(const std::string& text,
                                      const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(absl::StrCat("--", name, ": ", e.what()));
  }
  if (!doc.is_array()) throw UsageError(absl::StrCat("--", name, ": not an array"));
  std::vector<Rational> out;
  for (const json& v : doc) {
    if (v.is_string()) {
      out.push_back(ParseOrThrow(v.get<std::string>(), name));
    } else if (v.is_number()) {
      out.push_back(ParseOrThrow(v.dump(), name));
    } else {
      throw UsageError(absl::StrCat("--", name, ": entries must be numbers"));
    }
  }
  return out;
}

void Emit(const SolveReport& report, bool machine, std::ostream& out) {
  if (machine) {
    out << report.ToJson().dump() << "\n";
  } else {
    out << report.ToText();
  }
}

bool IsInfeasible(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition &&
         (absl::StrContains(status.message(), "INFEASIBLE") ||
          absl::StrContains(status.message(), "no fractional solution"));
}

int Failure(const std::string& mode, const absl::Status& status,
            const Settings& s, std::ostream& out) {
  SolveReport report;
  report.mode = mode;
  const bool infeasible = IsInfeasible(status);
  report.status = infeasible ? "infeasible" : "error";
  report.message = std::string(status.message());
  report.epsilon = s.options.epsilon;
  report.arithmetic = s.options.arithmetic;
  report.seed = s.options.seed;
  report.include_timing = false;
  Emit(report, s.machine, out);
  return infeasible ? kExitInfeasible : kExitFailure;
}

void AttachOracle(const CpipInstance& instance, const Flags& flags,
                  SolveReport& report) {
  const OracleResult oracle = BruteForceOpt(instance, {flags.budget});
  report.oracle_caps = oracle.caps;
  if (oracle.status == OracleStatus::kOptimal) {
    report.opt = oracle.cost;
  } else {
    absl::StrAppend(&report.message, report.message.empty() ? "" : "; ",
                    "oracle: ", OracleStatusName(oracle.status));
  }
}

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

int RunSolve(const Flags& flags, std::istream& in, std::ostream& out) {
  const Settings s = Resolve(flags);
  const CpipInstance instance = LoadInstance(flags, in);
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  if (flags.mode == "bicriteria" || flags.mode == "strict") {
    absl::StatusOr<SolveReport> solved =
        flags.mode == "strict"
            ? [&]() -> absl::StatusOr<SolveReport> {
                auto r = SolveCipStrict(instance, s.options);
                if (!r.ok()) return r.status();
                return r->report;
              }()
            : [&]() -> absl::StatusOr<SolveReport> {
                auto r = SolveCpipBicriteria(instance, s.options);
                if (!r.ok()) return r.status();
                return r->report;
              }();
    if (!solved.ok()) return Failure(flags.mode, solved.status(), s, out);
    report = *std::move(solved);
    if (flags.with_oracle) AttachOracle(instance, flags, report);
  } else if (flags.mode == "lp") {
    const LpProblem lp = BuildStandardLp(instance);
    SimplexOptions simplex;
    simplex.mode = s.options.arithmetic;
    auto sol = SolveLp(lp, simplex);
    if (!sol.ok()) return Failure("lp", sol.status(), s, out);
    report.mode = "lp";
    report.certificate = CertificateIssues(lp, *sol, flags.tolerance);
    report.arithmetic = s.options.arithmetic;
    report.epsilon = s.options.epsilon;
    if (sol->status != LpStatus::kOptimal) {
      report.status = absl::AsciiStrToLower(LpStatusName(sol->status));
      Emit(report, s.machine, out);
      return sol->status == LpStatus::kInfeasible ? kExitInfeasible
                                                  : kExitFailure;
    }
    report.fractional_x = sol->primal;
    report.fopt = sol->objective_value;
  } else if (flags.mode == "lp-kc") {
    SolveOptions options = s.options;
    auto result = SolveLpKc(instance, s.lambda, options);
    if (!result.ok()) return Failure("lp-kc", result.status(), s, out);
    report.mode = "lp-kc";
    report.fractional_x = result->x;
    report.fopt = result->objective_history.front();
    report.fopt_kc = result->objective;
    report.lambda = s.lambda;
    report.kc_sets = result->sets_seen;
    report.cut_rows = result->cut_rows;
    report.lp_rounds = result->rounds;
    report.certificate = CertificateIssues(
        result->final_problem, result->final_solution, flags.tolerance);
    report.arithmetic = s.options.arithmetic;
    report.epsilon = s.options.epsilon;
  } else if (flags.mode == "oracle") {
    const OracleResult oracle = BruteForceOpt(instance, {flags.budget});
    report.mode = "oracle";
    report.oracle_caps = oracle.caps;
    report.epsilon = s.options.epsilon;
    if (oracle.status != OracleStatus::kOptimal) {
      report.status = absl::AsciiStrToLower(OracleStatusName(oracle.status));
      if (oracle.status == OracleStatus::kBudgetExceeded) {
        report.message = absl::StrCat("search space ", oracle.space_size,
                                      " exceeds budget ", flags.budget);
      }
      Emit(report, s.machine, out);
      return oracle.status == OracleStatus::kInfeasible ? kExitInfeasible
                                                        : kExitFailure;
    }
    report.x = oracle.x;
    report.cost = oracle.cost;
    report.opt = oracle.cost;
    report.checks = CheckSolution(instance, oracle.x, s.options.epsilon);
    report.check_mode = CheckMode::kFeasible;
  } else {
    throw UsageError(absl::StrCat("unknown --mode ", flags.mode));
  }
  report.include_timing = flags.timing;
  report.wall_ms = ElapsedMs(start);
  Emit(report, s.machine, out);
  return kExitOk;
}

int RunRound(const Flags& flags, std::istream& in, std::ostream& out) {
  const Settings s = Resolve(flags);
  const CpipInstance instance = LoadInstance(flags, in);
  const CpipInstance normalized = NormalizeWidth(instance);
  FractionalVector xbar;
  Rational fopt;
  if (!flags.xbar.empty()) {
    xbar = ParseVectorText(flags.xbar, "xbar");
    if (static_cast<int>(xbar.size()) != instance.num_vars()) {
      throw UsageError("--xbar length differs from the number of variables");
    }
    fopt = normalized.Cost(xbar);
  } else {
    SimplexOptions simplex;
    simplex.mode = s.options.arithmetic;
    auto sol = SolveLp(BuildStandardLp(normalized), simplex);
    if (!sol.ok()) return Failure("round", sol.status(), s, out);
    if (sol->status != LpStatus::kOptimal) {
      return Failure("round",
                     absl::FailedPreconditionError(absl::StrCat(
                         LpStatusName(sol->status), ": no fractional solution")),
                     s, out);
    }
    xbar = sol->primal;
    fopt = sol->objective_value;
  }

  const CoverSystem system{normalized.cover_matrix(), normalized.demand()};
  SolveReport report;
  report.mode = absl::StrCat("round/", flags.method);
  report.fopt = fopt;
  report.epsilon = s.options.epsilon;
  report.seed = s.options.seed;
  report.arithmetic = s.options.arithmetic;
  report.prune = false;
  const int m = system.num_active_rows();
  const std::optional<Rational> width = system.Width();
  auto scale_for = [&](const Rational& w) -> double {
    auto scale = ComputeScaleFactor(m, w);
    if (!scale.ok()) throw UsageError(std::string(scale.status().message()));
    return *scale;
  };

  if (flags.method == "randomized" || flags.method == "derandomized") {
    IntegerVector x(xbar.size(), 0);
    if (m > 0 && width.has_value()) {
      const double scale = scale_for(*width);
      report.scale = scale;
      const Rational exact = ScaleToRational(scale);
      if (flags.method == "randomized") {
        x = RandomizedRound(xbar, exact, s.options.seed);
        report.rng = kRngName;
      } else {
        auto rounded = DerandomizedRound(xbar, system, normalized.cost(), exact);
        if (!rounded.ok()) return Failure(report.mode, rounded.status(), s, out);
        x = rounded->x;
        report.cost_bound = 2 * exact * normalized.Cost(xbar);
        report.cost_bound_formula = "2L*c.xbar";
      }
    }
    report.x = x;
    report.cost = instance.Cost(x);
    report.checks = CheckSolution(instance, x, s.options.epsilon);
  } else if (flags.method == "granular") {
    if (flags.granularity < 1) throw UsageError("--granularity must be >= 1");
    if (m == 0) {
      report.fractional_x = FractionalVector(xbar.size(), Rational(0));
      report.cost = Rational(0);
    } else {
      auto g = GranularRound(xbar, system, normalized.cost(), flags.granularity);
      if (!g.ok()) return Failure(report.mode, g.status(), s, out);
      report.fractional_x = g->x;
      report.cost = normalized.Cost(g->x);
      report.granularity = g->granularity;
      report.scale = g->scale;
      report.cost_bound = 2 * g->exact_scale * normalized.Cost(xbar);
      report.cost_bound_formula = "2L'*c.xbar";
    }
  } else if (flags.method == "bicriteria") {
    auto b = BicriteriaRound(xbar, system, normalized.cost(),
                             normalized.bounds(), s.options.epsilon);
    if (!b.ok()) return Failure(report.mode, b.status(), s, out);
    report.x = b->x;
    report.cost = instance.Cost(b->x);
    report.granularity = b->granularity;
    report.scale = b->scale;
    report.cost_bound =
        4 * Rational(static_cast<long>(b->granularity)) * normalized.Cost(xbar);
    report.cost_bound_formula = "4K*c.xbar";
    report.checks = CheckSolution(instance, b->x, s.options.epsilon);
    report.check_mode = CheckMode::kBicriteria;
  } else {
    throw UsageError(absl::StrCat("unknown --method ", flags.method));
  }
  report.include_timing = false;
  Emit(report, s.machine, out);
  return kExitOk;
}

int RunOracle(const Flags& flags, std::istream& in, std::ostream& out) {
  if (!flags.kc_validity) {
    Flags copy = flags;
    copy.mode = "oracle";
    return RunSolve(copy, in, out);
  }
  const Settings s = Resolve(flags);
  const CpipInstance instance = NormalizeWidth(LoadInstance(flags, in));
  auto report = CheckKcValidity(instance, {flags.budget});
  if (!report.ok()) {
    out << (s.machine ? json{{"status", "budget_exceeded"},
                             {"message", report.status().message()}}
                            .dump()
                      : absl::StrCat("status: budget_exceeded\nmessage: ",
                                     report.status().message()))
        << "\n";
    return kExitFailure;
  }
  json doc = {{"mode", "kc-validity"},
              {"sets_checked", report->sets_checked},
              {"points_checked", report->points_checked},
              {"ok", report->Ok()}};
  json bad = json::array();
  for (const KcCounterexample& c : report->counterexamples) {
    bad.push_back({{"F", c.pinned},
                   {"y", c.y},
                   {"row", c.row},
                   {"lhs", RationalToJson(c.lhs)},
                   {"rhs", RationalToJson(c.rhs)}});
  }
  doc["counterexamples"] = bad;
  if (s.machine) {
    out << doc.dump() << "\n";
  } else {
    out << "kc validity: " << (report->Ok() ? "OK" : "COUNTEREXAMPLES")
        << "\nsets checked: " << report->sets_checked
        << "\npoints checked: " << report->points_checked << "\n";
    for (const json& c : bad) out << "  " << c.dump() << "\n";
  }
  return report->Ok() ? kExitOk : kExitInfeasible;
}

Family FamilyOrThrow(const std::string& name) {
  auto family = ParseFamily(name);
  if (!family.has_value()) {
    throw UsageError(absl::StrCat(
        "unknown family ", name,
        " (set-cover, multiset-multicover, knapsack-gap, random-cpip)"));
  }
  return *family;
}

int RunGen(const Flags& flags, std::ostream& out) {
  if (flags.families.size() != 1) throw UsageError("gen needs one --family");
  if (flags.count < 1) throw UsageError("--count must be positive");
  GeneratorSpec spec = flags.spec;
  spec.family = FamilyOrThrow(flags.families.front());
  spec.delta = ParseOrThrow(flags.delta, "delta");
  for (int k = 0; k < flags.count; ++k) {
    GeneratorSpec one = spec;
    one.seed = spec.seed + k;
    auto instance = Generate(one);
    if (!instance.ok()) throw UsageError(std::string(instance.status().message()));
    out << SerializeInstance(*instance) << "\n";
  }
  return kExitOk;
}

int RunBenchCommand(const Flags& flags, std::ostream& out) {
  const Settings s = Resolve(flags);
  if (flags.count < 0) throw UsageError("--count must be nonnegative");
  BenchConfig config;
  config.epsilons = ParseList(flags.epsilons, "epsilons");
  for (const Rational& e : config.epsilons) {
    if (sgn(e) <= 0 || e > 1) throw UsageError("--epsilons must lie in (0, 1]");
  }
  config.seed = flags.seed;
  config.arithmetic = s.options.arithmetic;
  config.prune = s.options.prune;
  config.budget.max_points = flags.budget;
  config.include_timing = flags.timing;
  for (const std::string& name : flags.families) {
    GeneratorSpec spec = flags.spec;
    spec.family = FamilyOrThrow(name);
    if (spec.family == Family::kKnapsackGap) {
      for (const Rational& d : ParseList(flags.deltas, "deltas")) {
        spec.delta = d;
        config.specs.push_back(spec);
      }
    } else {
      for (int k = 0; k < flags.count; ++k) config.specs.push_back(spec);
    }
  }
  const BenchTable table = RunBench(config);
  out << (s.machine ? table.ToJsonLines() : table.ToText());
  return kExitOk;
}

int RunCheck(const Flags& flags, std::istream& in, std::ostream& out) {
  const Settings s = Resolve(flags);
  const CpipInstance instance = LoadInstance(flags, in);
  if (flags.x.empty()) throw UsageError("check needs --x");
  IntegerVector x;
  for (const Rational& v : ParseVectorText(flags.x, "x")) {
    if (!IsIntegral(v)) throw UsageError("--x entries must be integers");
    x.push_back(FloorToInt(v));
  }
  if (static_cast<int>(x.size()) != instance.num_vars()) {
    throw UsageError("--x length differs from the number of variables");
  }
  CheckMode mode;
  if (flags.check_mode == "feasible") {
    mode = CheckMode::kFeasible;
  } else if (flags.check_mode == "strict") {
    mode = CheckMode::kStrict;
  } else if (flags.check_mode == "bicriteria") {
    mode = CheckMode::kBicriteria;
  } else {
    throw UsageError("--check-mode must be feasible, strict or bicriteria");
  }
  SolveReport report;
  report.mode = "check";
  report.x = x;
  report.cost = instance.Cost(x);
  report.checks = CheckSolution(instance, x, s.options.epsilon);
  report.check_mode = mode;
  report.epsilon = s.options.epsilon;
  report.include_timing = false;
  Emit(report, s.machine, out);
  return report.checks->Ok(mode) ? kExitOk : kExitInfeasible;
}

void AddInput(CLI::App* cmd, Flags& f) {
  cmd->add_option("input", f.input, "Instance document path, - for stdin");
}

void AddSolveFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--epsilon", f.epsilon, "Relaxation epsilon in (0,1]");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--arithmetic", f.arithmetic, "rational or float")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--tolerance", f.tolerance, "LP certificate tolerance");
  cmd->add_option("--format", f.format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--max-rounds", f.max_rounds, "KC cutting-plane rounds");
  cmd->add_option("--budget", f.budget, "Oracle enumeration budget");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Covering/packing integer program solvers", "cpip"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  AddInput(solve, f);
  AddSolveFlags(solve, f);
  solve->add_option("--mode", f.mode, "bicriteria, strict, lp, lp-kc, oracle")
      ->check(CLI::IsMember({"bicriteria", "strict", "lp", "lp-kc", "oracle"}));
  solve->add_option("--lambda", f.lambda, "KC relaxation lambda > 1");
  solve->add_flag("--no-prune", f.no_prune, "Skip the prune pass");
  solve->add_flag("--with-oracle", f.with_oracle, "Attach brute-force OPT");
  solve->add_flag("--timing", f.timing, "Include wall time");

  CLI::App* round = app.add_subcommand("round", "Round a fractional cover");
  AddInput(round, f);
  AddSolveFlags(round, f);
  round->add_option("--method", f.method,
                    "randomized, derandomized, granular, bicriteria")
      ->check(CLI::IsMember(
          {"randomized", "derandomized", "granular", "bicriteria"}));
  round->add_option("--granularity", f.granularity, "K for granular rounding");
  round->add_option("--xbar", f.xbar, "Fractional point as a JSON array");

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force optimum");
  AddInput(oracle, f);
  AddSolveFlags(oracle, f);
  oracle->add_flag("--kc-validity", f.kc_validity,
                   "Exhaustively check KC inequalities instead");

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  CLI::App* bench = app.add_subcommand("bench", "Run the benchmark table");
  for (CLI::App* cmd : {gen, bench}) {
    cmd->add_option("--family", f.families,
                    "set-cover, multiset-multicover, knapsack-gap, "
                    "random-cpip");
    cmd->add_option("--m", f.spec.m, "Cover rows");
    cmd->add_option("--n", f.spec.n, "Variables");
    cmd->add_option("--r", f.spec.r, "Packing rows");
    cmd->add_option("--density", f.spec.density, "Nonzero probability");
    cmd->add_option("--coef-max", f.spec.coef_max, "Largest coefficient");
    cmd->add_option("--cost-min", f.spec.cost_min, "Smallest cost");
    cmd->add_option("--cost-max", f.spec.cost_max, "Largest cost");
    cmd->add_option("--max-bound", f.spec.max_bound, "Largest finite d_j");
    cmd->add_option("--unbounded-fraction", f.spec.unbounded_fraction,
                    "Probability of unbounded d_j");
    cmd->add_option("--count", f.count, "Instances (per family for bench)");
  }
  gen->add_option("--seed", f.spec.seed, "Random seed");
  gen->add_option("--delta", f.delta, "knapsack-gap delta in (0,1)");
  AddSolveFlags(bench, f);
  bench->add_option("--epsilons", f.epsilons, "Comma-separated epsilons");
  bench->add_option("--deltas", f.deltas, "Comma-separated knapsack-gap deltas");
  bench->add_flag("--no-prune", f.no_prune, "Skip the prune pass");
  bench->add_flag("--timing", f.timing, "Add a wall-time column");

  CLI::App* check = app.add_subcommand("check", "Check an integer solution");
  AddInput(check, f);
  check->add_option("--x", f.x, "Solution as a JSON array")->required();
  check->add_option("--epsilon", f.epsilon, "Relaxation epsilon in (0,1]");
  check->add_option("--check-mode", f.check_mode,
                    "feasible, strict or bicriteria");
  check->add_option("--format", f.format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* active = &app;
    for (CLI::App* sub : app.get_subcommands()) active = sub;
    err << active->help();
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return RunSolve(f, in, out);
    if (round->parsed()) return RunRound(f, in, out);
    if (oracle->parsed()) return RunOracle(f, in, out);
    if (gen->parsed()) return RunGen(f, out);
    if (bench->parsed()) return RunBenchCommand(f, out);
    if (check->parsed()) return RunCheck(f, in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.message() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace cpip

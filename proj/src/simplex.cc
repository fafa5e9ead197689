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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace cpip {

std::string LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "OPTIMAL";
    case LpStatus::kInfeasible:
      return "INFEASIBLE";
    case LpStatus::kUnbounded:
      return "UNBOUNDED";
  }
  return "UNKNOWN";
}

namespace {

template <typename T>
struct Scalar;

template <>
struct Scalar<double> {
  static constexpr double kPivotTolerance = 1e-9;
  static double From(const Rational& r) { return r.get_d(); }
  static Rational ToRational(double v) {
    if (std::abs(v) < 1e-12) return Rational(0);
    return RationalFromDouble(v);
  }
  static bool IsZero(double v) { return std::abs(v) <= kPivotTolerance; }
  static bool IsPositive(double v) { return v > kPivotTolerance; }
  static bool IsNegative(double v) { return v < -kPivotTolerance; }
};

template <>
struct Scalar<Rational> {
  static const Rational& From(const Rational& r) { return r; }
  static Rational ToRational(const Rational& v) { return v; }
  static bool IsZero(const Rational& v) { return sgn(v) == 0; }
  static bool IsPositive(const Rational& v) { return sgn(v) > 0; }
  static bool IsNegative(const Rational& v) { return sgn(v) < 0; }
};

// Row k of the working system is sign_[k] * (g_k.x + slack_k s_k) = sign_[k] h_k
// with the right-hand side made nonnegative. Each row starts with a unit
// column (its slack, or an artificial), so the tableau columns at those
// positions always hold B^-1.
template <typename T>
class DenseSimplex {
 public:
  using S = Scalar<T>;

  DenseSimplex(const LpProblem& problem, const SimplexOptions& options)
      : problem_(problem), options_(options) {}

  absl::StatusOr<LpSolution> Solve();

 private:
  enum class Phase { kOne, kTwo };

  void Build();
  void ComputeReducedCosts(const std::vector<T>& costs);
  // Returns false on unbounded direction.
  absl::StatusOr<bool> Iterate(Phase phase, const std::vector<T>& costs);
  void Pivot(int row, int col);
  std::vector<T> Duals(const std::vector<T>& costs) const;
  void DriveOutArtificials();

  const LpProblem& problem_;
  const SimplexOptions& options_;

  int num_vars_ = 0;
  int num_rows_ = 0;  // problem rows + bound rows
  int num_cols_ = 0;  // structural + slack + artificial
  int first_artificial_ = 0;
  std::vector<int> bound_row_var_;  // variable of each bound row
  std::vector<int> sign_;
  std::vector<int> unit_col_;
  std::vector<std::vector<T>> tableau_;  // num_rows_ x (num_cols_ + 1)
  std::vector<T> reduced_;  // num_cols_ + 1; last entry is -objective
  std::vector<int> basis_;
  int iterations_ = 0;
};

template <typename T>
void DenseSimplex<T>::Build() {
  num_vars_ = problem_.num_vars();
  struct WorkRow {
    const RationalVector* coefficients;  // nullptr for a bound row
    int var = -1;
    RowSense sense;
    const Rational* rhs;
  };
  std::vector<WorkRow> rows;
  for (const LpRow& row : problem_.rows) {
    rows.push_back({&row.coefficients, -1, row.sense, &row.rhs});
  }
  for (int j = 0; j < num_vars_; ++j) {
    if (problem_.upper_bounds[j].has_value()) {
      rows.push_back({nullptr, j, RowSense::kLessEqual,
                      &*problem_.upper_bounds[j]});
      bound_row_var_.push_back(j);
    }
  }
  num_rows_ = static_cast<int>(rows.size());
  sign_.assign(num_rows_, 1);
  unit_col_.assign(num_rows_, -1);
  int num_artificial = 0;
  std::vector<bool> needs_artificial(num_rows_, false);
  for (int k = 0; k < num_rows_; ++k) {
    sign_[k] = sgn(*rows[k].rhs) < 0 ? -1 : 1;
    const int slack_sign =
        (rows[k].sense == RowSense::kLessEqual ? 1 : -1) * sign_[k];
    if (slack_sign < 0) {
      needs_artificial[k] = true;
      ++num_artificial;
    }
  }
  first_artificial_ = num_vars_ + num_rows_;
  num_cols_ = first_artificial_ + num_artificial;
  tableau_.assign(num_rows_, std::vector<T>(num_cols_ + 1, T(0)));
  basis_.assign(num_rows_, -1);
  int next_artificial = first_artificial_;
  for (int k = 0; k < num_rows_; ++k) {
    std::vector<T>& t = tableau_[k];
    const T sign(sign_[k]);
    if (rows[k].coefficients != nullptr) {
      for (int j = 0; j < num_vars_; ++j) {
        const Rational& g = (*rows[k].coefficients)[j];
        if (sgn(g) != 0) t[j] = sign * S::From(g);
      }
    } else {
      t[rows[k].var] = sign;
    }
    const int slack_sign =
        (rows[k].sense == RowSense::kLessEqual ? 1 : -1) * sign_[k];
    t[num_vars_ + k] = T(slack_sign);
    t[num_cols_] = sign * S::From(*rows[k].rhs);
    if (needs_artificial[k]) {
      t[next_artificial] = T(1);
      unit_col_[k] = next_artificial++;
    } else {
      unit_col_[k] = num_vars_ + k;
    }
    basis_[k] = unit_col_[k];
  }
}

template <typename T>
void DenseSimplex<T>::ComputeReducedCosts(const std::vector<T>& costs) {
  reduced_.assign(num_cols_ + 1, T(0));
  for (int j = 0; j < num_cols_; ++j) reduced_[j] = costs[j];
  for (int r = 0; r < num_rows_; ++r) {
    const T& cb = costs[basis_[r]];
    if (cb == T(0)) continue;
    for (int j = 0; j <= num_cols_; ++j) {
      if (tableau_[r][j] != T(0)) reduced_[j] -= cb * tableau_[r][j];
    }
  }
}

template <typename T>
void DenseSimplex<T>::Pivot(int row, int col) {
  std::vector<T>& prow = tableau_[row];
  const T inv = T(1) / prow[col];
  std::vector<int> nonzero;
  for (int j = 0; j <= num_cols_; ++j) {
    if (prow[j] != T(0)) {
      prow[j] *= inv;
      nonzero.push_back(j);
    }
  }
  prow[col] = T(1);
  auto eliminate = [&](std::vector<T>& target) {
    const T factor = target[col];
    if (factor == T(0)) return;
    for (int j : nonzero) target[j] -= factor * prow[j];
    target[col] = T(0);
  };
  for (int r = 0; r < num_rows_; ++r) {
    if (r != row) eliminate(tableau_[r]);
  }
  eliminate(reduced_);
  basis_[row] = col;
}

template <typename T>
absl::StatusOr<bool> DenseSimplex<T>::Iterate(Phase phase,
                                              const std::vector<T>& costs) {
  ComputeReducedCosts(costs);
  bool bland = options_.rule == PivotRule::kBland;
  int degenerate_run = 0;
  while (true) {
    // Entering column; artificials never re-enter.
    int enter = -1;
    for (int j = 0; j < first_artificial_; ++j) {
      if (!S::IsNegative(reduced_[j])) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (enter < 0 || reduced_[j] < reduced_[enter]) enter = j;
    }
    if (enter < 0) return true;

    int leave = -1;
    T best_ratio(0);
    for (int r = 0; r < num_rows_; ++r) {
      const T& coef = tableau_[r][enter];
      if (!S::IsPositive(coef)) continue;
      T ratio = tableau_[r][num_cols_] / coef;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;

    if (++iterations_ > options_.max_iterations) {
      const T objective = -reduced_[num_cols_];
      return absl::ResourceExhaustedError(absl::StrFormat(
          "simplex iteration limit (%d) exceeded in phase %d; best bound "
          "found %.12g",
          options_.max_iterations, phase == Phase::kOne ? 1 : 2,
          ToDouble(S::ToRational(objective))));
    }
    if (S::IsZero(best_ratio)) {
      if (++degenerate_run >= options_.degenerate_pivots_before_bland) {
        bland = true;
      }
    } else {
      degenerate_run = 0;
    }
    Pivot(leave, enter);
  }
}

template <typename T>
std::vector<T> DenseSimplex<T>::Duals(const std::vector<T>& costs) const {
  std::vector<T> y(num_rows_, T(0));
  for (int k = 0; k < num_rows_; ++k) {
    T sum(0);
    for (int r = 0; r < num_rows_; ++r) {
      const T& cb = costs[basis_[r]];
      const T& entry = tableau_[r][unit_col_[k]];
      if (cb != T(0) && entry != T(0)) sum += cb * entry;
    }
    y[k] = T(sign_[k]) * sum;
  }
  return y;
}

template <typename T>
void DenseSimplex<T>::DriveOutArtificials() {
  for (int r = 0; r < num_rows_; ++r) {
    if (basis_[r] < first_artificial_) continue;
    for (int j = 0; j < first_artificial_; ++j) {
      if (!S::IsZero(tableau_[r][j])) {
        Pivot(r, j);
        break;
      }
    }
  }
}

template <typename T>
absl::StatusOr<LpSolution> DenseSimplex<T>::Solve() {
  if (static_cast<int>(problem_.upper_bounds.size()) != problem_.num_vars()) {
    return absl::InvalidArgumentError("upper_bounds size differs from n");
  }
  for (const LpRow& row : problem_.rows) {
    if (static_cast<int>(row.coefficients.size()) != problem_.num_vars()) {
      return absl::InvalidArgumentError("LP row has wrong dimension");
    }
  }
  Build();
  LpSolution solution;
  solution.mode = std::is_same_v<T, double> ? ArithmeticMode::kFloat
                                            : ArithmeticMode::kRational;

  auto split_duals = [&](const std::vector<T>& y, RationalVector& rows_out,
                         RationalVector& bounds_out) {
    rows_out.assign(problem_.num_rows(), Rational(0));
    bounds_out.assign(num_vars_, Rational(0));
    for (int k = 0; k < problem_.num_rows(); ++k) {
      rows_out[k] = S::ToRational(y[k]);
    }
    for (size_t b = 0; b < bound_row_var_.size(); ++b) {
      bounds_out[bound_row_var_[b]] =
          S::ToRational(y[problem_.num_rows() + b]);
    }
  };

  if (first_artificial_ < num_cols_) {
    std::vector<T> phase_one(num_cols_, T(0));
    for (int j = first_artificial_; j < num_cols_; ++j) phase_one[j] = T(1);
    auto done = Iterate(Phase::kOne, phase_one);
    if (!done.ok()) return done.status();
    const T infeasibility = -reduced_[num_cols_];
    if (S::IsPositive(infeasibility)) {
      solution.status = LpStatus::kInfeasible;
      split_duals(Duals(phase_one), solution.farkas_rows,
                  solution.farkas_bounds);
      solution.iterations = iterations_;
      return solution;
    }
    DriveOutArtificials();
  }

  std::vector<T> costs(num_cols_, T(0));
  for (int j = 0; j < num_vars_; ++j) {
    costs[j] = S::From(problem_.objective[j]);
  }
  auto bounded = Iterate(Phase::kTwo, costs);
  if (!bounded.ok()) return bounded.status();
  solution.iterations = iterations_;
  if (!*bounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.primal.assign(num_vars_, Rational(0));
  for (int r = 0; r < num_rows_; ++r) {
    if (basis_[r] < num_vars_) {
      solution.primal[basis_[r]] = S::ToRational(tableau_[r][num_cols_]);
    }
  }
  for (int j = 0; j < num_vars_; ++j) {
    Rational& x = solution.primal[j];
    if (sgn(x) < 0) x = 0;
    const Bound& u = problem_.upper_bounds[j];
    if (u.has_value() && x > *u) x = *u;
  }
  split_duals(Duals(costs), solution.row_duals, solution.bound_duals);
  solution.objective_value = Dot(problem_.objective, solution.primal);
  return solution;
}

double Magnitude(const Rational& value) { return std::abs(value.get_d()); }

}  // namespace

absl::StatusOr<LpSolution> SolveLp(const LpProblem& problem,
                                   const SimplexOptions& options) {
  if (options.mode == ArithmeticMode::kRational) {
    return DenseSimplex<Rational>(problem, options).Solve();
  }
  auto solution = DenseSimplex<double>(problem, options).Solve();
  if (!solution.ok()) return solution;
  if (solution->status == LpStatus::kOptimal) {
    auto violations = VerifyCertificate(problem, *solution, 1e-6);
    if (!violations.empty()) {
      return absl::InternalError(absl::StrCat(
          "numerical instability detected (", violations.front().Describe(),
          "); re-run in exact rational arithmetic mode"));
    }
  }
  return solution;
}

std::string CertificateViolation::Describe() const {
  std::string what;
  switch (kind) {
    case Kind::kPrimalRow:
      what = "primal row";
      break;
    case Kind::kPrimalUpperBound:
      what = "primal upper bound";
      break;
    case Kind::kPrimalNonnegativity:
      what = "primal nonnegativity";
      break;
    case Kind::kDualSign:
      what = "row dual sign";
      break;
    case Kind::kBoundDualSign:
      what = "bound dual sign";
      break;
    case Kind::kReducedCost:
      what = "reduced cost";
      break;
    case Kind::kDualityGap:
      what = "duality gap";
      break;
    case Kind::kFarkasColumn:
      what = "Farkas column";
      break;
    case Kind::kFarkasValue:
      what = "Farkas value";
      break;
  }
  if (index >= 0) absl::StrAppend(&what, " ", index);
  return absl::StrFormat("%s violated by %.3g", what, amount);
}

std::vector<CertificateViolation> VerifyCertificate(const LpProblem& problem,
                                                    const LpSolution& solution,
                                                    double tolerance) {
  using Kind = CertificateViolation::Kind;
  std::vector<CertificateViolation> out;
  const int n = problem.num_vars();
  const FractionalVector& x = solution.primal;
  if (solution.status != LpStatus::kOptimal ||
      static_cast<int>(x.size()) != n ||
      static_cast<int>(solution.row_duals.size()) != problem.num_rows() ||
      static_cast<int>(solution.bound_duals.size()) != n) {
    out.push_back({Kind::kDualityGap, -1,
                   std::numeric_limits<double>::infinity()});
    return out;
  }
  for (int k = 0; k < problem.num_rows(); ++k) {
    const LpRow& row = problem.rows[k];
    const Rational activity = Dot(row.coefficients, x);
    const Rational excess = row.sense == RowSense::kGreaterEqual
                                ? row.rhs - activity
                                : activity - row.rhs;
    if (sgn(excess) > 0 &&
        excess.get_d() > tolerance * (1.0 + Magnitude(row.rhs))) {
      out.push_back({Kind::kPrimalRow, k, excess.get_d()});
    }
    const Rational& y = solution.row_duals[k];
    const double wrong_sign = row.sense == RowSense::kGreaterEqual
                                  ? -y.get_d()
                                  : y.get_d();
    if (wrong_sign > tolerance) {
      out.push_back({Kind::kDualSign, k, wrong_sign});
    }
  }
  for (int j = 0; j < n; ++j) {
    if (sgn(x[j]) < 0 && -x[j].get_d() > tolerance) {
      out.push_back({Kind::kPrimalNonnegativity, j, -x[j].get_d()});
    }
    const Bound& u = problem.upper_bounds[j];
    if (u.has_value() && x[j] > *u) {
      const double excess = Rational(x[j] - *u).get_d();
      if (excess > tolerance * (1.0 + Magnitude(*u))) {
        out.push_back({Kind::kPrimalUpperBound, j, excess});
      }
    }
    const Rational& z = solution.bound_duals[j];
    if (!u.has_value() && sgn(z) != 0) {
      out.push_back({Kind::kBoundDualSign, j, Magnitude(z)});
    } else if (z.get_d() > tolerance) {
      out.push_back({Kind::kBoundDualSign, j, z.get_d()});
    }
    Rational reduced = problem.objective[j] - z;
    for (int k = 0; k < problem.num_rows(); ++k) {
      const Rational& g = problem.rows[k].coefficients[j];
      if (sgn(g) != 0) reduced -= solution.row_duals[k] * g;
    }
    if (sgn(reduced) < 0 && -reduced.get_d() > tolerance) {
      out.push_back({Kind::kReducedCost, j, -reduced.get_d()});
    }
  }
  const Rational primal_value = Dot(problem.objective, x);
  Rational dual_value = 0;
  for (int k = 0; k < problem.num_rows(); ++k) {
    dual_value += solution.row_duals[k] * problem.rows[k].rhs;
  }
  for (int j = 0; j < n; ++j) {
    if (problem.upper_bounds[j].has_value()) {
      dual_value += solution.bound_duals[j] * *problem.upper_bounds[j];
    }
  }
  const double gap = Magnitude(primal_value - dual_value);
  if (gap > tolerance * (1.0 + Magnitude(primal_value))) {
    out.push_back({Kind::kDualityGap, -1, gap});
  }
  return out;
}

std::vector<CertificateViolation> VerifyInfeasibility(
    const LpProblem& problem, const LpSolution& solution, double tolerance) {
  using Kind = CertificateViolation::Kind;
  std::vector<CertificateViolation> out;
  const int n = problem.num_vars();
  if (solution.status != LpStatus::kInfeasible ||
      static_cast<int>(solution.farkas_rows.size()) != problem.num_rows() ||
      static_cast<int>(solution.farkas_bounds.size()) != n) {
    out.push_back({Kind::kFarkasValue, -1,
                   std::numeric_limits<double>::infinity()});
    return out;
  }
  Rational value = 0;
  for (int k = 0; k < problem.num_rows(); ++k) {
    const Rational& y = solution.farkas_rows[k];
    const double wrong_sign = problem.rows[k].sense == RowSense::kGreaterEqual
                                  ? -y.get_d()
                                  : y.get_d();
    if (wrong_sign > tolerance) out.push_back({Kind::kDualSign, k, wrong_sign});
    value += y * problem.rows[k].rhs;
  }
  for (int j = 0; j < n; ++j) {
    const Rational& z = solution.farkas_bounds[j];
    if (z.get_d() > tolerance) out.push_back({Kind::kBoundDualSign, j, z.get_d()});
    Rational column = z;
    for (int k = 0; k < problem.num_rows(); ++k) {
      column += solution.farkas_rows[k] * problem.rows[k].coefficients[j];
    }
    if (column.get_d() > tolerance) {
      out.push_back({Kind::kFarkasColumn, j, column.get_d()});
    }
    if (problem.upper_bounds[j].has_value()) {
      value += z * *problem.upper_bounds[j];
    }
  }
  if (value.get_d() <= tolerance) {
    out.push_back({Kind::kFarkasValue, -1, -value.get_d()});
  }
  return out;
}

LpProblem BuildStandardLp(const CpipInstance& instance,
                          const BoundVector& upper_bounds) {
  LpProblem lp;
  lp.objective = instance.cost();
  lp.upper_bounds = upper_bounds;
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    lp.rows.push_back({instance.cover_matrix()[i], RowSense::kGreaterEqual,
                       instance.demand()[i]});
  }
  for (int i = 0; i < instance.num_pack_rows(); ++i) {
    lp.rows.push_back({instance.pack_matrix()[i], RowSense::kLessEqual,
                       instance.capacity()[i]});
  }
  return lp;
}

std::vector<std::string> CertificateIssues(const LpProblem& problem,
                                           const LpSolution& solution,
                                           double tolerance) {
  const std::vector<CertificateViolation> found =
      solution.status == LpStatus::kInfeasible
          ? VerifyInfeasibility(problem, solution, tolerance)
          : VerifyCertificate(problem, solution, tolerance);
  std::vector<std::string> out;
  for (const CertificateViolation& v : found) out.push_back(v.Describe());
  return out;
}

}  // namespace cpip

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

#include <limits>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace cpip {
namespace {

// Depth-first enumeration of integer points in [0, caps], lexicographic.
class Enumerator {
 public:
  Enumerator(const CpipInstance& instance, std::vector<int64_t> caps)
      : inst_(instance),
        caps_(std::move(caps)),
        n_(instance.num_vars()),
        m_(instance.num_cover_rows()),
        r_(instance.num_pack_rows()),
        x_(n_, 0),
        cover_(m_, Rational(0)),
        pack_(r_, Rational(0)),
        reach_(m_, RationalVector(n_ + 1, Rational(0))) {
    for (int i = 0; i < m_; ++i) {
      for (int j = n_ - 1; j >= 0; --j) {
        reach_[i][j] = reach_[i][j + 1] +
                       inst_.cover_matrix()[i][j] *
                           Rational(static_cast<long>(caps_[j]));
      }
    }
  }

  // Visits cover-feasible points (optionally packing-feasible) in
  // lexicographic order. `visit` returns false to stop.
  template <typename Visit>
  void Run(bool respect_packing, Visit&& visit) {
    respect_packing_ = respect_packing;
    Recurse(0, Rational(0), visit);
  }

  // Prunes partial points whose cost already reaches it.
  std::optional<Rational> cost_cutoff;
  int64_t nodes = 0;

 private:
  template <typename Visit>
  bool Recurse(int j, const Rational& cost, Visit& visit) {
    ++nodes;
    if (cost_cutoff.has_value() && cost >= *cost_cutoff) return true;
    for (int i = 0; i < m_; ++i) {
      if (cover_[i] + reach_[i][j] < inst_.demand()[i]) return true;
    }
    if (j == n_) return visit(x_, cost);
    const Rational& cj = inst_.cost()[j];
    for (int64_t v = 0; v <= caps_[j]; ++v) {
      x_[j] = v;
      bool packing_ok = true;
      if (respect_packing_) {
        for (int k = 0; k < r_; ++k) {
          if (pack_[k] > inst_.capacity()[k]) packing_ok = false;
        }
      }
      if (packing_ok) {
        if (!Recurse(j + 1, cost + cj * Rational(static_cast<long>(v)),
                     visit)) {
          Undo(j, v);
          return false;
        }
      } else {
        // Coefficients are nonnegative: larger v cannot recover.
        Undo(j, v);
        return true;
      }
      if (v < caps_[j]) Step(j);
    }
    Undo(j, caps_[j]);
    return true;
  }

  void Step(int j) {
    for (int i = 0; i < m_; ++i) cover_[i] += inst_.cover_matrix()[i][j];
    for (int k = 0; k < r_; ++k) pack_[k] += inst_.pack_matrix()[k][j];
  }

  void Undo(int j, int64_t v) {
    x_[j] = 0;
    if (v == 0) return;
    const Rational times(static_cast<long>(v));
    for (int i = 0; i < m_; ++i) {
      cover_[i] -= inst_.cover_matrix()[i][j] * times;
    }
    for (int k = 0; k < r_; ++k) pack_[k] -= inst_.pack_matrix()[k][j] * times;
  }

  const CpipInstance& inst_;
  std::vector<int64_t> caps_;
  int n_, m_, r_;
  IntegerVector x_;
  RationalVector cover_;
  RationalVector pack_;
  RationalMatrix reach_;  // reach_[i][j] = sum_{k >= j} A_ik caps_k
  bool respect_packing_ = true;
};

}  // namespace

std::vector<int64_t> OracleCaps(const CpipInstance& instance) {
  Rational max_demand = 0;
  for (const Rational& a : instance.demand()) {
    if (a > max_demand) max_demand = a;
  }
  std::vector<int64_t> caps(instance.num_vars(), 0);
  for (int j = 0; j < instance.num_vars(); ++j) {
    const Bound& d = instance.bounds()[j];
    if (d.has_value()) {
      caps[j] = FloorToInt(*d);
      continue;
    }
    std::optional<Rational> min_positive;
    for (int i = 0; i < instance.num_cover_rows(); ++i) {
      const Rational& v = instance.cover_matrix()[i][j];
      if (sgn(v) > 0 && (!min_positive || v < *min_positive)) min_positive = v;
    }
    caps[j] = min_positive ? CeilToInt(max_demand / *min_positive) : 0;
  }
  return caps;
}

int64_t SearchSpaceSize(const std::vector<int64_t>& caps) {
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
  int64_t size = 1;
  for (int64_t u : caps) {
    if (size > kMax / (u + 1)) return kMax;
    size *= u + 1;
  }
  return size;
}

std::string OracleStatusName(OracleStatus status) {
  switch (status) {
    case OracleStatus::kOptimal:
      return "OPTIMAL";
    case OracleStatus::kInfeasible:
      return "INFEASIBLE";
    case OracleStatus::kBudgetExceeded:
      return "BUDGET_EXCEEDED";
  }
  return "UNKNOWN";
}

OracleResult BruteForceOpt(const CpipInstance& instance,
                           const OracleBudget& budget) {
  OracleResult result;
  result.caps = OracleCaps(instance);
  result.space_size = SearchSpaceSize(result.caps);
  if (result.space_size > budget.max_points) {
    result.status = OracleStatus::kBudgetExceeded;
    return result;
  }
  Enumerator enumerator(instance, result.caps);
  enumerator.Run(true, [&](const IntegerVector& x, const Rational& cost) {
    // The cost cutoff guarantees cost < best here.
    result.status = OracleStatus::kOptimal;
    result.x = x;
    result.cost = cost;
    enumerator.cost_cutoff = cost;
    return true;
  });
  result.nodes_visited = enumerator.nodes;
  return result;
}

absl::StatusOr<KcValidityReport> CheckKcValidity(const CpipInstance& instance,
                                                 const OracleBudget& budget,
                                                 const KcBuilder& builder) {
  const BoundVector floor_bounds = FloorBounds(instance.bounds());
  std::vector<int> finite;
  for (int j = 0; j < instance.num_vars(); ++j) {
    if (floor_bounds[j].has_value()) finite.push_back(j);
  }
  const std::vector<int64_t> caps = OracleCaps(instance);
  const int64_t space = SearchSpaceSize(caps);
  if (finite.size() >= 62 || space > (budget.max_points >> finite.size())) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "KC validity check needs 2^", finite.size(), " x ", space,
        " points, budget ", budget.max_points));
  }

  std::vector<IntegerVector> points;
  Enumerator enumerator(instance, caps);
  enumerator.Run(false, [&](const IntegerVector& y, const Rational&) {
    points.push_back(y);
    return true;
  });

  KcValidityReport report;
  report.points_checked = static_cast<int64_t>(points.size());
  for (uint64_t mask = 0; mask < (uint64_t{1} << finite.size()); ++mask) {
    PinSet pinned;
    for (size_t b = 0; b < finite.size(); ++b) {
      if (mask & (uint64_t{1} << b)) pinned.push_back(finite[b]);
    }
    auto system = builder(instance, pinned, floor_bounds);
    if (!system.ok()) return system.status();
    ++report.sets_checked;
    for (const IntegerVector& y : points) {
      const FractionalVector fy = ToFractional(y);
      for (size_t i = 0; i < system->residual.size(); ++i) {
        const Rational lhs = Dot(system->coefficients[i], fy);
        if (lhs < system->residual[i]) {
          report.counterexamples.push_back(
              {pinned, y, static_cast<int>(i), lhs, system->residual[i]});
        }
      }
    }
  }
  return report;
}

}  // namespace cpip

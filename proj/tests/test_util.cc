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

#include "test_util.h"

#include <cstdlib>
#include <iostream>
#include <random>

namespace cpip::testing {

CpipInstance Inst(const std::string& document) {
  auto instance = ParseInstance(document);
  if (!instance.ok()) {
    std::cerr << "bad test instance: " << instance.status() << "\n";
    std::abort();
  }
  return *std::move(instance);
}

Rational Q(const std::string& text) {
  auto value = ParseRational(text);
  if (!value.ok()) {
    std::cerr << "bad rational: " << text << "\n";
    std::abort();
  }
  return *value;
}

RationalVector Qv(const std::vector<std::string>& texts) {
  RationalVector out;
  for (const std::string& t : texts) out.push_back(Q(t));
  return out;
}

CpipInstance Gap(const Rational& delta) {
  return Inst("{\"A\": [[\"" + RationalToString(1 - delta) +
              "\", 1]], \"a\": [1], \"c\": [0, 1], \"d\": [1, null]}");
}

namespace {

// Solves M y = rhs exactly; nullopt when M is singular.
std::optional<RationalVector> SolveSquare(RationalMatrix m, RationalVector rhs) {
  const size_t n = rhs.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col || sgn(m[row][col]) == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  RationalVector y(n);
  for (size_t i = 0; i < n; ++i) y[i] = rhs[i] / m[i][i];
  return y;
}

}  // namespace

std::optional<Rational> VertexEnumerationOptimum(const LpProblem& problem) {
  const size_t n = problem.objective.size();
  // Every constraint as (coefficients, rhs, sense): rows, x >= 0, x <= u.
  struct Con {
    RationalVector coef;
    Rational rhs;
    RowSense sense;
  };
  std::vector<Con> cons;
  for (const LpRow& row : problem.rows) {
    cons.push_back({row.coefficients, row.rhs, row.sense});
  }
  for (size_t j = 0; j < n; ++j) {
    RationalVector e(n, Rational(0));
    e[j] = 1;
    cons.push_back({e, Rational(0), RowSense::kGreaterEqual});
    if (j < problem.upper_bounds.size() && problem.upper_bounds[j]) {
      cons.push_back({e, *problem.upper_bounds[j], RowSense::kLessEqual});
    }
  }
  auto feasible = [&](const RationalVector& x) {
    for (const Con& c : cons) {
      const Rational lhs = Dot(c.coef, x);
      if (c.sense == RowSense::kGreaterEqual ? lhs < c.rhs : lhs > c.rhs) {
        return false;
      }
    }
    return true;
  };
  std::optional<Rational> best;
  std::vector<size_t> pick(n);
  std::function<void(size_t, size_t)> choose = [&](size_t depth,
                                                   size_t start) {
    if (depth == n) {
      RationalMatrix m;
      RationalVector rhs;
      for (size_t k : pick) {
        m.push_back(cons[k].coef);
        rhs.push_back(cons[k].rhs);
      }
      auto x = SolveSquare(std::move(m), std::move(rhs));
      if (!x || !feasible(*x)) return;
      const Rational value = Dot(problem.objective, *x);
      if (!best || value < *best) best = value;
      return;
    }
    for (size_t k = start; k + (n - depth) <= cons.size(); ++k) {
      pick[depth] = k;
      choose(depth + 1, k + 1);
    }
  };
  choose(0, 0);
  return best;
}

void ForEachPoint(const std::vector<int64_t>& caps,
                  const std::function<void(const IntegerVector&)>& visit) {
  IntegerVector x(caps.size(), 0);
  while (true) {
    visit(x);
    int j = static_cast<int>(caps.size()) - 1;
    while (j >= 0 && x[j] == caps[j]) x[j--] = 0;
    if (j < 0) return;
    ++x[j];
  }
}

bool CoverFeasible(const CpipInstance& instance, const IntegerVector& x) {
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    Rational lhs = 0;
    for (int j = 0; j < instance.num_vars(); ++j) {
      lhs += instance.cover_matrix()[i][j] * Rational(static_cast<long>(x[j]));
    }
    if (lhs < instance.demand()[i]) return false;
  }
  return true;
}

bool PackFeasible(const CpipInstance& instance, const IntegerVector& x) {
  for (int k = 0; k < instance.num_pack_rows(); ++k) {
    Rational lhs = 0;
    for (int j = 0; j < instance.num_vars(); ++j) {
      lhs += instance.pack_matrix()[k][j] * Rational(static_cast<long>(x[j]));
    }
    if (lhs > instance.capacity()[k]) return false;
  }
  return true;
}

std::optional<std::pair<IntegerVector, Rational>> NaiveIntegerOptimum(
    const CpipInstance& instance, const std::vector<int64_t>& caps) {
  std::optional<std::pair<IntegerVector, Rational>> best;
  ForEachPoint(caps, [&](const IntegerVector& x) {
    if (!CoverFeasible(instance, x) || !PackFeasible(instance, x)) return;
    const Rational cost = instance.Cost(x);
    if (!best || cost < best->second) best = {x, cost};
  });
  return best;
}

CpipInstance RandomInstance(uint64_t seed, int max_dim, int max_pack,
                            int max_bound, double unbounded_fraction) {
  std::mt19937_64 rng(seed * 7919 + 17);
  GeneratorSpec spec;
  spec.family = Family::kRandomCpip;
  spec.m = 1 + static_cast<int>(rng() % max_dim);
  spec.n = 1 + static_cast<int>(rng() % max_dim);
  spec.r = max_pack > 0 ? static_cast<int>(rng() % (max_pack + 1)) : 0;
  spec.density = 0.3 + 0.1 * static_cast<double>(rng() % 6);
  spec.coef_max = 3;
  spec.max_bound = max_bound;
  spec.unbounded_fraction = unbounded_fraction;
  spec.cost_min = 0;
  spec.cost_max = 9;
  spec.seed = seed;
  auto instance = GenRandomCpip(spec);
  if (!instance.ok()) {
    std::cerr << "generator failed: " << instance.status() << "\n";
    std::abort();
  }
  return *std::move(instance);
}

}  // namespace cpip::testing

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

// Covering/packing integer programs
//
//   min c.x  s.t.  A x >= a,  B x <= b,  0 <= x <= d,  x integer
//
// with every coefficient nonnegative. A multiplicity bound d_j may be
// fractional or absent (unbounded).

#ifndef CPIP_MODEL_H_
#define CPIP_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cpip/rational.h"

namespace cpip {

// std::nullopt is UNBOUNDED.
using Bound = std::optional<Rational>;
using BoundVector = std::vector<Bound>;

using FractionalVector = RationalVector;
using IntegerVector = std::vector<int64_t>;

// Controls how linear programs are solved. Everything outside the LP solver
// is exact regardless of the mode.
enum class ArithmeticMode { kRational, kFloat };

// Tolerance declared for float mode.
inline constexpr double kFloatTolerance = 1e-9;

std::string ArithmeticModeName(ArithmeticMode mode);
std::optional<ArithmeticMode> ParseArithmeticMode(std::string_view name);

// Immutable after construction.
class CpipInstance {
 public:
  // Validates dimensions and nonnegativity. B/b may be empty (no packing
  // rows). The cover system may have zero rows.
  static absl::StatusOr<CpipInstance> Create(RationalMatrix cover_matrix,
                                             RationalVector demand,
                                             RationalMatrix pack_matrix,
                                             RationalVector capacity,
                                             RationalVector cost,
                                             BoundVector bounds);

  int num_cover_rows() const { return static_cast<int>(demand_.size()); }
  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_pack_rows() const { return static_cast<int>(capacity_.size()); }

  // A, a, B, b, c, d.
  const RationalMatrix& cover_matrix() const { return cover_matrix_; }
  const RationalVector& demand() const { return demand_; }
  const RationalMatrix& pack_matrix() const { return pack_matrix_; }
  const RationalVector& capacity() const { return capacity_; }
  const RationalVector& cost() const { return cost_; }
  const BoundVector& bounds() const { return bounds_; }

  // beta_i = sum_j B_ij.
  RationalVector PackingRowSums() const;

  Rational Cost(const IntegerVector& x) const;
  Rational Cost(const FractionalVector& x) const;

  bool operator==(const CpipInstance& other) const = default;

 private:
  CpipInstance() = default;

  RationalMatrix cover_matrix_;
  RationalVector demand_;
  RationalMatrix pack_matrix_;
  RationalVector capacity_;
  RationalVector cost_;
  BoundVector bounds_;
};

struct InstanceMetrics {
  Rational width;  // W = min { a_i / A_ij : A_ij > 0 }
  int dilation = 0;  // max_j |{ i : A_ij > 0 }|
};

// Reads the JSON instance document. Numbers may be JSON numbers (read
// exactly from their decimal text) or strings "p/q"; null in d means
// unbounded. Syntax errors carry line and column; validation errors name
// the offending field.
absl::StatusOr<CpipInstance> ParseInstance(std::string_view document);

// Inverse of ParseInstance: parse(serialize(x)) == x.
std::string SerializeInstance(const CpipInstance& instance);

// A_ij := min(A_ij, a_i) and drops rows with a_i = 0. Keeps the integer
// solution set unchanged. Idempotent.
CpipInstance NormalizeWidth(const CpipInstance& instance);

bool IsWidthNormalized(const CpipInstance& instance);

// Fails with "no covering structure" when A has no positive entry.
absl::StatusOr<InstanceMetrics> ComputeMetrics(const CpipInstance& instance);

// Row activities A x and B x.
RationalVector CoverActivity(const CpipInstance& instance,
                             const FractionalVector& x);
RationalVector PackActivity(const CpipInstance& instance,
                            const FractionalVector& x);

FractionalVector ToFractional(const IntegerVector& x);

// floor(d), preserving unbounded entries.
BoundVector FloorBounds(const BoundVector& bounds);

std::string BoundToString(const Bound& bound);

}  // namespace cpip

#endif  // CPIP_MODEL_H_

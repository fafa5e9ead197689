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

#ifndef CPIP_RATIONAL_H_
#define CPIP_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace cpip {

// Exact rational scalar used for all instance data and integer checks.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// Parses "12", "-0.25", "1.5e-3" or "p/q" into an exact rational. Decimal
// notation is interpreted exactly (0.1 is 1/10, not the nearest double).
absl::StatusOr<Rational> ParseRational(std::string_view text);

// Canonical text: "p" when integral, otherwise "p/q".
std::string RationalToString(const Rational& value);

// Exact conversion of a finite double.
Rational RationalFromDouble(double value);

inline double ToDouble(const Rational& value) { return value.get_d(); }

int64_t FloorToInt(const Rational& value);
int64_t CeilToInt(const Rational& value);

inline Rational FloorRational(const Rational& value) {
  return Rational(FloorToInt(value));
}
inline Rational CeilRational(const Rational& value) {
  return Rational(CeilToInt(value));
}

inline bool IsIntegral(const Rational& value) {
  return value.get_den() == 1;
}

Rational Dot(const RationalVector& lhs, const RationalVector& rhs);

}  // namespace cpip

#endif  // CPIP_RATIONAL_H_

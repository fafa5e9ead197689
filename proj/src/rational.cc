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

#include "cpip/rational.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace cpip {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

absl::StatusOr<mpz_class> ParseInteger(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!AllDigits(digits)) {
    return absl::InvalidArgumentError(
        absl::StrCat("not an integer: '", std::string(text), "'"));
  }
  mpz_class value(std::string(digits), 10);
  return negative ? mpz_class(-value) : value;
}

absl::StatusOr<Rational> ParseDecimal(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  const size_t e_pos = rest.find_first_of("eE");
  if (e_pos != std::string_view::npos) {
    std::string_view exp_text = rest.substr(e_pos + 1);
    auto exp_value = ParseInteger(exp_text);
    if (!exp_value.ok() || !exp_value->fits_slong_p() ||
        std::labs(exp_value->get_si()) > 10000) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad exponent in number '", std::string(text), "'"));
    }
    exponent = exp_value->get_si();
    rest = rest.substr(0, e_pos);
  }
  std::string digits;
  const size_t dot = rest.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(rest);
  } else {
    std::string_view int_part = rest.substr(0, dot);
    std::string_view frac_part = rest.substr(dot + 1);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  }
  if (!AllDigits(digits)) {
    return absl::InvalidArgumentError(
        absl::StrCat("not a number: '", std::string(text), "'"));
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(
                                          std::labs(exponent)));
  Rational result = exponent >= 0 ? Rational(mantissa * scale)
                                  : Rational(mantissa, scale);
  result.canonicalize();
  return result;
}

}  // namespace

absl::StatusOr<Rational> ParseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return absl::InvalidArgumentError("empty number");
  const size_t slash = text.find('/');
  if (slash == std::string_view::npos) return ParseDecimal(text);
  auto num = ParseInteger(text.substr(0, slash));
  auto den = ParseInteger(text.substr(slash + 1));
  if (!num.ok() || !den.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad fraction '", std::string(text), "'"));
  }
  if (*den == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("zero denominator in '", std::string(text), "'"));
  }
  Rational result(*num, *den);
  result.canonicalize();
  return result;
}

std::string RationalToString(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

Rational RationalFromDouble(double value) {
  Rational result(value);
  result.canonicalize();
  return result;
}

int64_t FloorToInt(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q.get_si();
}

int64_t CeilToInt(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q.get_si();
}

Rational Dot(const RationalVector& lhs, const RationalVector& rhs) {
  Rational sum = 0;
  const size_t n = std::min(lhs.size(), rhs.size());
  for (size_t j = 0; j < n; ++j) {
    if (sgn(lhs[j]) != 0 && sgn(rhs[j]) != 0) sum += lhs[j] * rhs[j];
  }
  return sum;
}

}  // namespace cpip

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

#include "cpip/model.h"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace cpip {

using nlohmann::json;

std::string ArithmeticModeName(ArithmeticMode mode) {
  return mode == ArithmeticMode::kRational ? "rational" : "float";
}

std::optional<ArithmeticMode> ParseArithmeticMode(std::string_view name) {
  if (name == "rational") return ArithmeticMode::kRational;
  if (name == "float") return ArithmeticMode::kFloat;
  return std::nullopt;
}

absl::StatusOr<CpipInstance> CpipInstance::Create(RationalMatrix cover_matrix,
                                                  RationalVector demand,
                                                  RationalMatrix pack_matrix,
                                                  RationalVector capacity,
                                                  RationalVector cost,
                                                  BoundVector bounds) {
  const size_t n = cost.size();
  if (n == 0) return absl::InvalidArgumentError("empty variable list");
  if (cover_matrix.size() != demand.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("A has ", cover_matrix.size(), " rows but a has ",
                     demand.size(), " entries"));
  }
  if (pack_matrix.size() != capacity.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("B has ", pack_matrix.size(), " rows but b has ",
                     capacity.size(), " entries"));
  }
  if (bounds.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "d has ", bounds.size(), " entries but c has ", n));
  }
  auto check_matrix = [n](const RationalMatrix& m,
                          const std::string& name) -> absl::Status {
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i].size() != n) {
        return absl::InvalidArgumentError(absl::StrCat(
            name, "[", i, "] has ", m[i].size(), " entries, expected ", n));
      }
      for (size_t j = 0; j < n; ++j) {
        if (sgn(m[i][j]) < 0) {
          return absl::InvalidArgumentError(
              absl::StrCat(name, "[", i, "][", j, "] is negative (",
                           RationalToString(m[i][j]), ")"));
        }
      }
    }
    return absl::OkStatus();
  };
  auto check_vector = [](const RationalVector& v,
                         const std::string& name) -> absl::Status {
    for (size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) < 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            name, "[", i, "] is negative (", RationalToString(v[i]), ")"));
      }
    }
    return absl::OkStatus();
  };
  if (auto s = check_matrix(cover_matrix, "A"); !s.ok()) return s;
  if (auto s = check_matrix(pack_matrix, "B"); !s.ok()) return s;
  if (auto s = check_vector(demand, "a"); !s.ok()) return s;
  if (auto s = check_vector(capacity, "b"); !s.ok()) return s;
  if (auto s = check_vector(cost, "c"); !s.ok()) return s;
  for (size_t j = 0; j < n; ++j) {
    if (bounds[j].has_value() && sgn(*bounds[j]) < 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "d[", j, "] is negative (", RationalToString(*bounds[j]), ")"));
    }
  }
  CpipInstance instance;
  instance.cover_matrix_ = std::move(cover_matrix);
  instance.demand_ = std::move(demand);
  instance.pack_matrix_ = std::move(pack_matrix);
  instance.capacity_ = std::move(capacity);
  instance.cost_ = std::move(cost);
  instance.bounds_ = std::move(bounds);
  return instance;
}

RationalVector CpipInstance::PackingRowSums() const {
  RationalVector sums(pack_matrix_.size(), Rational(0));
  for (size_t i = 0; i < pack_matrix_.size(); ++i) {
    for (const Rational& v : pack_matrix_[i]) sums[i] += v;
  }
  return sums;
}

Rational CpipInstance::Cost(const IntegerVector& x) const {
  return Cost(ToFractional(x));
}

Rational CpipInstance::Cost(const FractionalVector& x) const {
  return Dot(cost_, x);
}

namespace {

// Builds a DOM in which every JSON number is kept as its source text, so
// decimals can be read as exact rationals.
class ExactNumberSax : public nlohmann::json_sax<json> {
 public:
  json root;
  std::string error;
  size_t error_position = 0;

  bool null() override { return Add(nullptr); }
  bool boolean(bool value) override { return Add(value); }
  bool number_integer(number_integer_t value) override {
    return Add(std::to_string(value));
  }
  bool number_unsigned(number_unsigned_t value) override {
    return Add(std::to_string(value));
  }
  bool number_float(number_float_t, const string_t& text) override {
    return Add(text);
  }
  bool string(string_t& value) override { return Add(value); }
  bool binary(binary_t&) override { return Add(nullptr); }
  bool start_object(std::size_t) override { return Open(json::object()); }
  bool key(string_t& value) override {
    key_ = value;
    return true;
  }
  bool end_object() override {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override { return Open(json::array()); }
  bool end_array() override {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    error = ex.what();
    error_position = position;
    return false;
  }

 private:
  json* Place(json value) {
    if (stack_.empty()) {
      root = std::move(value);
      return &root;
    }
    json& parent = *stack_.back();
    if (parent.is_array()) {
      parent.push_back(std::move(value));
      return &parent.back();
    }
    parent[key_] = std::move(value);
    return &parent[key_];
  }
  bool Add(json value) {
    Place(std::move(value));
    return true;
  }
  bool Open(json value) {
    stack_.push_back(Place(std::move(value)));
    return true;
  }

  std::vector<json*> stack_;
  std::string key_;
};

std::string LineColumn(std::string_view doc, size_t position) {
  size_t line = 1;
  size_t column = 1;
  for (size_t k = 0; k + 1 < position && k < doc.size(); ++k) {
    if (doc[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return absl::StrCat("line ", line, ", column ", column);
}

absl::StatusOr<Rational> ReadNumber(const json& node, const std::string& field) {
  if (!node.is_string()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field ", field, ": expected a number"));
  }
  auto value = ParseRational(node.get<std::string>());
  if (!value.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field ", field, ": ", value.status().message()));
  }
  return *value;
}

absl::StatusOr<RationalVector> ReadVector(const json& node,
                                          const std::string& field) {
  if (!node.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field ", field, ": expected an array"));
  }
  RationalVector out;
  out.reserve(node.size());
  for (size_t k = 0; k < node.size(); ++k) {
    auto v = ReadNumber(node[k], absl::StrCat(field, "[", k, "]"));
    if (!v.ok()) return v.status();
    out.push_back(*std::move(v));
  }
  return out;
}

absl::StatusOr<RationalMatrix> ReadMatrix(const json& node,
                                          const std::string& field) {
  if (!node.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field ", field, ": expected an array of rows"));
  }
  RationalMatrix out;
  out.reserve(node.size());
  for (size_t k = 0; k < node.size(); ++k) {
    auto row = ReadVector(node[k], absl::StrCat(field, "[", k, "]"));
    if (!row.ok()) return row.status();
    out.push_back(*std::move(row));
  }
  return out;
}

json NumberToJson(const Rational& value) {
  if (IsIntegral(value) && value.get_num().fits_slong_p()) {
    return static_cast<int64_t>(value.get_num().get_si());
  }
  return RationalToString(value);
}

json VectorToJson(const RationalVector& v) {
  json out = json::array();
  for (const Rational& x : v) out.push_back(NumberToJson(x));
  return out;
}

json MatrixToJson(const RationalMatrix& m) {
  json out = json::array();
  for (const RationalVector& row : m) out.push_back(VectorToJson(row));
  return out;
}

}  // namespace

absl::StatusOr<CpipInstance> ParseInstance(std::string_view document) {
  ExactNumberSax sax;
  const bool ok = json::sax_parse(document.begin(), document.end(), &sax);
  if (!ok) {
    return absl::InvalidArgumentError(
        absl::StrCat("parse error at ", LineColumn(document, sax.error_position),
                     ": ", sax.error));
  }
  const json& root = sax.root;
  if (!root.is_object()) {
    return absl::InvalidArgumentError("instance document must be an object");
  }
  for (const auto& [key, value] : root.items()) {
    if (key != "A" && key != "a" && key != "B" && key != "b" && key != "c" &&
        key != "d") {
      return absl::InvalidArgumentError(
          absl::StrCat("field ", key, ": unknown field"));
    }
  }
  for (const char* required : {"A", "a", "c"}) {
    if (!root.contains(required)) {
      return absl::InvalidArgumentError(
          absl::StrCat("field ", required, ": missing"));
    }
  }
  if (root.contains("B") != root.contains("b")) {
    return absl::InvalidArgumentError("fields B and b must appear together");
  }
  auto cover = ReadMatrix(root["A"], "A");
  if (!cover.ok()) return cover.status();
  auto demand = ReadVector(root["a"], "a");
  if (!demand.ok()) return demand.status();
  auto cost = ReadVector(root["c"], "c");
  if (!cost.ok()) return cost.status();
  RationalMatrix pack;
  RationalVector capacity;
  if (root.contains("B")) {
    auto b_matrix = ReadMatrix(root["B"], "B");
    if (!b_matrix.ok()) return b_matrix.status();
    auto b_vector = ReadVector(root["b"], "b");
    if (!b_vector.ok()) return b_vector.status();
    pack = *std::move(b_matrix);
    capacity = *std::move(b_vector);
  }
  BoundVector bounds(cost->size(), std::nullopt);
  if (root.contains("d")) {
    const json& d = root["d"];
    if (!d.is_array()) {
      return absl::InvalidArgumentError("field d: expected an array");
    }
    bounds.assign(d.size(), std::nullopt);
    for (size_t j = 0; j < d.size(); ++j) {
      if (d[j].is_null()) continue;
      auto v = ReadNumber(d[j], absl::StrCat("d[", j, "]"));
      if (!v.ok()) return v.status();
      bounds[j] = *std::move(v);
    }
  }
  return CpipInstance::Create(*std::move(cover), *std::move(demand),
                              std::move(pack), std::move(capacity),
                              *std::move(cost), std::move(bounds));
}

std::string SerializeInstance(const CpipInstance& instance) {
  json doc = json::object();
  doc["A"] = MatrixToJson(instance.cover_matrix());
  doc["a"] = VectorToJson(instance.demand());
  if (instance.num_pack_rows() > 0) {
    doc["B"] = MatrixToJson(instance.pack_matrix());
    doc["b"] = VectorToJson(instance.capacity());
  }
  doc["c"] = VectorToJson(instance.cost());
  json d = json::array();
  for (const Bound& bound : instance.bounds()) {
    d.push_back(bound.has_value() ? NumberToJson(*bound) : json(nullptr));
  }
  doc["d"] = std::move(d);
  return doc.dump();
}

CpipInstance NormalizeWidth(const CpipInstance& instance) {
  RationalMatrix cover;
  RationalVector demand;
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    const Rational& a_i = instance.demand()[i];
    if (sgn(a_i) == 0) continue;
    RationalVector row = instance.cover_matrix()[i];
    for (Rational& v : row) {
      if (v > a_i) v = a_i;
    }
    cover.push_back(std::move(row));
    demand.push_back(a_i);
  }
  auto normalized = CpipInstance::Create(
      std::move(cover), std::move(demand), instance.pack_matrix(),
      instance.capacity(), instance.cost(), instance.bounds());
  // Dimensions and signs are inherited from a valid instance.
  return *std::move(normalized);
}

bool IsWidthNormalized(const CpipInstance& instance) {
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    const Rational& a_i = instance.demand()[i];
    if (sgn(a_i) == 0) return false;
    for (const Rational& v : instance.cover_matrix()[i]) {
      if (v > a_i) return false;
    }
  }
  return true;
}

absl::StatusOr<InstanceMetrics> ComputeMetrics(const CpipInstance& instance) {
  InstanceMetrics metrics;
  bool found = false;
  std::vector<int> appearances(instance.num_vars(), 0);
  for (int i = 0; i < instance.num_cover_rows(); ++i) {
    for (int j = 0; j < instance.num_vars(); ++j) {
      const Rational& v = instance.cover_matrix()[i][j];
      if (sgn(v) <= 0) continue;
      ++appearances[j];
      Rational ratio = instance.demand()[i] / v;
      if (!found || ratio < metrics.width) metrics.width = ratio;
      found = true;
    }
  }
  if (!found) return absl::FailedPreconditionError("no covering structure");
  metrics.dilation = *std::max_element(appearances.begin(), appearances.end());
  return metrics;
}

RationalVector CoverActivity(const CpipInstance& instance,
                             const FractionalVector& x) {
  RationalVector out;
  out.reserve(instance.num_cover_rows());
  for (const RationalVector& row : instance.cover_matrix()) {
    out.push_back(Dot(row, x));
  }
  return out;
}

RationalVector PackActivity(const CpipInstance& instance,
                            const FractionalVector& x) {
  RationalVector out;
  out.reserve(instance.num_pack_rows());
  for (const RationalVector& row : instance.pack_matrix()) {
    out.push_back(Dot(row, x));
  }
  return out;
}

FractionalVector ToFractional(const IntegerVector& x) {
  FractionalVector out;
  out.reserve(x.size());
  for (int64_t v : x) out.emplace_back(static_cast<long>(v));
  return out;
}

BoundVector FloorBounds(const BoundVector& bounds) {
  BoundVector out;
  out.reserve(bounds.size());
  for (const Bound& bound : bounds) {
    if (bound.has_value()) {
      out.emplace_back(FloorRational(*bound));
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::string BoundToString(const Bound& bound) {
  return bound.has_value() ? RationalToString(*bound) : "unbounded";
}

}  // namespace cpip

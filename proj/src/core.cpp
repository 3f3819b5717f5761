// Copyright 2026 The ldp-rsfd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsfd/core.hpp"

#include <cmath>
#include <unordered_set>

namespace rsfd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySchema: return "EmptySchema";
    case ErrorCode::kCardinalityTooSmall: return "CardinalityTooSmall";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kInvalidBudget: return "InvalidBudget";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDegenerateParams: return "DegenerateParams";
    case ErrorCode::kInvalidFrequency: return "InvalidFrequency";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kMalformedReport: return "MalformedReport";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

AttributeSchema AttributeSchema::from_cardinalities(std::vector<int> cardinalities) {
  AttributeSchema schema;
  schema.names.reserve(cardinalities.size());
  for (std::size_t j = 0; j < cardinalities.size(); ++j) {
    schema.names.push_back("a" + std::to_string(j));
  }
  schema.cardinalities = std::move(cardinalities);
  return schema;
}

void validate_schema(const AttributeSchema& schema) {
  if (schema.cardinalities.empty()) {
    throw Error(ErrorCode::kEmptySchema, "schema has no attributes");
  }
  if (schema.names.size() != schema.cardinalities.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "schema has " + std::to_string(schema.names.size()) + " names for " +
                    std::to_string(schema.cardinalities.size()) + " attributes");
  }
  for (int j = 0; j < schema.d(); ++j) {
    if (schema.k(j) < 2) {
      throw Error(ErrorCode::kCardinalityTooSmall,
                  "attribute '" + schema.names[static_cast<std::size_t>(j)] +
                      "' has cardinality " + std::to_string(schema.k(j)) + " (need >= 2)");
    }
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& name : schema.names) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kDuplicateName, "attribute name '" + name + "' repeats");
    }
  }
}

void validate_record(RecordView record, const AttributeSchema& schema) {
  if (static_cast<int>(record.size()) != schema.d()) {
    throw Error(ErrorCode::kShapeMismatch, "record has " + std::to_string(record.size()) +
                                               " values, schema has " +
                                               std::to_string(schema.d()) + " attributes");
  }
  for (int j = 0; j < schema.d(); ++j) {
    const Value v = record[static_cast<std::size_t>(j)];
    if (v < 0 || v >= schema.k(j)) {
      throw Error(ErrorCode::kValueOutOfRange, "value " + std::to_string(v) +
                                                   " outside [0, " + std::to_string(schema.k(j)) +
                                                   ") at attribute " + std::to_string(j));
    }
  }
}

void check_budget(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidBudget,
                "epsilon must be positive and finite, got " + std::to_string(epsilon));
  }
}

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) { check_budget(epsilon); }

}  // namespace rsfd

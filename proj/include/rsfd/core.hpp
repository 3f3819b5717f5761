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

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsfd {

enum class ErrorCode {
  kEmptySchema,
  kCardinalityTooSmall,
  kDuplicateName,
  kInvalidBudget,
  kValueOutOfRange,
  kShapeMismatch,
  kDegenerateParams,
  kInvalidFrequency,
  kStateSpaceTooLarge,
  kFileNotFound,
  kMalformedRow,
  kMalformedReport,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every diagnostic raised by the library carries exactly one code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using Value = std::int32_t;
using Record = std::vector<Value>;
using RecordView = std::span<const Value>;

// Attribute count d, per-attribute labels and cardinalities k_j.
struct AttributeSchema {
  std::vector<std::string> names;
  std::vector<int> cardinalities;

  int d() const { return static_cast<int>(cardinalities.size()); }
  int k(int j) const { return cardinalities[static_cast<std::size_t>(j)]; }

  // Names default to "a0", "a1", ...
  static AttributeSchema from_cardinalities(std::vector<int> cardinalities);
};

void validate_schema(const AttributeSchema& schema);

// Throws kShapeMismatch or kValueOutOfRange.
void validate_record(RecordView record, const AttributeSchema& schema);

// Privacy budget in nats. Construction enforces 0 < epsilon < inf.
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);

  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

void check_budget(double epsilon);

}  // namespace rsfd

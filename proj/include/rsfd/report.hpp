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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsfd/core.hpp"

namespace rsfd {

// One byte per bit, each 0 or 1.
using BitVector = std::vector<std::uint8_t>;

// A single attribute's privatized output: a value index (GRR) or a bit vector (OUE).
using AttributeReport = std::variant<Value, BitVector>;

struct ValueReports {
  std::vector<Value> values;
  bool operator==(const ValueReports&) const = default;
};

struct BitReports {
  std::vector<BitVector> bits;
  bool operator==(const BitReports&) const = default;
};

// Smp discloses the sampled attribute alongside its payload.
struct SampledReport {
  int attribute = 0;
  AttributeReport payload;
  bool operator==(const SampledReport&) const = default;
};

struct MixedReports {
  std::vector<AttributeReport> entries;
  bool operator==(const MixedReports&) const = default;
};

// One user's privatized output. None of the alternatives for the RS+FD
// protocols carry the index of the sampled attribute.
using ReportTuple = std::variant<ValueReports, BitReports, SampledReport, MixedReports>;

// Throws kShapeMismatch / kValueOutOfRange when the report does not fit the schema.
void validate_report(const ReportTuple& report, const AttributeSchema& schema);

// Line-oriented text encoding:
//   "V 1 0 2"       value reports
//   "B 101 01"      bit reports
//   "S 1 2"         sampled report, attribute 1, value 2 ("S 1 b0101" for bits)
//   "M 2 b0101"     mixed reports
std::string serialize(const ReportTuple& report);

// Inverse of serialize. Throws kMalformedReport.
ReportTuple parse_report(std::string_view text);

}  // namespace rsfd

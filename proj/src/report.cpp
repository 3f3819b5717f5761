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

#include "rsfd/report.hpp"

#include <charconv>

namespace rsfd {
namespace {

void check_entry(const AttributeReport& entry, int j, const AttributeSchema& schema) {
  const int k = schema.k(j);
  if (const auto* value = std::get_if<Value>(&entry)) {
    if (*value < 0 || *value >= k) {
      throw Error(ErrorCode::kValueOutOfRange,
                  "reported value " + std::to_string(*value) + " at attribute " +
                      std::to_string(j));
    }
    return;
  }
  const auto& bits = std::get<BitVector>(entry);
  if (static_cast<int>(bits.size()) != k) {
    throw Error(ErrorCode::kShapeMismatch, "bit vector of width " + std::to_string(bits.size()) +
                                               " at attribute " + std::to_string(j) +
                                               " (expected " + std::to_string(k) + ")");
  }
  for (auto bit : bits) {
    if (bit > 1) throw Error(ErrorCode::kValueOutOfRange, "bit vector entry is not 0/1");
  }
}

void check_arity(std::size_t size, const AttributeSchema& schema) {
  if (static_cast<int>(size) != schema.d()) {
    throw Error(ErrorCode::kShapeMismatch, "report has " + std::to_string(size) +
                                               " entries, schema has " +
                                               std::to_string(schema.d()));
  }
}

void append_bits(std::string& out, const BitVector& bits) {
  for (auto bit : bits) out.push_back(bit ? '1' : '0');
}

void append_entry(std::string& out, const AttributeReport& entry) {
  if (const auto* value = std::get_if<Value>(&entry)) {
    out += std::to_string(*value);
  } else {
    out.push_back('b');
    append_bits(out, std::get<BitVector>(entry));
  }
}

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? text.size() : next;
    if (end == pos) throw Error(ErrorCode::kMalformedReport, "empty token");
    tokens.push_back(text.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return tokens;
}

Value parse_value(std::string_view token) {
  Value value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kMalformedReport, "bad value token '" + std::string(token) + "'");
  }
  return value;
}

BitVector parse_bits(std::string_view token) {
  if (token.empty()) throw Error(ErrorCode::kMalformedReport, "empty bit vector");
  BitVector bits;
  bits.reserve(token.size());
  for (char c : token) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kMalformedReport, "bad bit token '" + std::string(token) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

AttributeReport parse_entry(std::string_view token) {
  if (!token.empty() && token.front() == 'b') return parse_bits(token.substr(1));
  return parse_value(token);
}

}  // namespace

void validate_report(const ReportTuple& report, const AttributeSchema& schema) {
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReports>) {
          check_arity(r.values.size(), schema);
          for (int j = 0; j < schema.d(); ++j) check_entry(r.values[j], j, schema);
        } else if constexpr (std::is_same_v<T, BitReports>) {
          check_arity(r.bits.size(), schema);
          for (int j = 0; j < schema.d(); ++j) check_entry(r.bits[j], j, schema);
        } else if constexpr (std::is_same_v<T, SampledReport>) {
          if (r.attribute < 0 || r.attribute >= schema.d()) {
            throw Error(ErrorCode::kValueOutOfRange,
                        "sampled attribute " + std::to_string(r.attribute));
          }
          check_entry(r.payload, r.attribute, schema);
        } else {
          check_arity(r.entries.size(), schema);
          for (int j = 0; j < schema.d(); ++j) check_entry(r.entries[j], j, schema);
        }
      },
      report);
}

std::string serialize(const ReportTuple& report) {
  std::string out;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReports>) {
          out.push_back('V');
          for (auto v : r.values) out += ' ' + std::to_string(v);
        } else if constexpr (std::is_same_v<T, BitReports>) {
          out.push_back('B');
          for (const auto& bits : r.bits) {
            out.push_back(' ');
            append_bits(out, bits);
          }
        } else if constexpr (std::is_same_v<T, SampledReport>) {
          out += "S " + std::to_string(r.attribute) + ' ';
          append_entry(out, r.payload);
        } else {
          out.push_back('M');
          for (const auto& entry : r.entries) {
            out.push_back(' ');
            append_entry(out, entry);
          }
        }
      },
      report);
  return out;
}

ReportTuple parse_report(std::string_view text) {
  const auto tokens = split_tokens(text);
  const std::string_view tag = tokens.front();
  if (tag == "V") {
    ValueReports r;
    for (std::size_t i = 1; i < tokens.size(); ++i) r.values.push_back(parse_value(tokens[i]));
    return r;
  }
  if (tag == "B") {
    BitReports r;
    for (std::size_t i = 1; i < tokens.size(); ++i) r.bits.push_back(parse_bits(tokens[i]));
    return r;
  }
  if (tag == "S") {
    if (tokens.size() != 3) throw Error(ErrorCode::kMalformedReport, "sampled report arity");
    return SampledReport{parse_value(tokens[1]), parse_entry(tokens[2])};
  }
  if (tag == "M") {
    MixedReports r;
    for (std::size_t i = 1; i < tokens.size(); ++i) r.entries.push_back(parse_entry(tokens[i]));
    return r;
  }
  throw Error(ErrorCode::kMalformedReport, "unknown report tag '" + std::string(tag) + "'");
}

}  // namespace rsfd

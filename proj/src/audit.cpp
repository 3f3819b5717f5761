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

#include "rsfd/audit.hpp"

#include <cmath>
#include <limits>

namespace rsfd {
namespace {

int bit_at(std::int64_t code, int k, int i) { return static_cast<int>((code >> (k - 1 - i)) & 1); }

// kernel(v, y) for one attribute's mechanism; rows are true values.
Eigen::MatrixXd mechanism_kernel(const AttributeChannel& channel, std::int64_t alphabet) {
  const int k = channel.k;
  Eigen::MatrixXd kernel(k, alphabet);
  for (int v = 0; v < k; ++v) {
    for (std::int64_t y = 0; y < alphabet; ++y) {
      if (channel.mechanism == Mechanism::kGrr) {
        kernel(v, y) = y == v ? channel.p : channel.q;
      } else {
        double prob = 1.0;
        for (int i = 0; i < k; ++i) {
          const double on = i == v ? channel.p : channel.q;
          prob *= bit_at(y, k, i) ? on : 1.0 - on;
        }
        kernel(v, y) = prob;
      }
    }
  }
  return kernel;
}

Eigen::VectorXd fake_kernel(const AttributeChannel& channel, const Eigen::MatrixXd& kernel) {
  const auto alphabet = kernel.cols();
  const int k = channel.k;
  switch (channel.fake) {
    case FakeData::kUniformValue:
      return Eigen::VectorXd::Constant(alphabet, 1.0 / k);
    case FakeData::kZeroVector: {
      Eigen::VectorXd fake(alphabet);
      for (Eigen::Index y = 0; y < alphabet; ++y) {
        double prob = 1.0;
        for (int i = 0; i < k; ++i) prob *= bit_at(y, k, i) ? channel.q : 1.0 - channel.q;
        fake[y] = prob;
      }
      return fake;
    }
    case FakeData::kRandomOneHot:
      return kernel.colwise().mean().transpose();
    case FakeData::kNone:
      break;
  }
  return Eigen::VectorXd();
}

bool is_rsfd(Solution protocol) {
  return protocol != Solution::kSplAdp && protocol != Solution::kSmpAdp;
}

}  // namespace

Record ChannelTable::input(Eigen::Index row) const {
  Record record(static_cast<std::size_t>(schema_.d()));
  for (int j = schema_.d() - 1; j >= 0; --j) {
    record[static_cast<std::size_t>(j)] = static_cast<Value>(row % schema_.k(j));
    row /= schema_.k(j);
  }
  return record;
}

Eigen::Index ChannelTable::input_index(RecordView record) const {
  validate_record(record, schema_);
  Eigen::Index row = 0;
  for (int j = 0; j < schema_.d(); ++j) row = row * schema_.k(j) + record[static_cast<std::size_t>(j)];
  return row;
}

ReportTuple ChannelTable::output(Eigen::Index col) const {
  const int d = schema_.d();
  auto make_entry = [&](int j, std::int64_t code) -> AttributeReport {
    if (mechanisms_[static_cast<std::size_t>(j)] == Mechanism::kGrr) {
      return static_cast<Value>(code);
    }
    const int k = schema_.k(j);
    BitVector bits(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(bit_at(code, k, i));
    return bits;
  };

  if (protocol_ == Solution::kSmpAdp) {
    int j = d - 1;
    while (offsets_[static_cast<std::size_t>(j)] > col) --j;
    return SampledReport{j, make_entry(j, col - offsets_[static_cast<std::size_t>(j)])};
  }
  std::vector<AttributeReport> entries(static_cast<std::size_t>(d));
  for (int j = d - 1; j >= 0; --j) {
    const auto a = alphabet_[static_cast<std::size_t>(j)];
    entries[static_cast<std::size_t>(j)] = make_entry(j, col % a);
    col /= a;
  }
  switch (protocol_) {
    case Solution::kRsfdGrr: {
      ValueReports r;
      for (auto& e : entries) r.values.push_back(std::get<Value>(e));
      return r;
    }
    case Solution::kRsfdOueZ:
    case Solution::kRsfdOueR: {
      BitReports r;
      for (auto& e : entries) r.bits.push_back(std::get<BitVector>(std::move(e)));
      return r;
    }
    default:
      return MixedReports{std::move(entries)};
  }
}

Eigen::Index ChannelTable::output_index(const ReportTuple& report) const {
  validate_report(report, schema_);
  auto code_of = [&](int j, const AttributeReport& entry) -> std::int64_t {
    const bool want_bits = mechanisms_[static_cast<std::size_t>(j)] == Mechanism::kOue;
    if (const auto* value = std::get_if<Value>(&entry)) {
      if (want_bits) throw Error(ErrorCode::kShapeMismatch, "expected a bit vector");
      return *value;
    }
    if (!want_bits) throw Error(ErrorCode::kShapeMismatch, "expected a value index");
    std::int64_t code = 0;
    for (auto bit : std::get<BitVector>(entry)) code = (code << 1) | bit;
    return code;
  };
  auto combine = [&](auto&& entry_at) {
    Eigen::Index col = 0;
    for (int j = 0; j < schema_.d(); ++j) {
      col = col * alphabet_[static_cast<std::size_t>(j)] + code_of(j, entry_at(j));
    }
    return col;
  };

  const bool expect_sampled = protocol_ == Solution::kSmpAdp;
  if (expect_sampled != std::holds_alternative<SampledReport>(report)) {
    throw Error(ErrorCode::kShapeMismatch, "report kind does not match the protocol");
  }
  return std::visit(
      [&](const auto& r) -> Eigen::Index {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReports>) {
          return combine([&](int j) { return AttributeReport(r.values[static_cast<std::size_t>(j)]); });
        } else if constexpr (std::is_same_v<T, BitReports>) {
          return combine([&](int j) { return AttributeReport(r.bits[static_cast<std::size_t>(j)]); });
        } else if constexpr (std::is_same_v<T, SampledReport>) {
          return offsets_[static_cast<std::size_t>(r.attribute)] + code_of(r.attribute, r.payload);
        } else {
          return combine([&](int j) { return r.entries[static_cast<std::size_t>(j)]; });
        }
      },
      report);
}

ChannelTable enumerate_channel(Solution protocol, const AttributeSchema& schema, double epsilon,
                               std::int64_t max_entries) {
  const Protocol instance(protocol, schema, epsilon);
  const int d = schema.d();
  const auto channels = instance.channels();

  ChannelTable table;
  table.protocol_ = protocol;
  table.schema_ = schema;
  table.epsilon_ = epsilon;

  const double limit = static_cast<double>(max_entries);
  double input_count = 1;
  for (int j = 0; j < d; ++j) input_count *= schema.k(j);
  double output_count = protocol == Solution::kSmpAdp ? 0 : 1;
  for (const auto& channel : channels) {
    const double a = channel.mechanism == Mechanism::kGrr ? channel.k : std::ldexp(1.0, channel.k);
    if (protocol == Solution::kSmpAdp) {
      table.offsets_.push_back(static_cast<std::int64_t>(output_count));
      output_count += a;
    } else {
      output_count *= a;
    }
    if (input_count * output_count > limit || channel.k > 62) {
      throw Error(ErrorCode::kStateSpaceTooLarge,
                  "channel needs more than " + std::to_string(max_entries) + " entries");
    }
    table.alphabet_.push_back(static_cast<std::int64_t>(a));
    table.mechanisms_.push_back(channel.mechanism);
  }

  std::vector<Eigen::MatrixXd> kernels;
  std::vector<Eigen::VectorXd> fakes;
  for (int j = 0; j < d; ++j) {
    kernels.push_back(mechanism_kernel(channels[static_cast<std::size_t>(j)],
                                       table.alphabet_[static_cast<std::size_t>(j)]));
    if (is_rsfd(protocol)) {
      fakes.push_back(fake_kernel(channels[static_cast<std::size_t>(j)], kernels.back()));
    }
  }

  const auto rows = static_cast<Eigen::Index>(input_count);
  const auto cols = static_cast<Eigen::Index>(output_count);
  table.probabilities_.resize(rows, cols);
  std::vector<std::int64_t> digits(static_cast<std::size_t>(d));
  for (Eigen::Index row = 0; row < rows; ++row) {
    const Record v = table.input(row);
    if (protocol == Solution::kSmpAdp) {
      for (int j = 0; j < d; ++j) {
        const auto& kernel = kernels[static_cast<std::size_t>(j)];
        const auto offset = table.offsets_[static_cast<std::size_t>(j)];
        for (Eigen::Index y = 0; y < kernel.cols(); ++y) {
          table.probabilities_(row, offset + y) = kernel(v[static_cast<std::size_t>(j)], y) / d;
        }
      }
      continue;
    }
    for (Eigen::Index col = 0; col < cols; ++col) {
      Eigen::Index rest = col;
      for (int j = d - 1; j >= 0; --j) {
        digits[static_cast<std::size_t>(j)] = rest % table.alphabet_[static_cast<std::size_t>(j)];
        rest /= table.alphabet_[static_cast<std::size_t>(j)];
      }
      auto true_term = [&](int j) {
        return kernels[static_cast<std::size_t>(j)](v[static_cast<std::size_t>(j)],
                                                    digits[static_cast<std::size_t>(j)]);
      };
      double prob = 0;
      if (protocol == Solution::kSplAdp) {
        prob = 1;
        for (int j = 0; j < d; ++j) prob *= true_term(j);
      } else {
        for (int j = 0; j < d; ++j) {
          double term = true_term(j);
          for (int i = 0; i < d; ++i) {
            if (i != j) term *= fakes[static_cast<std::size_t>(i)][digits[static_cast<std::size_t>(i)]];
          }
          prob += term;
        }
        prob /= d;
      }
      table.probabilities_(row, col) = prob;
    }
  }
  return table;
}

double max_ratio(const ChannelTable& table, Neighboring neighboring, RatioWitness* witness) {
  std::vector<Record> inputs;
  inputs.reserve(static_cast<std::size_t>(table.inputs()));
  for (Eigen::Index r = 0; r < table.inputs(); ++r) inputs.push_back(table.input(r));
  return max_ratio(table.probabilities(), inputs, neighboring, witness);
}

double max_ratio(const Eigen::MatrixXd& probs, std::span<const Record> inputs,
                 Neighboring neighboring, RatioWitness* witness) {
  const Eigen::Index rows = probs.rows();
  if (static_cast<Eigen::Index>(inputs.size()) != rows) {
    throw Error(ErrorCode::kShapeMismatch, "one input record per channel row is required");
  }

  double best = 0;
  for (Eigen::Index a = 0; a < rows; ++a) {
    for (Eigen::Index b = 0; b < rows; ++b) {
      if (a == b) continue;
      if (neighboring == Neighboring::kOneAttribute) {
        int differing = 0;
        for (std::size_t j = 0; j < inputs[static_cast<std::size_t>(a)].size(); ++j) {
          differing += inputs[static_cast<std::size_t>(a)][j] != inputs[static_cast<std::size_t>(b)][j];
        }
        if (differing != 1) continue;
      }
      for (Eigen::Index y = 0; y < probs.cols(); ++y) {
        const double num = probs(a, y);
        const double den = probs(b, y);
        if (num == 0) continue;
        const double ratio = den == 0 ? std::numeric_limits<double>::infinity() : num / den;
        if (ratio > best) {
          best = ratio;
          if (witness) {
            *witness = RatioWitness{inputs[static_cast<std::size_t>(a)],
                                    inputs[static_cast<std::size_t>(b)], y};
          }
        }
      }
    }
  }
  return best;
}

RatioReport max_ratio(const ChannelTable& table) {
  RatioReport report;
  report.max_ratio_one_attr = max_ratio(table, Neighboring::kOneAttribute, &report.one_attr_witness);
  report.max_ratio_any = max_ratio(table, Neighboring::kAny, &report.any_witness);
  return report;
}

}  // namespace rsfd

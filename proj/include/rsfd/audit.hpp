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

// Exact enumeration of a protocol's report channel on tiny domains. The
// table is built from closed-form kernels, never from the samplers, so it
// serves as the reference distribution for every client implementation.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rsfd/core.hpp"
#include "rsfd/protocol.hpp"
#include "rsfd/report.hpp"

namespace rsfd {

inline constexpr std::int64_t kDefaultChannelLimit = 10'000'000;

// Pr[output | input] for every input tuple (rows, mixed radix with the last
// attribute varying fastest) and every output (columns).
class ChannelTable {
 public:
  Solution protocol() const { return protocol_; }
  const AttributeSchema& schema() const { return schema_; }
  double epsilon() const { return epsilon_; }
  const Eigen::MatrixXd& probabilities() const { return probabilities_; }

  Eigen::Index inputs() const { return probabilities_.rows(); }
  Eigen::Index outputs() const { return probabilities_.cols(); }

  Record input(Eigen::Index row) const;
  Eigen::Index input_index(RecordView record) const;

  ReportTuple output(Eigen::Index col) const;
  // Throws kShapeMismatch when the report kind does not belong to this protocol.
  Eigen::Index output_index(const ReportTuple& report) const;

 private:
  friend ChannelTable enumerate_channel(Solution, const AttributeSchema&, double, std::int64_t);

  Solution protocol_ = Solution::kRsfdGrr;
  AttributeSchema schema_;
  double epsilon_ = 0;
  std::vector<Mechanism> mechanisms_;
  std::vector<std::int64_t> alphabet_;  // per-attribute output alphabet size
  std::vector<std::int64_t> offsets_;   // Smp column offsets
  Eigen::MatrixXd probabilities_;
};

// Throws kStateSpaceTooLarge when inputs x outputs exceeds `max_entries`.
ChannelTable enumerate_channel(Solution protocol, const AttributeSchema& schema, double epsilon,
                               std::int64_t max_entries = kDefaultChannelLimit);

enum class Neighboring { kOneAttribute, kAny };

struct RatioWitness {
  Record input;
  Record other;
  Eigen::Index output = -1;
};

// Supremum of Pr[y|v] / Pr[y|v'] over qualifying input pairs. 0/0 is
// skipped; x/0 with x > 0 yields +infinity.
struct RatioReport {
  double max_ratio_one_attr = 0;
  double max_ratio_any = 0;
  RatioWitness one_attr_witness;
  RatioWitness any_witness;
};

RatioReport max_ratio(const ChannelTable& table);

// Same supremum over an arbitrary row-stochastic matrix whose row r belongs to inputs[r].
double max_ratio(const Eigen::MatrixXd& probabilities, std::span<const Record> inputs,
                 Neighboring neighboring, RatioWitness* witness = nullptr);
double max_ratio(const ChannelTable& table, Neighboring neighboring,
                 RatioWitness* witness = nullptr);

}  // namespace rsfd

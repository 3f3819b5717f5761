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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rsfd/core.hpp"
#include "rsfd/frequency_table.hpp"
#include "rsfd/oracles.hpp"
#include "rsfd/random.hpp"
#include "rsfd/report.hpp"

namespace rsfd {

// The six multidimensional collection solutions compared by the benchmark.
enum class Solution { kSplAdp, kSmpAdp, kRsfdGrr, kRsfdOueZ, kRsfdOueR, kRsfdAdp };

inline constexpr std::array<Solution, 6> kAllSolutions = {
    Solution::kSplAdp,   Solution::kSmpAdp,   Solution::kRsfdGrr,
    Solution::kRsfdOueZ, Solution::kRsfdOueR, Solution::kRsfdAdp};

std::string_view to_string(Solution solution);

// Accepts the names produced by to_string ("spl-adp", "rsfd-oue-z", ...).
Solution parse_solution(std::string_view name);

// What a non-sampled attribute reports under RS+FD.
enum class FakeData { kNone, kUniformValue, kZeroVector, kRandomOneHot };

// How one attribute is privatized inside a solution.
struct AttributeChannel {
  Mechanism mechanism = Mechanism::kGrr;
  FakeData fake = FakeData::kNone;
  int k = 2;
  double epsilon = 0;  // budget the mechanism runs at
  double p = 0;
  double q = 0;
};

// Per-attribute tallies of received reports. Merging is associative and
// commutative, so shards may be aggregated in any order.
class ReportCounts {
 public:
  explicit ReportCounts(const AttributeSchema& schema);

  void add(const ReportTuple& report);
  ReportCounts& operator+=(const ReportCounts& other);

  // counts[i] is the number of reports with value i (or bit i set) for
  // attribute j; n is the number of reports that carried attribute j.
  const CountVector& attribute(int j) const { return attributes_[static_cast<std::size_t>(j)]; }
  std::int64_t total() const { return total_; }
  int d() const { return static_cast<int>(attributes_.size()); }

 private:
  void add_entry(int j, const AttributeReport& entry);

  std::vector<CountVector> attributes_;
  std::int64_t total_ = 0;
};

// Smp groups reports by the disclosed attribute; n_j is attribute(j).n.
using SmpAggregation = ReportCounts;

// A solution instantiated for one schema and budget: per-attribute channels
// with precomputed coins, the client, and the matching estimator.
class Protocol {
 public:
  Protocol(Solution solution, AttributeSchema schema, double epsilon);

  Solution solution() const { return solution_; }
  const AttributeSchema& schema() const { return schema_; }
  double epsilon() const { return epsilon_; }
  // eps' for RS+FD, eps / d for Spl, eps for Smp.
  double mechanism_epsilon() const { return mechanism_epsilon_; }
  std::span<const AttributeChannel> channels() const { return channels_; }

  // Writes into `out`, reusing its storage when it already holds the right alternative.
  void privatize(RecordView record, RandomSource& rng, ReportTuple& out) const;
  ReportTuple privatize(RecordView record, RandomSource& rng) const;

  ReportCounts make_counts() const { return ReportCounts(schema_); }
  FrequencyTable estimate(const ReportCounts& counts) const;

 private:
  struct Lane {
    AttributeChannel channel;
    std::optional<GrrSampler> grr;
    std::optional<UeSampler> ue;
  };

  void privatize_sampled(RecordView record, RandomSource& rng, int j, Lane const& lane,
                         AttributeReport& out) const;

  Solution solution_;
  AttributeSchema schema_;
  double epsilon_;
  double mechanism_epsilon_;
  std::vector<AttributeChannel> channels_;
  std::vector<Lane> lanes_;
};

}  // namespace rsfd

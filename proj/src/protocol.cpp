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

#include "rsfd/protocol.hpp"

#include <cmath>

#include "rsfd/rsfd.hpp"

namespace rsfd {
namespace {

AttributeChannel make_channel(Mechanism mechanism, FakeData fake, int k, double epsilon) {
  AttributeChannel channel;
  channel.mechanism = mechanism;
  channel.fake = fake;
  channel.k = k;
  channel.epsilon = epsilon;
  if (mechanism == Mechanism::kGrr) {
    const auto params = grr_params(epsilon, k);
    channel.p = params.p;
    channel.q = params.q;
  } else {
    const auto params = oue_params(epsilon);
    channel.p = params.p;
    channel.q = params.q;
  }
  return channel;
}

template <typename T>
T& hold(ReportTuple& out) {
  if (auto* existing = std::get_if<T>(&out)) return *existing;
  return out.emplace<T>();
}

template <typename T>
T& hold(AttributeReport& out) {
  if (auto* existing = std::get_if<T>(&out)) return *existing;
  return out.emplace<T>();
}

}  // namespace

std::string_view to_string(Solution solution) {
  switch (solution) {
    case Solution::kSplAdp: return "spl-adp";
    case Solution::kSmpAdp: return "smp-adp";
    case Solution::kRsfdGrr: return "rsfd-grr";
    case Solution::kRsfdOueZ: return "rsfd-oue-z";
    case Solution::kRsfdOueR: return "rsfd-oue-r";
    case Solution::kRsfdAdp: return "rsfd-adp";
  }
  return "unknown";
}

Solution parse_solution(std::string_view name) {
  for (const auto solution : kAllSolutions) {
    if (to_string(solution) == name) return solution;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown solution '" + std::string(name) + "'");
}

ReportCounts::ReportCounts(const AttributeSchema& schema) {
  attributes_.resize(static_cast<std::size_t>(schema.d()));
  for (int j = 0; j < schema.d(); ++j) {
    attributes_[static_cast<std::size_t>(j)].counts.assign(static_cast<std::size_t>(schema.k(j)),
                                                           0);
  }
}

void ReportCounts::add_entry(int j, const AttributeReport& entry) {
  auto& tally = attributes_[static_cast<std::size_t>(j)];
  if (const auto* value = std::get_if<Value>(&entry)) {
    ++tally.counts[static_cast<std::size_t>(*value)];
  } else {
    const auto& bits = std::get<BitVector>(entry);
    for (std::size_t i = 0; i < bits.size(); ++i) tally.counts[i] += bits[i];
  }
  ++tally.n;
}

void ReportCounts::add(const ReportTuple& report) {
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ValueReports>) {
          for (std::size_t j = 0; j < r.values.size(); ++j) {
            auto& tally = attributes_[j];
            ++tally.counts[static_cast<std::size_t>(r.values[j])];
            ++tally.n;
          }
        } else if constexpr (std::is_same_v<T, BitReports>) {
          for (std::size_t j = 0; j < r.bits.size(); ++j) {
            auto& tally = attributes_[j];
            const auto& bits = r.bits[j];
            for (std::size_t i = 0; i < bits.size(); ++i) tally.counts[i] += bits[i];
            ++tally.n;
          }
        } else if constexpr (std::is_same_v<T, SampledReport>) {
          add_entry(r.attribute, r.payload);
        } else {
          for (std::size_t j = 0; j < r.entries.size(); ++j) {
            add_entry(static_cast<int>(j), r.entries[j]);
          }
        }
      },
      report);
  ++total_;
}

ReportCounts& ReportCounts::operator+=(const ReportCounts& other) {
  if (attributes_.size() != other.attributes_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "merging counts over different schemas");
  }
  for (std::size_t j = 0; j < attributes_.size(); ++j) attributes_[j] += other.attributes_[j];
  total_ += other.total_;
  return *this;
}

Protocol::Protocol(Solution solution, AttributeSchema schema, double epsilon)
    : solution_(solution), schema_(std::move(schema)), epsilon_(epsilon) {
  validate_schema(schema_);
  check_budget(epsilon);
  const int d = schema_.d();
  switch (solution_) {
    case Solution::kSplAdp:
      mechanism_epsilon_ = epsilon / d;
      break;
    case Solution::kSmpAdp:
      mechanism_epsilon_ = epsilon;
      break;
    default:
      mechanism_epsilon_ = amplify(epsilon, d).epsilon_prime;
      break;
  }
  const double eps = mechanism_epsilon_;
  for (int j = 0; j < d; ++j) {
    const int k = schema_.k(j);
    switch (solution_) {
      case Solution::kSplAdp:
      case Solution::kSmpAdp:
        channels_.push_back(make_channel(adp_choose(eps, k), FakeData::kNone, k, eps));
        break;
      case Solution::kRsfdGrr:
        channels_.push_back(make_channel(Mechanism::kGrr, FakeData::kUniformValue, k, eps));
        break;
      case Solution::kRsfdOueZ:
        channels_.push_back(make_channel(Mechanism::kOue, FakeData::kZeroVector, k, eps));
        break;
      case Solution::kRsfdOueR:
        channels_.push_back(make_channel(Mechanism::kOue, FakeData::kRandomOneHot, k, eps));
        break;
      case Solution::kRsfdAdp:
        if (rsfd_adp_select(eps, d, k) == RsfdVariant::kGrr) {
          channels_.push_back(make_channel(Mechanism::kGrr, FakeData::kUniformValue, k, eps));
        } else {
          channels_.push_back(make_channel(Mechanism::kOue, FakeData::kZeroVector, k, eps));
        }
        break;
    }
  }
  for (const auto& channel : channels_) {
    Lane lane{channel, std::nullopt, std::nullopt};
    if (channel.mechanism == Mechanism::kGrr) {
      lane.grr.emplace(GrrParams<double>{channel.k, channel.epsilon, channel.p, channel.q});
    } else {
      lane.ue.emplace(UeParams<double>{channel.epsilon, channel.p, channel.q});
    }
    lanes_.push_back(std::move(lane));
  }
}

void Protocol::privatize_sampled(RecordView record, RandomSource& rng, int j, Lane const& lane,
                                 AttributeReport& out) const {
  const Value v = record[static_cast<std::size_t>(j)];
  if (lane.grr) {
    hold<Value>(out) = (*lane.grr)(v, rng);
  } else {
    lane.ue->perturb_one_hot(v, lane.channel.k, rng, hold<BitVector>(out));
  }
}

void Protocol::privatize(RecordView record, RandomSource& rng, ReportTuple& out) const {
  validate_record(record, schema_);
  const int d = schema_.d();
  const auto dd = static_cast<std::size_t>(d);

  if (solution_ == Solution::kSmpAdp) {
    auto& report = hold<SampledReport>(out);
    report.attribute = static_cast<int>(rng.uniform(dd));
    privatize_sampled(record, rng, report.attribute,
                      lanes_[static_cast<std::size_t>(report.attribute)], report.payload);
    return;
  }
  if (solution_ == Solution::kSplAdp) {
    auto& report = hold<MixedReports>(out);
    report.entries.resize(dd);
    for (int j = 0; j < d; ++j) {
      privatize_sampled(record, rng, j, lanes_[static_cast<std::size_t>(j)],
                        report.entries[static_cast<std::size_t>(j)]);
    }
    return;
  }

  const auto sampled = static_cast<int>(rng.uniform(dd));
  switch (solution_) {
    case Solution::kRsfdGrr: {
      auto& values = hold<ValueReports>(out).values;
      values.resize(dd);
      for (int j = 0; j < d; ++j) {
        const auto& lane = lanes_[static_cast<std::size_t>(j)];
        values[static_cast<std::size_t>(j)] =
            j == sampled ? (*lane.grr)(record[static_cast<std::size_t>(j)], rng)
                         : static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(
                               lane.channel.k)));
      }
      return;
    }
    case Solution::kRsfdOueZ:
    case Solution::kRsfdOueR: {
      auto& bits = hold<BitReports>(out).bits;
      bits.resize(dd);
      for (int j = 0; j < d; ++j) {
        const auto& lane = lanes_[static_cast<std::size_t>(j)];
        const int k = lane.channel.k;
        Value hot = -1;
        if (j == sampled) {
          hot = record[static_cast<std::size_t>(j)];
        } else if (lane.channel.fake == FakeData::kRandomOneHot) {
          hot = static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(k)));
        }
        lane.ue->perturb_one_hot(hot, k, rng, bits[static_cast<std::size_t>(j)]);
      }
      return;
    }
    case Solution::kRsfdAdp: {
      auto& entries = hold<MixedReports>(out).entries;
      entries.resize(dd);
      for (int j = 0; j < d; ++j) {
        const auto& lane = lanes_[static_cast<std::size_t>(j)];
        auto& entry = entries[static_cast<std::size_t>(j)];
        if (j == sampled) {
          privatize_sampled(record, rng, j, lane, entry);
        } else if (lane.grr) {
          hold<Value>(entry) =
              static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(lane.channel.k)));
        } else {
          lane.ue->perturb_one_hot(-1, lane.channel.k, rng, hold<BitVector>(entry));
        }
      }
      return;
    }
    default:
      return;
  }
}

ReportTuple Protocol::privatize(RecordView record, RandomSource& rng) const {
  ReportTuple out;
  privatize(record, rng, out);
  return out;
}

FrequencyTable Protocol::estimate(const ReportCounts& counts) const {
  if (counts.d() != schema_.d()) {
    throw Error(ErrorCode::kShapeMismatch, "counts do not match the protocol schema");
  }
  const int d = schema_.d();
  const double eps = mechanism_epsilon_;
  FrequencyTable table;
  table.attributes.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto& tally = counts.attribute(j);
    const auto& channel = channels_[static_cast<std::size_t>(j)];
    auto& slot = table.attributes[static_cast<std::size_t>(j)];
    if (tally.n == 0) continue;  // absent
    switch (solution_) {
      case Solution::kSplAdp:
      case Solution::kSmpAdp:
        slot = estimate_pure(tally, channel.p, channel.q);
        break;
      case Solution::kRsfdGrr:
        slot = rsfd_grr_estimate(tally, d, eps);
        break;
      case Solution::kRsfdOueZ:
        slot = rsfd_oue_z_estimate(tally, d, eps);
        break;
      case Solution::kRsfdOueR:
        slot = rsfd_oue_r_estimate(tally, d, eps);
        break;
      case Solution::kRsfdAdp:
        slot = channel.mechanism == Mechanism::kGrr ? rsfd_grr_estimate(tally, d, eps)
                                                    : rsfd_oue_z_estimate(tally, d, eps);
        break;
    }
  }
  return table;
}

}  // namespace rsfd

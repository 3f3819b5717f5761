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

#include "rsfd/baselines.hpp"

namespace rsfd {

ReportTuple spl_client(RecordView record, const AttributeSchema& schema, double epsilon,
                       RandomSource& rng) {
  return Protocol(Solution::kSplAdp, schema, epsilon).privatize(record, rng);
}

FrequencyTable spl_estimate(const ReportCounts& counts, const AttributeSchema& schema,
                            double epsilon) {
  return Protocol(Solution::kSplAdp, schema, epsilon).estimate(counts);
}

ReportTuple smp_client(RecordView record, const AttributeSchema& schema, double epsilon,
                       RandomSource& rng) {
  return Protocol(Solution::kSmpAdp, schema, epsilon).privatize(record, rng);
}

FrequencyTable smp_estimate(const SmpAggregation& aggregation, const AttributeSchema& schema,
                            double epsilon) {
  return Protocol(Solution::kSmpAdp, schema, epsilon).estimate(aggregation);
}

}  // namespace rsfd

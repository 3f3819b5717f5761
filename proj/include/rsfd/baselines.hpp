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

#include "rsfd/core.hpp"
#include "rsfd/frequency_table.hpp"
#include "rsfd/protocol.hpp"
#include "rsfd/random.hpp"
#include "rsfd/report.hpp"

namespace rsfd {

// Spl: every attribute privatized with the adaptive oracle at eps / d.
ReportTuple spl_client(RecordView record, const AttributeSchema& schema, double epsilon,
                       RandomSource& rng);
FrequencyTable spl_estimate(const ReportCounts& counts, const AttributeSchema& schema,
                            double epsilon);

// Smp: one uniformly sampled attribute, disclosed, privatized at the full eps.
ReportTuple smp_client(RecordView record, const AttributeSchema& schema, double epsilon,
                       RandomSource& rng);

// Normalizes each attribute by its realized group size n_j. Attributes with
// n_j = 0 are left absent in the returned table.
FrequencyTable smp_estimate(const SmpAggregation& aggregation, const AttributeSchema& schema,
                            double epsilon);

}  // namespace rsfd

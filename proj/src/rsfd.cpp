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

#include "rsfd/rsfd.hpp"

#include <cmath>

#include "rsfd/protocol.hpp"

namespace rsfd {

std::string_view to_string(RsfdVariant variant) {
  switch (variant) {
    case RsfdVariant::kGrr: return "GRR";
    case RsfdVariant::kOueZ: return "OUE-z";
    case RsfdVariant::kOueR: return "OUE-r";
  }
  return "unknown";
}

Eigen::VectorXd rsfd_grr_estimate(const CountVector& counts, int d, double epsilon_prime) {
  return rsfd_grr_estimate(counts.as_real(), static_cast<double>(counts.n), d, epsilon_prime);
}

Eigen::VectorXd rsfd_oue_z_estimate(const CountVector& counts, int d, double epsilon_prime) {
  return rsfd_oue_z_estimate(counts.as_real(), static_cast<double>(counts.n), d, epsilon_prime);
}

Eigen::VectorXd rsfd_oue_r_estimate(const CountVector& counts, int d, double epsilon_prime) {
  return rsfd_oue_r_estimate(counts.as_real(), static_cast<double>(counts.n), d, epsilon_prime);
}

RsfdVariant rsfd_adp_select(double epsilon_prime, int d, int k) {
  const double var_grr = rsfd_variance(RsfdVariant::kGrr, 0.0, 1, d, k, epsilon_prime).variance;
  const double var_oue_z =
      rsfd_variance(RsfdVariant::kOueZ, 0.0, 1, d, k, epsilon_prime).variance;
  return var_grr - var_oue_z < 1e-12 ? RsfdVariant::kGrr : RsfdVariant::kOueZ;
}

ReportTuple rsfd_grr_client(RecordView record, const AttributeSchema& schema, double epsilon,
                            RandomSource& rng) {
  return Protocol(Solution::kRsfdGrr, schema, epsilon).privatize(record, rng);
}

ReportTuple rsfd_oue_z_client(RecordView record, const AttributeSchema& schema, double epsilon,
                              RandomSource& rng) {
  return Protocol(Solution::kRsfdOueZ, schema, epsilon).privatize(record, rng);
}

ReportTuple rsfd_oue_r_client(RecordView record, const AttributeSchema& schema, double epsilon,
                              RandomSource& rng) {
  return Protocol(Solution::kRsfdOueR, schema, epsilon).privatize(record, rng);
}

ReportTuple rsfd_adp_client(RecordView record, const AttributeSchema& schema, double epsilon,
                            RandomSource& rng) {
  return Protocol(Solution::kRsfdAdp, schema, epsilon).privatize(record, rng);
}

FrequencyTable rsfd_adp_estimate(const ReportCounts& counts, const AttributeSchema& schema,
                                 double epsilon) {
  return Protocol(Solution::kRsfdAdp, schema, epsilon).estimate(counts);
}

}  // namespace rsfd

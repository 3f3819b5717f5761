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

#include "rsfd/oracles.hpp"

#include <cmath>

namespace rsfd {

std::string_view to_string(Mechanism mechanism) {
  return mechanism == Mechanism::kGrr ? "GRR" : "OUE";
}

Mechanism adp_choose(double epsilon, int k) {
  // ln-valued budgets land a few ulps off integer thresholds (3 e^{ln 3} + 2
  // evaluates above 11), so values within 1e-9 relative count as the boundary.
  const double threshold = 3.0 * std::exp(epsilon) + 2.0;
  return static_cast<double>(k) < threshold * (1.0 - 1e-9) ? Mechanism::kGrr : Mechanism::kOue;
}

Eigen::VectorXd CountVector::as_real() const {
  Eigen::VectorXd real(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    real[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]);
  }
  return real;
}

CountVector& CountVector::operator+=(const CountVector& other) {
  if (counts.size() != other.counts.size()) {
    throw Error(ErrorCode::kShapeMismatch, "merging count vectors of different widths");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  n += other.n;
  return *this;
}

Eigen::VectorXd estimate_pure(const CountVector& counts, double p, double q) {
  return estimate_pure(counts.as_real(), static_cast<double>(counts.n), p, q);
}

GrrSampler::GrrSampler(const GrrParams<double>& params)
    : k_(params.k), keep_(Bernoulli::with_probability(params.p)) {}

UeSampler::UeSampler(const UeParams<double>& params)
    : one_to_one_(Bernoulli::with_probability(params.p)),
      zero_to_one_(Bernoulli::with_probability(params.q)) {}

Value grr_perturb(Value v, const GrrParams<double>& params, RandomSource& rng) {
  if (v < 0 || v >= params.k) {
    throw Error(ErrorCode::kValueOutOfRange,
                "value " + std::to_string(v) + " outside [0, " + std::to_string(params.k) + ")");
  }
  return GrrSampler(params)(v, rng);
}

BitVector oue_encode(Value v, int k) {
  if (v < 0 || v >= k) {
    throw Error(ErrorCode::kValueOutOfRange,
                "value " + std::to_string(v) + " outside [0, " + std::to_string(k) + ")");
  }
  BitVector bits(static_cast<std::size_t>(k), 0);
  bits[static_cast<std::size_t>(v)] = 1;
  return bits;
}

BitVector oue_perturb(const BitVector& bits, const UeParams<double>& params, RandomSource& rng) {
  BitVector out;
  UeSampler(params).perturb(bits, rng, out);
  return out;
}

}  // namespace rsfd

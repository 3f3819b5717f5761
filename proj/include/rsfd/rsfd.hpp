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

// Random sampling plus fake data (RS+FD): each user privatizes one uniformly
// sampled attribute at the amplified budget and emits fake data for the
// others, so the aggregator cannot tell which entry is real.

#include <cmath>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "rsfd/core.hpp"
#include "rsfd/frequency_table.hpp"
#include "rsfd/oracles.hpp"
#include "rsfd/random.hpp"
#include "rsfd/report.hpp"

namespace rsfd {

class ReportCounts;

enum class RsfdVariant { kGrr, kOueZ, kOueR };

std::string_view to_string(RsfdVariant variant);

template <typename Scalar = double>
struct AmplifiedBudget {
  Scalar epsilon{};
  int d = 1;
  Scalar epsilon_prime{};
  Scalar beta{};
};

// eps' = ln(d (e^eps - 1) + 1) with sampling rate beta = 1/d.
template <typename Scalar>
AmplifiedBudget<Scalar> amplify(Scalar epsilon, int d) {
  detail::check_budget(epsilon);
  if (d < 1) throw Error(ErrorCode::kEmptySchema, "amplification needs d >= 1");
  using std::expm1;
  using std::log1p;
  AmplifiedBudget<Scalar> budget;
  budget.epsilon = epsilon;
  budget.d = d;
  budget.epsilon_prime = log1p(Scalar(d) * expm1(epsilon));
  budget.beta = Scalar(1) / Scalar(d);
  return budget;
}

template <typename Scalar = double>
struct RsfdVarianceModel {
  RsfdVariant variant = RsfdVariant::kGrr;
  Scalar delta{};
  Scalar variance{};
};

namespace detail {

template <typename Scalar>
void check_pq(Scalar p, Scalar q) {
  if (p == q) throw Error(ErrorCode::kDegenerateParams, "p == q");
}

// Perturbation probabilities of the variant's mechanism at eps'.
template <typename Scalar>
std::pair<Scalar, Scalar> variant_pq(RsfdVariant variant, int k, Scalar epsilon_prime) {
  if (variant == RsfdVariant::kGrr) {
    const auto params = grr_params(epsilon_prime, k);
    return {params.p, params.q};
  }
  const auto params = oue_params(epsilon_prime);
  return {params.p, params.q};
}

}  // namespace detail

// Exact variance of the estimate of a value with true frequency f:
//   VAR = d^2 delta (1 - delta) / (n (p - q)^2)
// where delta is the probability a single report counts toward that value.
template <typename Scalar>
RsfdVarianceModel<Scalar> rsfd_variance(RsfdVariant variant, Scalar f, std::int64_t n, int d,
                                        int k, Scalar epsilon_prime) {
  if (!(f >= Scalar(0) && f <= Scalar(1))) {
    throw Error(ErrorCode::kInvalidFrequency, "frequency must lie in [0, 1]");
  }
  const auto [p, q] = detail::variant_pq(variant, k, epsilon_prime);
  const Scalar dd(d);
  const Scalar kk(k);
  Scalar delta{};
  switch (variant) {
    case RsfdVariant::kGrr:
      delta = (q + f * (p - q) + (dd - 1) / kk) / dd;
      break;
    case RsfdVariant::kOueZ:
      delta = (dd * q + f * (p - q)) / dd;
      break;
    case RsfdVariant::kOueR:
      delta = (q + f * (p - q) + ((dd - 1) / kk) * (p + (kk - 1) * q)) / dd;
      break;
  }
  RsfdVarianceModel<Scalar> model;
  model.variant = variant;
  model.delta = delta;
  model.variance = dd * dd * delta * (Scalar(1) - delta) / (Scalar(n) * (p - q) * (p - q));
  return model;
}

// N_i -> (N_i d k - n (d - 1 + q k)) / (n k (p - q)), GRR params at eps'.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> rsfd_grr_estimate(
    const Eigen::MatrixBase<Derived>& counts, typename Derived::Scalar n, int d,
    typename Derived::Scalar epsilon_prime) {
  using Scalar = typename Derived::Scalar;
  const int k = static_cast<int>(counts.size());
  const auto params = grr_params(epsilon_prime, k);
  detail::check_pq(params.p, params.q);
  const Scalar kk(k);
  return ((counts.array() * Scalar(d) * kk - n * (Scalar(d - 1) + params.q * kk)) /
          (n * kk * (params.p - params.q)))
      .matrix();
}

// N_i -> d (N_i - n q) / (n (p - q)), OUE params at eps'.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> rsfd_oue_z_estimate(
    const Eigen::MatrixBase<Derived>& counts, typename Derived::Scalar n, int d,
    typename Derived::Scalar epsilon_prime) {
  using Scalar = typename Derived::Scalar;
  const auto params = oue_params(epsilon_prime);
  detail::check_pq(params.p, params.q);
  return (Scalar(d) * (counts.array() - n * params.q) / (n * (params.p - params.q))).matrix();
}

// N_i -> (N_i d k - n [q k + (p - q)(d - 1) + q k (d - 1)]) / (n k (p - q)).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> rsfd_oue_r_estimate(
    const Eigen::MatrixBase<Derived>& counts, typename Derived::Scalar n, int d,
    typename Derived::Scalar epsilon_prime) {
  using Scalar = typename Derived::Scalar;
  const int k = static_cast<int>(counts.size());
  const auto params = oue_params(epsilon_prime);
  detail::check_pq(params.p, params.q);
  const Scalar p = params.p;
  const Scalar q = params.q;
  const Scalar kk(k);
  const Scalar dm1(d - 1);
  const Scalar offset = q * kk + (p - q) * dm1 + q * kk * dm1;
  return ((counts.array() * Scalar(d) * kk - n * offset) / (n * kk * (p - q))).matrix();
}

Eigen::VectorXd rsfd_grr_estimate(const CountVector& counts, int d, double epsilon_prime);
Eigen::VectorXd rsfd_oue_z_estimate(const CountVector& counts, int d, double epsilon_prime);
Eigen::VectorXd rsfd_oue_r_estimate(const CountVector& counts, int d, double epsilon_prime);

// Per-attribute choice between RS+FD[GRR] and RS+FD[OUE-z] by comparing the
// two variances at f = 0 (n cancels). Ties, including |diff| < 1e-12, go to GRR.
RsfdVariant rsfd_adp_select(double epsilon_prime, int d, int k);

ReportTuple rsfd_grr_client(RecordView record, const AttributeSchema& schema, double epsilon,
                            RandomSource& rng);
ReportTuple rsfd_oue_z_client(RecordView record, const AttributeSchema& schema, double epsilon,
                              RandomSource& rng);
ReportTuple rsfd_oue_r_client(RecordView record, const AttributeSchema& schema, double epsilon,
                              RandomSource& rng);
ReportTuple rsfd_adp_client(RecordView record, const AttributeSchema& schema, double epsilon,
                            RandomSource& rng);

FrequencyTable rsfd_adp_estimate(const ReportCounts& counts, const AttributeSchema& schema,
                                 double epsilon);

}  // namespace rsfd

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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rsfd/core.hpp"
#include "rsfd/random.hpp"
#include "rsfd/report.hpp"

namespace rsfd {

enum class Mechanism { kGrr, kOue };

std::string_view to_string(Mechanism mechanism);

template <typename Scalar = double>
struct GrrParams {
  int k = 2;
  Scalar epsilon{};
  Scalar p{};
  Scalar q{};
};

template <typename Scalar = double>
struct UeParams {
  Scalar epsilon{};
  Scalar p{};
  Scalar q{};
};

namespace detail {

template <typename Scalar>
void check_budget(Scalar epsilon) {
  using std::isfinite;
  if (!(epsilon > Scalar(0)) || !isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidBudget, "epsilon must be positive and finite");
  }
}

inline void check_cardinality(int k) {
  if (k < 2) {
    throw Error(ErrorCode::kCardinalityTooSmall,
                "cardinality " + std::to_string(k) + " (need >= 2)");
  }
}

}  // namespace detail

// p = e^eps / (e^eps + k - 1), q = (1 - p) / (k - 1).
template <typename Scalar>
GrrParams<Scalar> grr_params(Scalar epsilon, int k) {
  detail::check_budget(epsilon);
  detail::check_cardinality(k);
  using std::exp;
  const Scalar e = exp(epsilon);
  GrrParams<Scalar> params;
  params.k = k;
  params.epsilon = epsilon;
  params.p = e / (e + Scalar(k - 1));
  params.q = Scalar(1) / (e + Scalar(k - 1));
  return params;
}

// Optimized unary encoding: p = 1/2, q = 1 / (e^eps + 1).
template <typename Scalar>
UeParams<Scalar> oue_params(Scalar epsilon) {
  detail::check_budget(epsilon);
  using std::exp;
  UeParams<Scalar> params;
  params.epsilon = epsilon;
  params.p = Scalar(1) / Scalar(2);
  params.q = Scalar(1) / (exp(epsilon) + Scalar(1));
  return params;
}

// Approximate variance of the GRR estimate at f = 0.
template <typename Scalar>
Scalar var_grr(Scalar epsilon, int k, std::int64_t n) {
  detail::check_budget(epsilon);
  using std::exp;
  const Scalar e = exp(epsilon);
  return (e + Scalar(k - 2)) / (Scalar(n) * (e - Scalar(1)) * (e - Scalar(1)));
}

// Approximate variance of the OUE estimate at f = 0; independent of k.
template <typename Scalar>
Scalar var_oue(Scalar epsilon, std::int64_t n) {
  detail::check_budget(epsilon);
  using std::exp;
  const Scalar e = exp(epsilon);
  return Scalar(4) * e / (Scalar(n) * (e - Scalar(1)) * (e - Scalar(1)));
}

// GRR iff k < 3e^eps + 2; the boundary goes to OUE.
Mechanism adp_choose(double epsilon, int k);

// Bias removal N_i -> (N_i - n q) / (n (p - q)). No clipping.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> estimate_pure(
    const Eigen::MatrixBase<Derived>& counts, typename Derived::Scalar n,
    typename Derived::Scalar p, typename Derived::Scalar q) {
  if (p == q) throw Error(ErrorCode::kDegenerateParams, "p == q");
  return ((counts.array() - n * q) / (n * (p - q))).matrix();
}

// Observed counts for one attribute: N_i per value (or per bit position) and
// the number n of reports they were collected from.
struct CountVector {
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;

  Eigen::VectorXd as_real() const;
  CountVector& operator+=(const CountVector& other);
};

Eigen::VectorXd estimate_pure(const CountVector& counts, double p, double q);

// Samplers. Every perturbation helper takes precomputed coins so hot loops
// do not recompute exponentials.
class GrrSampler {
 public:
  explicit GrrSampler(const GrrParams<double>& params);

  Value operator()(Value v, RandomSource& rng) const {
    if (rng.flip(keep_)) return v;
    const auto other = static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(k_ - 1)));
    return other >= v ? other + 1 : other;
  }

  int k() const { return k_; }

 private:
  int k_;
  Bernoulli keep_;
};

class UeSampler {
 public:
  explicit UeSampler(const UeParams<double>& params);

  // Perturbs a one-hot vector at `v` (or the all-zero vector when v < 0) into `out`.
  void perturb_one_hot(Value v, int k, RandomSource& rng, BitVector& out) const {
    out.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      out[static_cast<std::size_t>(i)] = rng.flip(i == v ? one_to_one_ : zero_to_one_);
    }
  }

  void perturb(const BitVector& in, RandomSource& rng, BitVector& out) const {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      out[i] = rng.flip(in[i] ? one_to_one_ : zero_to_one_);
    }
  }

 private:
  Bernoulli one_to_one_;
  Bernoulli zero_to_one_;
};

// Throws kValueOutOfRange.
Value grr_perturb(Value v, const GrrParams<double>& params, RandomSource& rng);

// One-hot vector of width k with bit v set. Throws kValueOutOfRange.
BitVector oue_encode(Value v, int k);

BitVector oue_perturb(const BitVector& bits, const UeParams<double>& params, RandomSource& rng);

}  // namespace rsfd

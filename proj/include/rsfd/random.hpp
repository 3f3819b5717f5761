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
#include <initializer_list>
#include <limits>
#include <span>

namespace rsfd {

// Precomputed acceptance threshold for a biased coin: a 64-bit draw x
// succeeds iff x < threshold (or always, when `always` is set).
struct Bernoulli {
  std::uint64_t threshold = 0;
  bool always = false;

  static Bernoulli with_probability(double p);
};

// Seeded xoshiro256** generator addressed by a key. A substream is obtained
// by folding a path of integers into the key; the state is a pure function
// of the key, so derive({a, b}) == derive({a}).derive({b}) and the number of
// draws already taken from the parent never matters.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  RandomSource derive(std::span<const std::uint64_t> path) const;
  RandomSource derive(std::initializer_list<std::uint64_t> path) const {
    return derive(std::span<const std::uint64_t>(path.begin(), path.size()));
  }

  std::uint64_t key() const { return key_; }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t uniform(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t floor = (0 - bound) % bound;
      while (low < floor) {
        m = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool flip(const Bernoulli& coin) { return coin.always || (*this)() < coin.threshold; }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  explicit RandomSource(std::uint64_t key, int /*tag*/) : key_(key) { reseed(); }

  void reseed();

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_{};
};

// Free-function form of RandomSource::derive. Throws kInvalidArgument on an empty path.
RandomSource derive_substream(const RandomSource& root, std::span<const std::uint64_t> path);

}  // namespace rsfd

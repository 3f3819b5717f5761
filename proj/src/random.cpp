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

#include "rsfd/random.hpp"

#include <cmath>

#include "rsfd/core.hpp"

namespace rsfd {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Bernoulli Bernoulli::with_probability(double p) {
  Bernoulli coin;
  if (!(p > 0.0)) return coin;
  if (p >= 1.0) {
    coin.always = true;
    return coin;
  }
  // p * 2^64, rounded to nearest; exact for dyadic p such as 1/2.
  const double scaled = std::ldexp(p, 64) + 0.5;
  if (scaled >= 0x1.0p64) {
    coin.always = true;
  } else {
    coin.threshold = static_cast<std::uint64_t>(scaled);
  }
  return coin;
}

RandomSource::RandomSource(std::uint64_t seed) : key_(mix64(seed + kGolden)) { reseed(); }

void RandomSource::reseed() {
  std::uint64_t x = key_;
  for (auto& word : state_) {
    x += kGolden;
    word = mix64(x);
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

RandomSource RandomSource::derive(std::span<const std::uint64_t> path) const {
  std::uint64_t key = key_;
  for (const std::uint64_t step : path) {
    key = mix64(key ^ mix64(step + 0x632be59bd9b4e019ULL)) + kGolden;
  }
  return RandomSource(key, 0);
}

RandomSource derive_substream(const RandomSource& root, std::span<const std::uint64_t> path) {
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "substream path must be non-empty");
  }
  return root.derive(path);
}

}  // namespace rsfd

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

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace rsfd {

// Per-attribute frequencies, one entry per domain value. Ground-truth tables
// are fully present; estimate tables may mark an attribute absent (an empty
// Smp group) and their entries are unconstrained.
struct FrequencyTable {
  std::vector<std::optional<Eigen::VectorXd>> attributes;

  int d() const { return static_cast<int>(attributes.size()); }
  bool present(int j) const { return attributes[static_cast<std::size_t>(j)].has_value(); }
  const Eigen::VectorXd& operator[](int j) const {
    return *attributes[static_cast<std::size_t>(j)];
  }
};

}  // namespace rsfd

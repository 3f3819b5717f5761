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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsfd/data.hpp"
#include "rsfd/frequency_table.hpp"
#include "rsfd/protocol.hpp"

namespace rsfd {

struct SyntheticSource {
  std::int64_t n = 0;
  std::vector<int> cardinalities;
};

struct CsvSource {
  std::filesystem::path path;
  CsvOptions options;
};

struct ExperimentConfig {
  std::variant<SyntheticSource, CsvSource> dataset;
  std::vector<Solution> solutions{kAllSolutions.begin(), kAllSolutions.end()};
  std::vector<double> epsilons;
  int runs = 1;
  std::uint64_t seed = 0;
  // Seed for synthetic generation; defaults to a fixed function of `seed`.
  std::optional<std::uint64_t> data_seed;
  int workers = 1;
  // When false, wall_time_s is written as 0 so result files are byte-reproducible.
  bool record_wall_time = true;
};

// Throws kInvalidArgument / kInvalidBudget.
void validate_config(const ExperimentConfig& config);

struct ExperimentResult {
  std::string dataset;
  std::string solution;
  double epsilon = 0;
  int run = 0;
  double mse_avg = 0;
  double wall_time_s = 0;
  std::uint64_t seed = 0;
  int absent_attributes = 0;  // Smp attributes with an empty group
};

// (1/d') sum_j (1/k_j) sum_i (f - f_hat)^2 over the d' attributes present in
// both tables. Throws kShapeMismatch.
double mse_avg(const FrequencyTable& truth, const FrequencyTable& estimate);

Dataset load_dataset(const ExperimentConfig& config);

// Results are ordered by (solution, epsilon, run) irrespective of `workers`.
// Substream of a user: seed -> (solution index, epsilon index, run, user).
std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config);
std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config,
                                             const Dataset& dataset);

inline constexpr std::string_view kResultsHeader =
    "dataset,solution,epsilon,run,mse_avg,wall_time_s,seed";
inline constexpr std::string_view kAggregateHeader =
    "dataset,solution,epsilon,mse_mean,mse_std,runs";

void write_results_csv(std::ostream& out, std::span<const ExperimentResult> results);
std::vector<ExperimentResult> read_results_csv(std::istream& in);

struct AggregateRow {
  std::string dataset;
  std::string solution;
  double epsilon = 0;
  double mse_mean = 0;
  double mse_std = 0;  // sample standard deviation; 0 for a single run
  int runs = 0;
};

// Arithmetic mean of per-run mse_avg per (dataset, solution, epsilon), in
// order of first appearance.
std::vector<AggregateRow> summarize(std::span<const ExperimentResult> results);
void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);

// "ln2..ln7" expands to ln 2, ln 3, ..., ln 7; "lnX" is ln X; other tokens
// are plain reals. Tokens are comma-separated.
std::vector<double> parse_epsilons(std::string_view text);

// "10x5" is five attributes of cardinality 10; terms join with '+', e.g. "10x2+20x2+7".
std::vector<int> parse_cardinalities(std::string_view text);

// 9 significant digits, as written to the results files.
std::string format_epsilon(double epsilon);

}  // namespace rsfd

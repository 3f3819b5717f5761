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

#include "rsfd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "rsfd/csv.hpp"
#include "rsfd/random.hpp"

namespace rsfd {
namespace {

constexpr std::uint64_t kDataSeedSalt = 0xd1b54a32d192ed03ULL;

std::string format(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

double parse_real(std::string_view token) {
  std::string s(token);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::kInvalidArgument, "not a number: '" + s + "'");
  }
  return value;
}

long parse_integer(std::string_view token) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kInvalidArgument, "not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_epsilon_token(std::string_view token) {
  if (token.starts_with("ln")) return std::log(parse_real(token.substr(2)));
  return parse_real(token);
}

struct Cell {
  std::size_t solution_slot;
  std::size_t epsilon_index;
  int run;
};

}  // namespace

std::string format_epsilon(double epsilon) { return format("%.9g", epsilon); }

void validate_config(const ExperimentConfig& config) {
  if (config.runs < 1) throw Error(ErrorCode::kInvalidArgument, "runs must be >= 1");
  if (config.workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
  if (config.solutions.empty()) throw Error(ErrorCode::kInvalidArgument, "no solutions selected");
  if (config.epsilons.empty()) throw Error(ErrorCode::kInvalidArgument, "no epsilons given");
  for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
    check_budget(config.epsilons[i]);
    if (i > 0 && !(config.epsilons[i] > config.epsilons[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "epsilons must be strictly increasing");
    }
  }
  if (const auto* synthetic = std::get_if<SyntheticSource>(&config.dataset)) {
    if (synthetic->n < 1) throw Error(ErrorCode::kInvalidArgument, "synthetic n must be >= 1");
    validate_schema(AttributeSchema::from_cardinalities(synthetic->cardinalities));
  }
}

double mse_avg(const FrequencyTable& truth, const FrequencyTable& estimate) {
  if (truth.d() != estimate.d()) {
    throw Error(ErrorCode::kShapeMismatch, "tables have " + std::to_string(truth.d()) + " and " +
                                               std::to_string(estimate.d()) + " attributes");
  }
  double total = 0;
  int present = 0;
  for (int j = 0; j < truth.d(); ++j) {
    if (!truth.present(j) || !estimate.present(j)) continue;
    if (truth[j].size() != estimate[j].size()) {
      throw Error(ErrorCode::kShapeMismatch, "attribute " + std::to_string(j) +
                                                 " has mismatched domain sizes");
    }
    total += (truth[j] - estimate[j]).squaredNorm() / static_cast<double>(truth[j].size());
    ++present;
  }
  if (present == 0) throw Error(ErrorCode::kShapeMismatch, "no attribute present in both tables");
  return total / present;
}

Dataset load_dataset(const ExperimentConfig& config) {
  if (const auto* synthetic = std::get_if<SyntheticSource>(&config.dataset)) {
    const auto schema = AttributeSchema::from_cardinalities(synthetic->cardinalities);
    return gen_uniform(synthetic->n, schema, config.data_seed.value_or(config.seed ^ kDataSeedSalt));
  }
  const auto& source = std::get<CsvSource>(config.dataset);
  return load_csv(source.path, source.options);
}

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  return run_experiment(config, load_dataset(config));
}

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config,
                                             const Dataset& dataset) {
  validate_config(config);
  validate_schema(dataset.schema);
  const FrequencyTable truth = true_frequencies(dataset);

  std::vector<Solution> solutions = config.solutions;
  std::sort(solutions.begin(), solutions.end());
  solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());

  std::vector<Cell> cells;
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
      for (int r = 0; r < config.runs; ++r) cells.push_back({s, e, r});
    }
  }

  const RandomSource root(config.seed);
  std::vector<ExperimentResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_cell = [&](const Cell& cell) {
    const Solution solution = solutions[cell.solution_slot];
    const double epsilon = config.epsilons[cell.epsilon_index];
    const auto started = std::chrono::steady_clock::now();

    const Protocol protocol(solution, dataset.schema, epsilon);
    const RandomSource cell_rng = root.derive({static_cast<std::uint64_t>(solution),
                                               static_cast<std::uint64_t>(cell.epsilon_index),
                                               static_cast<std::uint64_t>(cell.run)});
    ReportCounts counts = protocol.make_counts();
    ReportTuple report;
    for (std::int64_t u = 0; u < dataset.n(); ++u) {
      RandomSource rng = cell_rng.derive({static_cast<std::uint64_t>(u)});
      protocol.privatize(dataset.record(u), rng, report);
      counts.add(report);
    }
    const FrequencyTable estimate = protocol.estimate(counts);

    ExperimentResult result;
    result.dataset = dataset.id;
    result.solution = std::string(to_string(solution));
    result.epsilon = epsilon;
    result.run = cell.run;
    result.mse_avg = mse_avg(truth, estimate);
    result.seed = config.seed;
    for (int j = 0; j < estimate.d(); ++j) result.absent_attributes += !estimate.present(j);
    if (config.record_wall_time) {
      result.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    return result;
  };

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t index = next.fetch_add(1);
      if (index >= cells.size()) return;
      const Cell& cell = cells[index];
      try {
        results[index] = run_cell(cell);
      } catch (const std::exception& e) {
        const std::string where = "cell (" +
                                  std::string(to_string(solutions[cell.solution_slot])) +
                                  ", eps=" + format_epsilon(config.epsilons[cell.epsilon_index]) +
                                  ", run " + std::to_string(cell.run) + ") failed: " + e.what();
        const auto* error = dynamic_cast<const Error*>(&e);
        std::lock_guard lock(failure_mutex);
        if (!failed.exchange(true)) {
          failure = std::make_exception_ptr(
              Error(error ? error->code() : ErrorCode::kInvalidArgument, where));
        }
      }
    }
  };

  const int workers = std::min<int>(config.workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& result : results) {
    if (result.absent_attributes > 0) {
      std::clog << "[bench] " << result.solution << " eps=" << format_epsilon(result.epsilon)
                << " run " << result.run << ": " << result.absent_attributes
                << " attribute(s) with an empty group excluded from mse_avg\n";
    }
  }
  return results;
}

void write_results_csv(std::ostream& out, std::span<const ExperimentResult> results) {
  out << kResultsHeader << '\n';
  for (const auto& r : results) {
    out << csv::escape(r.dataset) << ',' << r.solution << ',' << format_epsilon(r.epsilon) << ','
        << r.run << ',' << format("%.17g", r.mse_avg) << ',' << format("%.6f", r.wall_time_s)
        << ',' << r.seed << '\n';
  }
}

std::vector<ExperimentResult> read_results_csv(std::istream& in) {
  std::size_t line = 0;
  const auto header = csv::read_record(in, &line);
  const auto expected = csv::split_line(kResultsHeader);
  if (!header || *header != expected) {
    throw Error(ErrorCode::kMalformedRow, "results header must be '" +
                                              std::string(kResultsHeader) + "'");
  }
  std::vector<ExperimentResult> results;
  while (auto fields = csv::read_record(in, &line)) {
    if (fields->size() == 1 && (*fields)[0].empty()) continue;
    if (fields->size() != expected.size()) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line) + ": expected " +
                                                std::to_string(expected.size()) + " columns");
    }
    try {
      ExperimentResult r;
      r.dataset = (*fields)[0];
      r.solution = (*fields)[1];
      r.epsilon = parse_real((*fields)[2]);
      r.run = static_cast<int>(parse_integer((*fields)[3]));
      r.mse_avg = parse_real((*fields)[4]);
      r.wall_time_s = parse_real((*fields)[5]);
      r.seed = std::stoull((*fields)[6]);
      results.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return results;
}

std::vector<AggregateRow> summarize(std::span<const ExperimentResult> results) {
  struct Group {
    AggregateRow row;
    std::vector<double> values;
  };
  std::vector<Group> groups;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  for (const auto& r : results) {
    const auto key = std::make_tuple(r.dataset, r.solution, format_epsilon(r.epsilon));
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      Group group;
      group.row.dataset = r.dataset;
      group.row.solution = r.solution;
      group.row.epsilon = r.epsilon;
      groups.push_back(std::move(group));
    }
    groups[it->second].values.push_back(r.mse_avg);
  }
  std::vector<AggregateRow> rows;
  for (auto& group : groups) {
    const auto& v = group.values;
    const auto count = static_cast<double>(v.size());
    double mean = 0;
    for (double x : v) mean += x;
    mean /= count;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    group.row.mse_mean = mean;
    group.row.mse_std = v.size() > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
    group.row.runs = static_cast<int>(v.size());
    rows.push_back(group.row);
  }
  return rows;
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << csv::escape(r.dataset) << ',' << r.solution << ',' << format_epsilon(r.epsilon) << ','
        << format("%.17g", r.mse_mean) << ',' << format("%.17g", r.mse_std) << ',' << r.runs
        << '\n';
  }
}

std::vector<double> parse_epsilons(std::string_view text) {
  std::vector<double> epsilons;
  for (const auto token : split(text, ',')) {
    const auto range = token.find("..");
    if (range != std::string_view::npos) {
      const auto lo = token.substr(0, range);
      const auto hi = token.substr(range + 2);
      if (!lo.starts_with("ln") || !hi.starts_with("ln")) {
        throw Error(ErrorCode::kInvalidArgument,
                    "range shorthand must look like lnA..lnB, got '" + std::string(token) + "'");
      }
      const long a = parse_integer(lo.substr(2));
      const long b = parse_integer(hi.substr(2));
      if (a > b) throw Error(ErrorCode::kInvalidArgument, "empty range '" + std::string(token) + "'");
      for (long x = a; x <= b; ++x) epsilons.push_back(std::log(static_cast<double>(x)));
    } else {
      epsilons.push_back(parse_epsilon_token(token));
    }
  }
  return epsilons;
}

std::vector<int> parse_cardinalities(std::string_view text) {
  std::vector<int> cardinalities;
  for (const auto term : split(text, '+')) {
    const auto times = term.find('x');
    const long value = parse_integer(term.substr(0, times));
    const long count = times == std::string_view::npos ? 1 : parse_integer(term.substr(times + 1));
    if (count < 1) throw Error(ErrorCode::kInvalidArgument, "repeat count must be >= 1");
    cardinalities.insert(cardinalities.end(), static_cast<std::size_t>(count),
                         static_cast<int>(value));
  }
  return cardinalities;
}

}  // namespace rsfd

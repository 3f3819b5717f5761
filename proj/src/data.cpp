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

#include "rsfd/data.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

#include "rsfd/csv.hpp"
#include "rsfd/random.hpp"

namespace rsfd {
namespace {

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset gen_uniform(std::int64_t n, const AttributeSchema& schema, std::uint64_t seed) {
  validate_schema(schema);
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "dataset needs n >= 1");
  const int d = schema.d();

  Dataset dataset;
  dataset.id = "synthetic_n" + std::to_string(n) + "_d" + std::to_string(d);
  dataset.schema = schema;
  dataset.records.resize(n, d);
  for (int j = 0; j < d; ++j) {
    std::vector<std::string> labels;
    for (int c = 0; c < schema.k(j); ++c) labels.push_back(std::to_string(c));
    dataset.value_dictionaries.push_back(std::move(labels));
  }

  const RandomSource root(seed);
  for (std::int64_t start = 0; start < n; start += kGenerationBlock) {
    auto rng = root.derive({static_cast<std::uint64_t>(start / kGenerationBlock)});
    const std::int64_t stop = std::min(n, start + kGenerationBlock);
    for (std::int64_t i = start; i < stop; ++i) {
      for (int j = 0; j < d; ++j) {
        dataset.records(i, j) = static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(schema.k(j))));
      }
    }
  }
  return dataset;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());

  std::size_t line = 0;
  auto header = csv::read_record(in, &line);
  if (!header) throw Error(ErrorCode::kMalformedRow, path.string() + " is empty");
  for (auto& name : *header) name = options.trim ? trimmed(name) : name;

  std::vector<std::size_t> selected;
  if (options.columns.empty()) {
    for (std::size_t c = 0; c < header->size(); ++c) selected.push_back(c);
  } else {
    for (const auto& wanted : options.columns) {
      const auto it = std::find(header->begin(), header->end(), wanted);
      if (it == header->end()) {
        throw Error(ErrorCode::kMalformedRow, "column '" + wanted + "' not in header of " +
                                                  path.string());
      }
      selected.push_back(static_cast<std::size_t>(it - header->begin()));
    }
  }

  std::vector<std::vector<std::string>> rows;
  std::int64_t dropped = 0;
  while (auto fields = csv::read_record(in, &line)) {
    if (fields->size() == 1 && trimmed((*fields)[0]).empty()) continue;  // blank line
    if (fields->size() != header->size()) {
      throw Error(ErrorCode::kMalformedRow,
                  path.string() + ":" + std::to_string(line) + ": expected " +
                      std::to_string(header->size()) + " columns, found " +
                      std::to_string(fields->size()));
    }
    bool keep = true;
    for (auto& cell : *fields) {
      if (options.trim) cell = trimmed(cell);
      if (cell.empty() || cell == options.missing_token) keep = false;
    }
    if (!keep) {
      ++dropped;
      continue;
    }
    std::vector<std::string> row;
    row.reserve(selected.size());
    for (auto c : selected) row.push_back(std::move((*fields)[c]));
    rows.push_back(std::move(row));
  }

  const auto d = static_cast<int>(selected.size());
  Dataset dataset;
  dataset.id = path.stem().string();
  dataset.dropped_rows = dropped;
  std::vector<std::unordered_map<std::string, Value>> codes(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    std::map<std::string, Value> sorted;
    for (const auto& row : rows) sorted.emplace(row[static_cast<std::size_t>(j)], 0);
    std::vector<std::string> labels;
    for (auto& [label, code] : sorted) {
      code = static_cast<Value>(labels.size());
      labels.push_back(label);
      codes[static_cast<std::size_t>(j)].emplace(label, code);
    }
    dataset.schema.names.push_back((*header)[selected[static_cast<std::size_t>(j)]]);
    dataset.schema.cardinalities.push_back(static_cast<int>(labels.size()));
    dataset.value_dictionaries.push_back(std::move(labels));
  }
  validate_schema(dataset.schema);

  dataset.records.resize(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      dataset.records(static_cast<Eigen::Index>(i), j) =
          codes[static_cast<std::size_t>(j)].at(rows[i][static_cast<std::size_t>(j)]);
    }
  }
  return dataset;
}

FrequencyTable true_frequencies(const Dataset& dataset) {
  const int d = dataset.schema.d();
  if (dataset.records.cols() != d) {
    throw Error(ErrorCode::kShapeMismatch, "records have " + std::to_string(dataset.records.cols()) +
                                               " columns for a schema of " + std::to_string(d));
  }
  if (dataset.n() == 0) throw Error(ErrorCode::kInvalidArgument, "dataset has no records");
  FrequencyTable table;
  table.attributes.resize(static_cast<std::size_t>(d));
  const auto n = static_cast<double>(dataset.n());
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(dataset.schema.k(j));
    for (Eigen::Index i = 0; i < dataset.records.rows(); ++i) {
      const Value v = dataset.records(i, j);
      if (v < 0 || v >= dataset.schema.k(j)) {
        throw Error(ErrorCode::kValueOutOfRange, "record " + std::to_string(i) + " attribute " +
                                                     std::to_string(j) + " holds " + std::to_string(v));
      }
      counts[v] += 1.0;
    }
    table.attributes[static_cast<std::size_t>(j)] = counts / n;
  }
  return table;
}

}  // namespace rsfd

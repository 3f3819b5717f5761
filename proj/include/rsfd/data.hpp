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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rsfd/core.hpp"
#include "rsfd/frequency_table.hpp"

namespace rsfd {

using RecordMatrix = Eigen::Matrix<Value, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A population of n users over a categorical schema. value_dictionaries[j][c]
// is the original label of code c in attribute j.
struct Dataset {
  std::string id;
  AttributeSchema schema;
  RecordMatrix records;
  std::vector<std::vector<std::string>> value_dictionaries;
  std::int64_t dropped_rows = 0;

  std::int64_t n() const { return records.rows(); }
  RecordView record(std::int64_t i) const {
    return {records.row(i).data(), static_cast<std::size_t>(records.cols())};
  }
};

// Every value i.i.d. uniform over its domain. Rows are generated in blocks of
// kGenerationBlock, each from substream [block index].
inline constexpr std::int64_t kGenerationBlock = 4096;
Dataset gen_uniform(std::int64_t n, const AttributeSchema& schema, std::uint64_t seed);

struct CsvOptions {
  // Rows holding this token in any column are dropped.
  std::string missing_token = "?";
  // Header names to keep, in output order; empty keeps every column.
  std::vector<std::string> columns;
  // Strip surrounding spaces/tabs from every cell.
  bool trim = true;
};

// All columns are categorical. Codes follow lexicographic order of the
// labels. Rows with an empty cell or the missing token are dropped and
// counted in Dataset::dropped_rows.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

FrequencyTable true_frequencies(const Dataset& dataset);

}  // namespace rsfd

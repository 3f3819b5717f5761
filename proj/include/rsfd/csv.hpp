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

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsfd::csv {

// Reads one logical CSV record. Double-quoted fields may contain commas,
// doubled quotes and line breaks. Returns std::nullopt at end of input.
std::optional<std::vector<std::string>> read_record(std::istream& in,
                                                    std::size_t* line_number = nullptr);

std::vector<std::string> split_line(std::string_view line);

// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

}  // namespace rsfd::csv

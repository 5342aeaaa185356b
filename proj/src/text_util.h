/*
 * Copyright 2026 The FairScope Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Internal text helpers shared by the file readers and writers.

#ifndef FAIRSCOPE_SRC_TEXT_UTIL_H_
#define FAIRSCOPE_SRC_TEXT_UTIL_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairscope::internal {

// Shortest decimal that parses back to exactly `value`.
std::string ShortestDouble(double value);

// Parses the whole of `text` as a double; nullopt on any leftover input.
std::optional<double> ParseDouble(std::string_view text);

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Blank lines are skipped. Throws FormatError on an unterminated
// quote.
std::vector<CsvRecord> ParseCsv(std::string_view text);

// Quotes the field only when it needs quoting.
std::string CsvEscape(std::string_view field);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace fairscope::internal

#endif  // FAIRSCOPE_SRC_TEXT_UTIL_H_

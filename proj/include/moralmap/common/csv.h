// Copyright 2026 The Moralmap Authors.
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

// Minimal delimited-text support (RFC 4180 quoting, one record per line).
//
// Records never span lines: a quoted field may contain the delimiter and
// doubled quotes, but not a newline. That keeps "line number" and "record"
// synonymous, which the reject reports rely on.

#ifndef MORALMAP_COMMON_CSV_H_
#define MORALMAP_COMMON_CSV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace moralmap {

// Reads a whole file into memory. Throws IoError when unreadable.
std::string ReadFile(const std::string& path);

// Writes `contents` to `path`, replacing it. Throws IoError on failure.
void WriteFile(const std::string& path, std::string_view contents);

// Splits text into lines, dropping '\r' before '\n'. A trailing newline does
// not produce an extra empty line.
std::vector<std::string_view> SplitLines(std::string_view text);

// Splits one record. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> SplitRecord(std::string_view line,
                                                    char delimiter = ',');

// Quotes a field when it contains the delimiter, a quote, or whitespace at
// either end.
std::string EscapeField(std::string_view field, char delimiter = ',');

std::string JoinRecord(const std::vector<std::string>& fields,
                       char delimiter = ',');

// A parsed table with a header row. Data rows keep their 1-based source line
// numbers (the header is line 1).
struct CsvTable {
  std::vector<std::string> header;
  struct Row {
    std::size_t line_no = 0;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;
  // Lines that failed to split or had the wrong cell count.
  std::vector<std::size_t> malformed_lines;

  // Index of `name` in the header, or nullopt.
  std::optional<std::size_t> Column(std::string_view name) const;
};

// Parses delimited text with a header. Blank lines are reported as malformed.
// Throws DataError when the header is missing.
CsvTable ParseCsv(std::string_view text, char delimiter = ',');

CsvTable ReadCsvFile(const std::string& path, char delimiter = ',');

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);

}  // namespace moralmap

#endif  // MORALMAP_COMMON_CSV_H_

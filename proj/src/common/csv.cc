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

#include "moralmap/common/csv.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "moralmap/common/error.h"

namespace moralmap {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading file: " + path);
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error while writing file: " + path);
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::optional<std::vector<std::string>> SplitRecord(std::string_view line,
                                                    char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  bool field_was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && !field_was_quoted && Trim(current).empty()) {
      current.clear();
      in_quotes = true;
      field_was_quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
      field_was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (in_quotes) return std::nullopt;
  fields.push_back(std::move(current));
  return fields;
}

std::string EscapeField(std::string_view field, char delimiter) {
  const bool needs_quotes =
      field.find(delimiter) != std::string_view::npos ||
      field.find('"') != std::string_view::npos ||
      (!field.empty() && (std::isspace(static_cast<unsigned char>(
                              field.front())) ||
                          std::isspace(static_cast<unsigned char>(
                              field.back()))));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string JoinRecord(const std::vector<std::string>& fields,
                       char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(delimiter);
    out += EscapeField(fields[i], delimiter);
  }
  return out;
}

std::optional<std::size_t> CsvTable::Column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable ParseCsv(std::string_view text, char delimiter) {
  // Skip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto lines = SplitLines(text);
  if (lines.empty()) throw DataError("missing header row");
  CsvTable table;
  auto header = SplitRecord(lines[0], delimiter);
  if (!header) throw DataError("malformed header row");
  for (auto& h : *header) table.header.emplace_back(Trim(h));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto cells = SplitRecord(lines[i], delimiter);
    if (Trim(lines[i]).empty() || !cells ||
        cells->size() != table.header.size()) {
      table.malformed_lines.push_back(line_no);
      continue;
    }
    table.rows.push_back({line_no, std::move(*cells)});
  }
  return table;
}

CsvTable ReadCsvFile(const std::string& path, char delimiter) {
  const std::string text = ReadFile(path);
  try {
    return ParseCsv(text, delimiter);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace moralmap

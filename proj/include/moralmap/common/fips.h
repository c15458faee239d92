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

#ifndef MORALMAP_COMMON_FIPS_H_
#define MORALMAP_COMMON_FIPS_H_

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace moralmap {

// 5-digit county FIPS code (2-digit state + 3-digit county).
class Fips {
 public:
  // Accepts 5 digits, or 4 digits (leading zero dropped by spreadsheet
  // tools) which are left-padded.
  static std::optional<Fips> Parse(std::string_view text);

  const std::string& str() const { return code_; }
  std::string_view state_prefix() const {
    return std::string_view(code_).substr(0, 2);
  }

  auto operator<=>(const Fips&) const = default;

 private:
  explicit Fips(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

// USPS abbreviation for a 2-digit state FIPS prefix ("17" -> "IL").
std::optional<std::string_view> StateAbbrevForPrefix(std::string_view prefix);
std::optional<std::string_view> StatePrefixForAbbrev(std::string_view abbrev);
bool IsValidStateAbbrev(std::string_view abbrev);

}  // namespace moralmap

template <>
struct std::hash<moralmap::Fips> {
  std::size_t operator()(const moralmap::Fips& f) const noexcept {
    return std::hash<std::string>{}(f.str());
  }
};

#endif  // MORALMAP_COMMON_FIPS_H_

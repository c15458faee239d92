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

#include "moralmap/common/fips.h"

#include <array>
#include <cctype>
#include <utility>

#include "moralmap/common/csv.h"

namespace moralmap {
namespace {

struct StateCode {
  std::string_view prefix;
  std::string_view abbrev;
};

constexpr std::array<StateCode, 52> kStates = {{
    {"01", "AL"}, {"02", "AK"}, {"04", "AZ"}, {"05", "AR"}, {"06", "CA"},
    {"08", "CO"}, {"09", "CT"}, {"10", "DE"}, {"11", "DC"}, {"12", "FL"},
    {"13", "GA"}, {"15", "HI"}, {"16", "ID"}, {"17", "IL"}, {"18", "IN"},
    {"19", "IA"}, {"20", "KS"}, {"21", "KY"}, {"22", "LA"}, {"23", "ME"},
    {"24", "MD"}, {"25", "MA"}, {"26", "MI"}, {"27", "MN"}, {"28", "MS"},
    {"29", "MO"}, {"30", "MT"}, {"31", "NE"}, {"32", "NV"}, {"33", "NH"},
    {"34", "NJ"}, {"35", "NM"}, {"36", "NY"}, {"37", "NC"}, {"38", "ND"},
    {"39", "OH"}, {"40", "OK"}, {"41", "OR"}, {"42", "PA"}, {"44", "RI"},
    {"45", "SC"}, {"46", "SD"}, {"47", "TN"}, {"48", "TX"}, {"49", "UT"},
    {"50", "VT"}, {"51", "VA"}, {"53", "WA"}, {"54", "WV"}, {"55", "WI"},
    {"56", "WY"}, {"72", "PR"},
}};

}  // namespace

std::optional<Fips> Fips::Parse(std::string_view text) {
  text = Trim(text);
  if (text.size() != 4 && text.size() != 5) return std::nullopt;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  std::string code(text);
  if (code.size() == 4) code.insert(code.begin(), '0');
  return Fips(std::move(code));
}

std::optional<std::string_view> StateAbbrevForPrefix(std::string_view prefix) {
  for (const auto& s : kStates) {
    if (s.prefix == prefix) return s.abbrev;
  }
  return std::nullopt;
}

std::optional<std::string_view> StatePrefixForAbbrev(std::string_view abbrev) {
  for (const auto& s : kStates) {
    if (s.abbrev == abbrev) return s.prefix;
  }
  return std::nullopt;
}

bool IsValidStateAbbrev(std::string_view abbrev) {
  return StatePrefixForAbbrev(abbrev).has_value();
}

}  // namespace moralmap

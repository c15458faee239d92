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

#ifndef MORALMAP_COMMON_DATES_H_
#define MORALMAP_COMMON_DATES_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace moralmap {

using Date = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

// "YYYY-MM-DD"; rejects impossible calendar dates.
std::optional<Date> ParseDate(std::string_view text);
std::string FormatDate(Date date);

// Accepts "YYYY-MM-DDTHH:MM:SS[.fraction][Z|±HH:MM]", the same with a space
// instead of 'T', a bare date (midnight UTC), or integer epoch seconds.
// Fractional seconds are truncated.
std::optional<Timestamp> ParseTimestamp(std::string_view text);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatTimestamp(Timestamp ts);

inline Date DateOf(Timestamp ts) {
  return std::chrono::floor<std::chrono::days>(ts);
}

// Inclusive range of whole days.
struct DateRange {
  Date from;
  Date to;

  bool valid() const { return from <= to; }
  std::int64_t days() const { return (to - from).count() + 1; }
  bool Contains(Date d) const { return from <= d && d <= to; }
  bool operator==(const DateRange&) const = default;
};

}  // namespace moralmap

#endif  // MORALMAP_COMMON_DATES_H_

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

#include "moralmap/common/dates.h"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "moralmap/common/csv.h"

namespace moralmap {
namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;

bool ReadDigits(std::string_view text, std::size_t pos, std::size_t count,
                int* out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    value = value * 10 + (text[i] - '0');
  }
  *out = value;
  return true;
}

std::optional<Date> ParseDatePrefix(std::string_view text) {
  int y, m, d;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!ReadDigits(text, 0, 4, &y) || !ReadDigits(text, 5, 2, &m) ||
      !ReadDigits(text, 8, 2, &d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{
      std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
      std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

}  // namespace

std::optional<Date> ParseDate(std::string_view text) {
  text = Trim(text);
  if (text.size() != 10) return std::nullopt;
  return ParseDatePrefix(text);
}

std::string FormatDate(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<Timestamp> ParseTimestamp(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;

  bool all_digits = true;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
  }
  if (all_digits) {
    std::int64_t epoch = 0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), epoch);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      return std::nullopt;
    }
    return Timestamp{seconds{epoch}};
  }

  auto date = ParseDatePrefix(text);
  if (!date) return std::nullopt;
  if (text.size() == 10) return Timestamp{*date};
  if (text[10] != 'T' && text[10] != ' ') return std::nullopt;

  int hh, mm, ss;
  if (!ReadDigits(text, 11, 2, &hh) || text.size() < 19 || text[13] != ':' ||
      !ReadDigits(text, 14, 2, &mm) || text[16] != ':' ||
      !ReadDigits(text, 17, 2, &ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == digits_start) return std::nullopt;
  }

  seconds offset{0};
  if (pos < text.size()) {
    const char zone = text[pos];
    if (zone == 'Z' && pos + 1 == text.size()) {
      // UTC.
    } else if ((zone == '+' || zone == '-') && pos + 6 == text.size() &&
               text[pos + 3] == ':') {
      int oh, om;
      if (!ReadDigits(text, pos + 1, 2, &oh) ||
          !ReadDigits(text, pos + 4, 2, &om) || oh > 23 || om > 59) {
        return std::nullopt;
      }
      offset = hours{oh} + minutes{om};
      if (zone == '-') offset = -offset;
    } else {
      return std::nullopt;
    }
  }
  return Timestamp{*date} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

std::string FormatTimestamp(Timestamp ts) {
  const Date date = DateOf(ts);
  const auto secs = (ts - date).count();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%sT%02lld:%02lld:%02lldZ",
                FormatDate(date).c_str(), static_cast<long long>(secs / 3600),
                static_cast<long long>((secs / 60) % 60),
                static_cast<long long>(secs % 60));
  return buf;
}

}  // namespace moralmap

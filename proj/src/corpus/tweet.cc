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

#include "moralmap/corpus/tweet.h"

#include <cctype>

#include "moralmap/common/csv.h"

namespace moralmap {

std::string_view StanceName(Stance s) {
  switch (s) {
    case Stance::kPro:
      return "pro";
    case Stance::kAnti:
      return "anti";
    case Stance::kUnknown:
      break;
  }
  return "unknown";
}

std::optional<Stance> ParseStance(std::string_view text) {
  const std::string s = ToLower(Trim(text));
  if (s == "pro" || s == "support" || s == "for" || s == "pro-sah") {
    return Stance::kPro;
  }
  if (s == "anti" || s == "against" || s == "con" || s == "anti-sah") {
    return Stance::kAnti;
  }
  if (s.empty() || s == "unknown" || s == "none" || s == "neutral") {
    return Stance::kUnknown;
  }
  return std::nullopt;
}

std::string NormalizeHashtag(std::string_view tag) {
  tag = Trim(tag);
  while (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);
  return ToLower(tag);
}

std::vector<std::string> ExtractHashtags(std::string_view text) {
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '#') continue;
    std::size_t j = i + 1;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) ||
            text[j] == '_')) {
      ++j;
    }
    if (j > i + 1) tags.push_back(ToLower(text.substr(i + 1, j - i - 1)));
    i = j - 1;
  }
  return tags;
}

}  // namespace moralmap

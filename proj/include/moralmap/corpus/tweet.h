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

#ifndef MORALMAP_CORPUS_TWEET_H_
#define MORALMAP_CORPUS_TWEET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moralmap/common/dates.h"
#include "moralmap/corpus/taxonomy.h"

namespace moralmap {

// Position on the stay-at-home orders. Unknown is excluded from stance
// shares.
enum class Stance : std::uint8_t { kPro = 0, kAnti, kUnknown };

std::string_view StanceName(Stance s);  // "pro", "anti", "unknown"
// Accepts pro/support/for, anti/against, unknown/none/empty.
std::optional<Stance> ParseStance(std::string_view text);

struct AnnotatedTweet {
  std::string id;
  Timestamp timestamp;
  double latitude = 0.0;
  double longitude = 0.0;
  MoralFrame frame = MoralFrame::kCare;
  Stance stance = Stance::kUnknown;
  double sentiment = 0.0;  // [-1, 1]
  bool vivid = false;
  double virality = 0.0;  // >= 0
  std::optional<std::string> text;
  std::vector<std::string> hashtags;  // lowercase, without '#'

  bool operator==(const AnnotatedTweet&) const = default;
};

// Lowercases and strips a leading '#'.
std::string NormalizeHashtag(std::string_view tag);

// Extracts "#word" tokens from free text.
std::vector<std::string> ExtractHashtags(std::string_view text);

}  // namespace moralmap

#endif  // MORALMAP_CORPUS_TWEET_H_

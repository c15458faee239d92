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

// Conjunctive tweet filter and its text grammar.
//
// Grammar (whitespace around tokens is ignored):
//
//   filter := "" | clause (";" clause)*
//   clause := key "=" value ("," value)*
//   key    := "frame" | "stance" | "state" | "fips" | "from" | "to"
//
// Set-valued keys (frame, stance, state, fips) match any listed value;
// "from"/"to" take one YYYY-MM-DD date each and bound the tweet date
// inclusively. A key may appear at most once.

#ifndef MORALMAP_ANALYTICS_FILTER_H_
#define MORALMAP_ANALYTICS_FILTER_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moralmap/common/dates.h"
#include "moralmap/common/fips.h"
#include "moralmap/corpus/taxonomy.h"
#include "moralmap/corpus/tweet.h"
#include "moralmap/geo/geotag.h"

namespace moralmap {

struct TweetFilter {
  std::optional<std::set<MoralFrame>> frames;
  std::optional<std::set<Stance>> stances;
  std::optional<Date> from;
  std::optional<Date> to;
  std::optional<std::set<std::string>> states;
  std::optional<std::set<Fips>> fips;

  bool empty() const {
    return !frames && !stances && !from && !to && !states && !fips;
  }
  bool Matches(const TaggedTweet& t) const;
  // Only the geographic clauses (state, fips).
  bool MatchesRegion(const Fips& county, std::string_view state) const;

  bool operator==(const TweetFilter&) const = default;
};

// Order-preserving subset.
std::vector<TaggedTweet> FilterTweets(std::span<const TaggedTweet> tweets,
                                      const TweetFilter& filter);

// Throws ValidationError with a message naming the offending clause.
TweetFilter ParseFilter(std::string_view text, const Taxonomy& taxonomy);

// Canonical text form (keys in grammar order, values sorted); parses back to
// an equal filter.
std::string FormatFilter(const TweetFilter& filter, const Taxonomy& taxonomy);

}  // namespace moralmap

#endif  // MORALMAP_ANALYTICS_FILTER_H_

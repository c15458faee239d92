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

#ifndef MORALMAP_ANALYTICS_TIMELINE_H_
#define MORALMAP_ANALYTICS_TIMELINE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moralmap/analytics/filter.h"
#include "moralmap/context/context.h"
#include "moralmap/geo/geotag.h"

namespace moralmap {

struct TimelineBin {
  Date bin_start;
  int width_days = 1;  // the last bin may be shorter than the requested width
  std::array<std::int64_t, kNumFrames> frame_counts{};
  std::int64_t pro_count = 0;
  std::int64_t anti_count = 0;
  std::optional<double> mean_sentiment;  // absent in an empty bin
  double total_virality = 0.0;
  // Sum of daily deltas over the region; absent without COVID data.
  std::optional<std::int64_t> new_cases;
  std::optional<std::int64_t> new_deaths;

  std::int64_t total() const;
  bool operator==(const TimelineBin&) const = default;
};

// Bins tweets matching `filter` into consecutive windows of `width_days`.
//
// The binned range is the filter's from/to when given; otherwise the hull of
// `default_range` (if any) and the matching tweets' dates. Open ends of a
// half-specified filter range take the same fallback. With no tweets and no
// range the result is empty.
//
// COVID deltas are summed over contexts whose county passes the filter's
// region clauses. When no context carries a series the covid fields stay
// absent. Throws ValidationError for width < 1 or an inverted range.
std::vector<TimelineBin> BinTimeline(std::span<const TaggedTweet> tweets,
                                     std::span<const CountyContext> contexts,
                                     int width_days, const TweetFilter& filter,
                                     std::optional<DateRange> default_range);

// Delimited export: bin_start,width,<12 frame names>,pro,anti,
// mean_sentiment,total_virality[,new_cases,new_deaths].
std::string FormatTimeline(std::span<const TimelineBin> bins,
                           const Taxonomy& taxonomy, bool with_covid);

}  // namespace moralmap

#endif  // MORALMAP_ANALYTICS_TIMELINE_H_

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

#ifndef MORALMAP_ANALYTICS_SUMMARY_H_
#define MORALMAP_ANALYTICS_SUMMARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moralmap/analytics/filter.h"

namespace moralmap {

struct FrameSummary {
  MoralFrame frame = MoralFrame::kCare;
  std::int64_t count = 0;
  // Absent when undefined (no tweets, or no Pro/Anti tweets for pro_share).
  std::optional<double> pro_share;
  std::optional<double> mean_sentiment;
  std::optional<double> vivid_share;
  std::optional<double> mean_virality;

  bool operator==(const FrameSummary&) const = default;
};

// Always 12 rows in frame order, zero-count frames included.
std::vector<FrameSummary> SummarizeFrames(std::span<const TaggedTweet> tweets,
                                          const TweetFilter& filter);

std::string FormatSummary(std::span<const FrameSummary> rows,
                          const Taxonomy& taxonomy);

}  // namespace moralmap

#endif  // MORALMAP_ANALYTICS_SUMMARY_H_

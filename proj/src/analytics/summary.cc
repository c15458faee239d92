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

#include "moralmap/analytics/summary.h"

#include <array>

#include "moralmap/common/numbers.h"

namespace moralmap {

std::vector<FrameSummary> SummarizeFrames(std::span<const TaggedTweet> tweets,
                                          const TweetFilter& filter) {
  struct Tally {
    std::int64_t n = 0, pro = 0, anti = 0, vivid = 0;
    double sentiment = 0.0, virality = 0.0;
  };
  std::array<Tally, kNumFrames> tallies{};
  for (const auto& t : tweets) {
    if (!filter.Matches(t)) continue;
    Tally& tally = tallies[Index(t.tweet.frame)];
    ++tally.n;
    if (t.tweet.stance == Stance::kPro) ++tally.pro;
    if (t.tweet.stance == Stance::kAnti) ++tally.anti;
    if (t.tweet.vivid) ++tally.vivid;
    tally.sentiment += t.tweet.sentiment;
    tally.virality += t.tweet.virality;
  }
  std::vector<FrameSummary> rows;
  rows.reserve(kNumFrames);
  for (int f = 0; f < kNumFrames; ++f) {
    const Tally& tally = tallies[f];
    FrameSummary row{FrameAt(f), tally.n, {}, {}, {}, {}};
    if (tally.n > 0) {
      const double n = static_cast<double>(tally.n);
      row.mean_sentiment = tally.sentiment / n;
      row.vivid_share = static_cast<double>(tally.vivid) / n;
      row.mean_virality = tally.virality / n;
    }
    if (tally.pro + tally.anti > 0) {
      row.pro_share = static_cast<double>(tally.pro) /
                      static_cast<double>(tally.pro + tally.anti);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string FormatSummary(std::span<const FrameSummary> rows,
                          const Taxonomy& taxonomy) {
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatSignificant(*v, 6) : std::string();
  };
  std::string out =
      "frame,foundation,polarity,count,pro_share,mean_sentiment,vivid_share,"
      "mean_virality\n";
  for (const auto& r : rows) {
    out += taxonomy.Name(r.frame) + "," +
           std::string(FoundationName(FoundationOf(r.frame))) + "," +
           std::string(PolarityName(PolarityOf(r.frame))) + "," +
           std::to_string(r.count) + "," + opt(r.pro_share) + "," +
           opt(r.mean_sentiment) + "," + opt(r.vivid_share) + "," +
           opt(r.mean_virality) + "\n";
  }
  return out;
}

}  // namespace moralmap

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

#include "moralmap/analytics/timeline.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"

namespace moralmap {

std::int64_t TimelineBin::total() const {
  return std::accumulate(frame_counts.begin(), frame_counts.end(),
                         std::int64_t{0});
}

std::vector<TimelineBin> BinTimeline(std::span<const TaggedTweet> tweets,
                                     std::span<const CountyContext> contexts,
                                     int width_days, const TweetFilter& filter,
                                     std::optional<DateRange> default_range) {
  if (width_days < 1) throw ValidationError("timeline width must be >= 1 day");
  if (filter.from && filter.to && *filter.from > *filter.to) {
    throw ValidationError("timeline date range is inverted");
  }
  if (default_range && !default_range->valid()) {
    throw ValidationError("timeline date range is inverted");
  }

  std::vector<const TaggedTweet*> matching;
  std::optional<DateRange> hull = default_range;
  for (const auto& t : tweets) {
    if (!filter.Matches(t)) continue;
    matching.push_back(&t);
    const Date d = DateOf(t.tweet.timestamp);
    if (!hull) {
      hull = DateRange{d, d};
    } else {
      hull->from = std::min(hull->from, d);
      hull->to = std::max(hull->to, d);
    }
  }
  if (!filter.from && !filter.to && !hull) return {};
  // Matching tweets all lie within the filter bounds, so a fallback end only
  // needs clamping against the filter's own end.
  Date from = filter.from ? *filter.from : (hull ? hull->from : *filter.to);
  Date to = filter.to ? *filter.to : (hull ? hull->to : *filter.from);
  if (!filter.from) from = std::min(from, to);
  if (!filter.to) to = std::max(from, to);

  const DateRange range{from, to};
  const std::int64_t n_days = range.days();
  const std::int64_t n_bins = (n_days + width_days - 1) / width_days;

  const bool with_covid =
      std::any_of(contexts.begin(), contexts.end(),
                  [](const CountyContext& c) { return c.covid.has_value(); });

  std::vector<TimelineBin> bins(static_cast<std::size_t>(n_bins));
  for (std::int64_t b = 0; b < n_bins; ++b) {
    auto& bin = bins[b];
    bin.bin_start = range.from + std::chrono::days{b * width_days};
    bin.width_days =
        static_cast<int>(std::min<std::int64_t>(width_days, n_days - b * width_days));
    if (with_covid) {
      bin.new_cases = 0;
      bin.new_deaths = 0;
    }
  }

  std::vector<double> sentiment_sum(bins.size(), 0.0);
  for (const TaggedTweet* t : matching) {
    const auto offset = (DateOf(t->tweet.timestamp) - range.from).count();
    auto& bin = bins[static_cast<std::size_t>(offset / width_days)];
    ++bin.frame_counts[Index(t->tweet.frame)];
    if (t->tweet.stance == Stance::kPro) ++bin.pro_count;
    if (t->tweet.stance == Stance::kAnti) ++bin.anti_count;
    sentiment_sum[offset / width_days] += t->tweet.sentiment;
    bin.total_virality += t->tweet.virality;
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    const auto n = bins[b].total();
    if (n > 0) bins[b].mean_sentiment = sentiment_sum[b] / static_cast<double>(n);
  }

  if (with_covid) {
    // Region clauses need each county's state; contexts carry fips only, so
    // the state comes from the fips prefix.
    for (const auto& c : contexts) {
      if (!c.covid) continue;
      const auto abbrev = StateAbbrevForPrefix(c.fips.state_prefix());
      if (!filter.MatchesRegion(c.fips, abbrev ? *abbrev : std::string_view{})) {
        continue;
      }
      const CovidSeries& s = *c.covid;
      for (std::size_t i = 0; i < s.days(); ++i) {
        const Date day = s.start_date + std::chrono::days{static_cast<int>(i)};
        if (!range.Contains(day)) continue;
        const auto offset = (day - range.from).count();
        auto& bin = bins[static_cast<std::size_t>(offset / width_days)];
        *bin.new_cases += s.NewCases(i);
        *bin.new_deaths += s.NewDeaths(i);
      }
    }
  }
  return bins;
}

std::string FormatTimeline(std::span<const TimelineBin> bins,
                           const Taxonomy& taxonomy, bool with_covid) {
  std::string out = "bin_start,width";
  for (int f = 0; f < kNumFrames; ++f) out += "," + taxonomy.Name(FrameAt(f));
  out += ",pro,anti,mean_sentiment,total_virality";
  if (with_covid) out += ",new_cases,new_deaths";
  out.push_back('\n');
  for (const auto& bin : bins) {
    out += FormatDate(bin.bin_start) + "," + std::to_string(bin.width_days);
    for (auto c : bin.frame_counts) out += "," + std::to_string(c);
    out += "," + std::to_string(bin.pro_count) + "," +
           std::to_string(bin.anti_count) + ",";
    if (bin.mean_sentiment) out += FormatDouble(*bin.mean_sentiment);
    out += "," + FormatDouble(bin.total_virality);
    if (with_covid) {
      out += "," + std::to_string(bin.new_cases.value_or(0)) + "," +
             std::to_string(bin.new_deaths.value_or(0));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace moralmap

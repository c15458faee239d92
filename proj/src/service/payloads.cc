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

#include "moralmap/service/payloads.h"

#include <algorithm>

#include "moralmap/common/error.h"
#include "moralmap/geo/geometry.h"
#include "moralmap/version.h"

namespace moralmap {
namespace {

using nlohmann::json;

json Nullable(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json RangeToJson(const std::optional<DateRange>& r) {
  if (!r) return nullptr;
  return {{"from", FormatDate(r->from)}, {"to", FormatDate(r->to)}, {"days", r->days()}};
}

// Aggregation of the filtered corpus; the precomputed one when unfiltered.
struct Aggregated {
  std::shared_ptr<const CountyAggregation> agg;
  std::shared_ptr<const CountyTable> table;
};

Aggregated Aggregate(const Snapshot& s, const TweetFilter& filter) {
  if (filter.empty()) {
    return {std::shared_ptr<const CountyAggregation>(std::shared_ptr<void>(), &s.aggregation),
            std::shared_ptr<const CountyTable>(std::shared_ptr<void>(), &s.table)};
  }
  const auto subset = FilterTweets(s.data.tweets, filter);
  auto agg = std::make_shared<CountyAggregation>(AggregateCounties(subset, s.data.contexts));
  auto table = std::make_shared<CountyTable>(CountyTable::Build(s.data.contexts, agg->vectors));
  return {agg, table};
}

}  // namespace

json SummaryToJson(std::span<const FrameSummary> rows, const Taxonomy& taxonomy) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"frame", taxonomy.Name(r.frame)},
                   {"foundation", FoundationName(FoundationOf(r.frame))},
                   {"polarity", PolarityName(PolarityOf(r.frame))},
                   {"count", r.count},
                   {"pro_share", Nullable(r.pro_share)},
                   {"mean_sentiment", Nullable(r.mean_sentiment)},
                   {"vivid_share", Nullable(r.vivid_share)},
                   {"mean_virality", Nullable(r.mean_virality)}});
  }
  return out;
}

json TimelineToJson(std::span<const TimelineBin> bins, const Taxonomy& taxonomy,
                    bool with_covid) {
  json out = json::array();
  for (const auto& b : bins) {
    json counts = json::object();
    for (int f = 0; f < kNumFrames; ++f) counts[taxonomy.Name(FrameAt(f))] = b.frame_counts[f];
    json bin = {{"bin_start", FormatDate(b.bin_start)},
                {"width_days", b.width_days},
                {"total", b.total()},
                {"frame_counts", counts},
                {"pro_count", b.pro_count},
                {"anti_count", b.anti_count},
                {"mean_sentiment", Nullable(b.mean_sentiment)},
                {"total_virality", b.total_virality}};
    if (with_covid) {
      bin["new_cases"] = b.new_cases ? json(*b.new_cases) : json(nullptr);
      bin["new_deaths"] = b.new_deaths ? json(*b.new_deaths) : json(nullptr);
    }
    out.push_back(std::move(bin));
  }
  return out;
}

json TweetToJson(const TaggedTweet& t, const Taxonomy& taxonomy) {
  return {{"id", t.tweet.id},
          {"timestamp", FormatTimestamp(t.tweet.timestamp)},
          {"lat", t.tweet.latitude},
          {"lon", t.tweet.longitude},
          {"frame", taxonomy.Name(t.tweet.frame)},
          {"stance", StanceName(t.tweet.stance)},
          {"sentiment", t.tweet.sentiment},
          {"vivid", t.tweet.vivid},
          {"virality", t.tweet.virality},
          {"hashtags", t.tweet.hashtags},
          {"text", t.tweet.text ? json(*t.tweet.text) : json(nullptr)},
          {"fips", t.fips.str()},
          {"state", t.state}};
}

json FeatureVectorToJson(const CountyFeatureVector& v) {
  json values = json::object();
  for (int i = 0; i < kNumFeatures; ++i) {
    values[std::string(FeatureCode(FeatureAt(i)))] = v.values[i];
  }
  return {{"fips", v.fips.str()}, {"n_tweets", v.n_tweets}, {"features", values}};
}

json MapRecordsToJson(std::span<const MapRecord> records) {
  json out = json::array();
  for (const auto& r : records) {
    int dominant = 0;
    for (int k = 1; k < kNumFoundations; ++k) {
      if (r.vector[FoundationShareFeature(FoundationAt(k))] >
          r.vector[FoundationShareFeature(FoundationAt(dominant))]) {
        dominant = k;
      }
    }
    out.push_back({{"fips", r.fips.str()},
                   {"name", r.name},
                   {"state", r.state},
                   {"n_tweets", r.n_tweets},
                   {"value", r.value},
                   {"demographic_value", Nullable(r.demographic_value)},
                   {"glyph",
                    {{"pro_share", r.vector[Feature::kProShare]},
                     {"mean_sentiment", r.vector[Feature::kMeanSentiment]},
                     {"vivid_share", r.vector[Feature::kVividShare]},
                     {"virtue_share", r.vector[Feature::kVirtueShare]},
                     {"dominant_foundation", FoundationName(FoundationAt(dominant))}}}});
  }
  return out;
}

json MetaData(const Snapshot& s) {
  const Dataset& d = s.data;
  json features = json::array();
  for (int i = 0; i < kNumFeatures; ++i) {
    features.push_back({{"code", FeatureCode(FeatureAt(i))}, {"name", FeatureName(FeatureAt(i))}});
  }
  json demographics = json::array();
  for (const auto& f : s.table.field_names()) {
    if (!ParseFeature(f)) demographics.push_back(f);
  }
  std::int64_t stance[3] = {0, 0, 0};
  for (const auto& t : d.tweets) ++stance[static_cast<int>(t.tweet.stance)];
  return {{"tool_version", kVersion},
          {"n_tweets", d.tweets.size()},
          {"n_counties", d.counties.size()},
          {"n_contexts", d.contexts.size()},
          {"n_feature_counties", s.aggregation.vectors.size()},
          {"n_null_counties", s.aggregation.null_counties.size()},
          {"n_coverage_gaps", d.coverage.size()},
          {"stance_counts", {{"pro", stance[0]}, {"anti", stance[1]}, {"unknown", stance[2]}}},
          {"date_range", RangeToJson(s.tweet_range)},
          {"study_window", RangeToJson(d.study_window)},
          {"bin_width_days", d.bin_width_days},
          {"has_covid", d.has_covid},
          {"has_mask", d.has_mask},
          {"features", features},
          {"demographics", demographics},
          {"fields", s.table.field_names()},
          {"filter_keys", {"frame", "stance", "from", "to", "state", "fips"}},
          {"taxonomy", d.taxonomy.ToJson()}};
}

json SummaryData(const Snapshot& s, const TweetFilter& filter) {
  return SummaryToJson(SummarizeFrames(s.data.tweets, filter), s.data.taxonomy);
}

json TimelineData(const Snapshot& s, int width_days, const TweetFilter& filter) {
  if (width_days < 1) throw ValidationError("width must be a positive number of days");
  if (width_days == s.data.bin_width_days && filter.empty()) {
    return TimelineToJson(s.default_timeline, s.data.taxonomy, s.data.has_covid);
  }
  return TimelineToJson(
      BinTimeline(s.data.tweets, s.data.contexts, width_days, filter, s.data.study_window),
      s.data.taxonomy, s.data.has_covid);
}

std::vector<MapRecord> MapRecords(const Snapshot& s, Feature feature,
                                  const std::string& demographic, const TweetFilter& filter) {
  const auto resolved = s.table.Resolve(demographic);
  if (!resolved) {
    throw InferenceError(InferenceError::Code::kUnknownField,
                         "unknown field '" + demographic + "'", demographic);
  }
  const Aggregated a = Aggregate(s, filter);
  const auto& column = a.table->column(*resolved);
  const auto& table_fips = a.table->fips();
  std::vector<MapRecord> out;
  out.reserve(a.agg->vectors.size());
  for (const auto& [fips, v] : a.agg->vectors) {
    MapRecord r{fips, {}, {}, v.n_tweets, v[feature], std::nullopt, v};
    auto g = s.geometry_index.find(fips);
    if (g != s.geometry_index.end()) {
      r.name = s.data.counties[g->second].name;
      r.state = s.data.counties[g->second].state;
    }
    auto row = std::lower_bound(table_fips.begin(), table_fips.end(), fips);
    if (row != table_fips.end() && *row == fips) {
      r.demographic_value = column[static_cast<std::size_t>(row - table_fips.begin())];
    }
    out.push_back(std::move(r));
  }
  return out;
}

json MapData(const Snapshot& s, Feature feature, const std::string& demographic,
             const TweetFilter& filter) {
  const auto records = MapRecords(s, feature, demographic, filter);
  return {{"feature", FeatureCode(feature)},
          {"demographic", *s.table.Resolve(demographic)},
          {"records", MapRecordsToJson(records)}};
}

json TweetsData(const Snapshot& s, const TweetFilter& filter, std::size_t limit,
                std::size_t offset) {
  if (limit > kMaxPageSize) {
    throw ValidationError("limit must be at most " + std::to_string(kMaxPageSize));
  }
  json page = json::array();
  std::size_t total = 0;
  for (std::size_t idx : s.tweet_order) {
    const TaggedTweet& t = s.data.tweets[idx];
    if (!filter.Matches(t)) continue;
    if (total >= offset && page.size() < limit) page.push_back(TweetToJson(t, s.data.taxonomy));
    ++total;
  }
  return {{"total", total}, {"offset", offset}, {"limit", limit}, {"tweets", page}};
}

json CountiesData(const Snapshot& s) { return CountiesToGeoJson(s.data.counties, 6); }

ModelFit InferenceFit(const Snapshot& s, const ModelSpec& spec, const TweetFilter& filter) {
  const Aggregated a = Aggregate(s, filter);
  return RunInference(spec, *a.table);
}

json InferenceData(const Snapshot& s, const ModelSpec& spec, const TweetFilter& filter,
                   bool full_precision) {
  return {{"spec", spec.ToJson()},
          {"fit", ModelFitToJson(InferenceFit(s, spec, filter), full_precision)}};
}

CorrelationResult CorrelationFit(const Snapshot& s, const std::string& x, const std::string& y,
                                 const TweetFilter& filter) {
  const Aggregated a = Aggregate(s, filter);
  return CorrelateFields(*a.table, x, y);
}

json CorrelationData(const Snapshot& s, const std::string& x, const std::string& y,
                     const TweetFilter& filter, bool full_precision) {
  return {{"x", x},
          {"y", y},
          {"result", CorrelationToJson(CorrelationFit(s, x, y, filter), full_precision)}};
}

json Envelope(const Snapshot& s, const TweetFilter& filter, json data) {
  return {{"version", s.version},
          {"filter", FormatFilter(filter, s.data.taxonomy)},
          {"data", std::move(data)}};
}

}  // namespace moralmap

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

// JSON encodings of analytics and inference results, shared by the HTTP
// service and `moralmap stats --json`.

#ifndef MORALMAP_SERVICE_PAYLOADS_H_
#define MORALMAP_SERVICE_PAYLOADS_H_

#include <cstddef>
#include <span>
#include <string>

#include "json.hpp"
#include "moralmap/analytics/features.h"
#include "moralmap/analytics/filter.h"
#include "moralmap/analytics/summary.h"
#include "moralmap/analytics/timeline.h"
#include "moralmap/inference/model.h"
#include "moralmap/service/snapshot.h"

namespace moralmap {

inline constexpr std::size_t kMaxPageSize = 1000;
inline constexpr std::size_t kDefaultPageSize = 100;

// Serializers. Absent optionals encode as null.
nlohmann::json SummaryToJson(std::span<const FrameSummary> rows, const Taxonomy& taxonomy);
nlohmann::json TimelineToJson(std::span<const TimelineBin> bins, const Taxonomy& taxonomy,
                              bool with_covid);
nlohmann::json TweetToJson(const TaggedTweet& t, const Taxonomy& taxonomy);
nlohmann::json FeatureVectorToJson(const CountyFeatureVector& v);

struct MapRecord {
  Fips fips;
  std::string name;
  std::string state;
  std::int64_t n_tweets = 0;
  double value = 0.0;
  std::optional<double> demographic_value;
  CountyFeatureVector vector;
};
nlohmann::json MapRecordsToJson(std::span<const MapRecord> records);

// Query evaluation over a snapshot. Each returns the "data" member of the
// matching endpoint's response. Errors propagate as moralmap::Error.
nlohmann::json MetaData(const Snapshot& s);
nlohmann::json SummaryData(const Snapshot& s, const TweetFilter& filter);
nlohmann::json TimelineData(const Snapshot& s, int width_days, const TweetFilter& filter);
std::vector<MapRecord> MapRecords(const Snapshot& s, Feature feature,
                                  const std::string& demographic, const TweetFilter& filter);
nlohmann::json MapData(const Snapshot& s, Feature feature, const std::string& demographic,
                       const TweetFilter& filter);
nlohmann::json TweetsData(const Snapshot& s, const TweetFilter& filter, std::size_t limit,
                          std::size_t offset);
nlohmann::json CountiesData(const Snapshot& s);
ModelFit InferenceFit(const Snapshot& s, const ModelSpec& spec, const TweetFilter& filter);
nlohmann::json InferenceData(const Snapshot& s, const ModelSpec& spec,
                             const TweetFilter& filter, bool full_precision = false);
CorrelationResult CorrelationFit(const Snapshot& s, const std::string& x, const std::string& y,
                                 const TweetFilter& filter);
nlohmann::json CorrelationData(const Snapshot& s, const std::string& x, const std::string& y,
                               const TweetFilter& filter, bool full_precision = false);

// Wraps `data` with the snapshot version and the canonical filter text.
nlohmann::json Envelope(const Snapshot& s, const TweetFilter& filter, nlohmann::json data);

}  // namespace moralmap

#endif  // MORALMAP_SERVICE_PAYLOADS_H_

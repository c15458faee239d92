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

// Per-county aggregate tweet features.
//
//   f1  log_count          ln(1 + n)
//   f2  per_capita         n / population * 100000
//   f3  pro_share          pro / (pro + anti); 0.5 with no stance evidence
//   f4  mean_sentiment     mean sentiment in [-1, 1]
//   f5  vivid_share        share of vivid tweets
//   f6  log_mean_virality  ln(1 + mean virality)
//   f7  virtue_share       share of virtue-polarity frames
//   f8  frame_entropy      Shannon entropy over the 12 frames / ln 12
//   f9..f14                foundation shares, Care..Liberty
//
// Counties without tweets have no vector (null), never a zero vector.

#ifndef MORALMAP_ANALYTICS_FEATURES_H_
#define MORALMAP_ANALYTICS_FEATURES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moralmap/context/context.h"
#include "moralmap/geo/geotag.h"

namespace moralmap {

inline constexpr int kNumFeatures = 14;

enum class Feature : std::uint8_t {
  kLogCount = 0,
  kPerCapita,
  kProShare,
  kMeanSentiment,
  kVividShare,
  kLogMeanVirality,
  kVirtueShare,
  kFrameEntropy,
  kCareShare,
  kFairnessShare,
  kLoyaltyShare,
  kAuthorityShare,
  kPurityShare,
  kLibertyShare,
};

constexpr int Index(Feature f) { return static_cast<int>(f); }
constexpr Feature FeatureAt(int i) { return static_cast<Feature>(i); }
constexpr Feature FoundationShareFeature(Foundation f) {
  return FeatureAt(Index(Feature::kCareShare) + Index(f));
}

std::string_view FeatureCode(Feature f);  // "f1".."f14"
std::string_view FeatureName(Feature f);  // "log_count", ...
// Accepts the code or the name.
std::optional<Feature> ParseFeature(std::string_view text);

struct CountyFeatureVector {
  Fips fips;
  std::int64_t n_tweets = 0;
  std::array<double, kNumFeatures> values{};

  double operator[](Feature f) const { return values[Index(f)]; }
  bool operator==(const CountyFeatureVector&) const = default;
};

// Feature vector from one county's tweets; nullopt when there are none.
// The result does not depend on tweet order.
std::optional<CountyFeatureVector> ComputeFeatureVector(
    const Fips& fips, std::span<const AnnotatedTweet* const> tweets,
    std::int64_t population);

struct CountyAggregation {
  std::map<Fips, CountyFeatureVector> vectors;
  // Context counties with zero tweets.
  std::vector<Fips> null_counties;
  // Tweet counties absent from the context table, with their tweet counts.
  std::vector<std::pair<Fips, std::int64_t>> missing_context;
};

CountyAggregation AggregateCounties(std::span<const TaggedTweet> tweets,
                                    std::span<const CountyContext> contexts);

// Header `fips,f1,...,f14` then one row per vector in FIPS order.
std::string FormatFeatureTable(const std::map<Fips, CountyFeatureVector>& vectors);

}  // namespace moralmap

#endif  // MORALMAP_ANALYTICS_FEATURES_H_

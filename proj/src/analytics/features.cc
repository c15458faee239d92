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

#include "moralmap/analytics/features.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "moralmap/common/numbers.h"

namespace moralmap {
namespace {

constexpr std::array<std::string_view, kNumFeatures> kCodes = {
    "f1", "f2",  "f3",  "f4",  "f5",  "f6",  "f7",
    "f8", "f9", "f10", "f11", "f12", "f13", "f14"};

constexpr std::array<std::string_view, kNumFeatures> kNames = {
    "log_count",       "per_capita",     "pro_share",
    "mean_sentiment",  "vivid_share",    "log_mean_virality",
    "virtue_share",    "frame_entropy",  "care_share",
    "fairness_share",  "loyalty_share",  "authority_share",
    "purity_share",    "liberty_share"};

// Sum in ascending order so the result is independent of input order.
double OrderIndependentSum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

std::string_view FeatureCode(Feature f) { return kCodes[Index(f)]; }
std::string_view FeatureName(Feature f) { return kNames[Index(f)]; }

std::optional<Feature> ParseFeature(std::string_view text) {
  for (int i = 0; i < kNumFeatures; ++i) {
    if (kCodes[i] == text || kNames[i] == text) return FeatureAt(i);
  }
  return std::nullopt;
}

std::optional<CountyFeatureVector> ComputeFeatureVector(
    const Fips& fips, std::span<const AnnotatedTweet* const> tweets,
    std::int64_t population) {
  if (tweets.empty()) return std::nullopt;
  std::array<std::int64_t, kNumFrames> frame_counts{};
  std::int64_t pro = 0, anti = 0, vivid = 0, virtue = 0;
  std::vector<double> sentiments, viralities;
  sentiments.reserve(tweets.size());
  viralities.reserve(tweets.size());
  for (const AnnotatedTweet* t : tweets) {
    ++frame_counts[Index(t->frame)];
    if (t->stance == Stance::kPro) ++pro;
    if (t->stance == Stance::kAnti) ++anti;
    if (t->vivid) ++vivid;
    if (PolarityOf(t->frame) == Polarity::kVirtue) ++virtue;
    sentiments.push_back(t->sentiment);
    viralities.push_back(t->virality);
  }
  const auto n = static_cast<std::int64_t>(tweets.size());
  const double dn = static_cast<double>(n);

  CountyFeatureVector v{fips, n, {}};
  auto set = [&](Feature f, double value) { v.values[Index(f)] = value; };
  set(Feature::kLogCount, std::log1p(dn));
  set(Feature::kPerCapita,
      population > 0 ? dn / static_cast<double>(population) * 100000.0 : 0.0);
  set(Feature::kProShare,
      pro + anti > 0 ? static_cast<double>(pro) / static_cast<double>(pro + anti)
                     : 0.5);
  set(Feature::kMeanSentiment, OrderIndependentSum(sentiments) / dn);
  set(Feature::kVividShare, static_cast<double>(vivid) / dn);
  set(Feature::kLogMeanVirality, std::log1p(OrderIndependentSum(viralities) / dn));
  set(Feature::kVirtueShare, static_cast<double>(virtue) / dn);

  double entropy = 0.0;
  for (auto c : frame_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / dn;
    entropy -= p * std::log(p);
  }
  set(Feature::kFrameEntropy,
      std::clamp(entropy / std::log(static_cast<double>(kNumFrames)), 0.0, 1.0));

  for (int f = 0; f < kNumFoundations; ++f) {
    const auto count = frame_counts[2 * f] + frame_counts[2 * f + 1];
    set(FoundationShareFeature(FoundationAt(f)), static_cast<double>(count) / dn);
  }
  return v;
}

CountyAggregation AggregateCounties(std::span<const TaggedTweet> tweets,
                                    std::span<const CountyContext> contexts) {
  std::map<Fips, std::vector<const AnnotatedTweet*>> by_county;
  for (const auto& t : tweets) by_county[t.fips].push_back(&t.tweet);

  std::unordered_map<Fips, const CountyContext*> context_by_fips;
  for (const auto& c : contexts) context_by_fips.emplace(c.fips, &c);

  CountyAggregation out;
  for (const auto& [fips, list] : by_county) {
    auto ctx = context_by_fips.find(fips);
    if (ctx == context_by_fips.end()) {
      out.missing_context.emplace_back(fips,
                                       static_cast<std::int64_t>(list.size()));
      continue;
    }
    auto v = ComputeFeatureVector(fips, list, ctx->second->population);
    out.vectors.emplace(fips, std::move(*v));
  }
  for (const auto& c : contexts) {
    if (!by_county.count(c.fips)) out.null_counties.push_back(c.fips);
  }
  std::sort(out.null_counties.begin(), out.null_counties.end());
  return out;
}

std::string FormatFeatureTable(
    const std::map<Fips, CountyFeatureVector>& vectors) {
  std::string out = "fips,n_tweets";
  for (auto code : kCodes) {
    out.push_back(',');
    out += code;
  }
  out.push_back('\n');
  for (const auto& [fips, v] : vectors) {
    out += fips.str() + "," + std::to_string(v.n_tweets);
    for (double x : v.values) {
      out.push_back(',');
      out += FormatDouble(x);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace moralmap

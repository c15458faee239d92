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

// Built dataset directory: the tables written by `build` and read back by
// `serve`, `stats` and `export`.

#ifndef MORALMAP_PIPELINE_DATASET_H_
#define MORALMAP_PIPELINE_DATASET_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/common/dates.h"
#include "moralmap/context/context.h"
#include "moralmap/corpus/taxonomy.h"
#include "moralmap/geo/geometry.h"
#include "moralmap/geo/geotag.h"

namespace moralmap {

inline constexpr int kDatasetFormatVersion = 1;

namespace artifact {
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kTaggedCorpus = "tagged_corpus.csv";
inline constexpr const char* kRejects = "rejects.tsv";
inline constexpr const char* kUnassigned = "unassigned.txt";
inline constexpr const char* kCountyCounts = "county_counts.csv";
inline constexpr const char* kFeatures = "county_features.csv";
inline constexpr const char* kContext = "context.csv";
inline constexpr const char* kContextRejects = "context_rejects.tsv";
inline constexpr const char* kCovid = "covid.csv";
inline constexpr const char* kCoverage = "coverage.csv";
inline constexpr const char* kTimeline = "timeline.csv";
inline constexpr const char* kSummary = "summary.csv";
inline constexpr const char* kCounties = "counties.geojson";
inline constexpr const char* kTaxonomy = "taxonomy.json";
}  // namespace artifact

struct Dataset {
  Taxonomy taxonomy = Taxonomy::Default();
  std::vector<TaggedTweet> tweets;
  std::vector<CountyGeometry> counties;  // simplified for transport
  std::vector<CountyContext> contexts;   // sorted by fips
  std::vector<CoverageEntry> coverage;
  std::vector<std::string> demographic_columns;
  int bin_width_days = 1;
  std::optional<DateRange> study_window;
  bool has_covid = false;
  bool has_mask = false;
  nlohmann::json manifest;
};

// Reads and cross-checks a built directory. Throws DataError when an
// artifact is missing, fails its manifest checksum or contradicts another
// (tweet county without geometry, or without context and coverage entry).
Dataset LoadDataset(const std::string& dir);

// id,timestamp,lat,lon,frame,stance,sentiment,vivid,virality,hashtags,text,
// fips,state
std::string FormatTaggedCorpus(std::span<const TaggedTweet> tweets,
                               const Taxonomy& taxonomy);
// fips,population,dem_share,rep_share,vote_margin,mask_use,<demographics>;
// absent values are empty cells.
std::string FormatContextTable(std::span<const CountyContext> contexts,
                               const std::vector<std::string>& demographics);
// Cleaned cumulative series, fips,date,cases,deaths.
std::string FormatCovidTable(std::span<const CountyContext> contexts);

}  // namespace moralmap

#endif  // MORALMAP_PIPELINE_DATASET_H_

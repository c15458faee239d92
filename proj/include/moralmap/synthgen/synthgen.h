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

// Deterministic synthetic corpus and county context with planted effects.
//
// A generated dataset is a directory of the files the loaders consume
// (boundaries.geojson, census.csv, elections.csv, mask.csv, covid.csv,
// corpus.csv), a lexicon, a pipeline config and ground_truth.json.

#ifndef MORALMAP_SYNTHGEN_SYNTHGEN_H_
#define MORALMAP_SYNTHGEN_SYNTHGEN_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/analytics/features.h"
#include "moralmap/common/dates.h"
#include "moralmap/common/fips.h"
#include "moralmap/corpus/taxonomy.h"

namespace moralmap {

// Adds slope * (value - mean value) to the county's expected feature.
// Variables: vote_margin, dem_share, rep_share, mask_use. Features: f3, f4,
// f5, f7 and the foundation shares f9..f14.
struct PlantedEffect {
  std::string variable;
  Feature feature = Feature::kMeanSentiment;
  double slope = 0.0;
  bool operator==(const PlantedEffect&) const = default;
};

// Jittered grid of polygonal counties tiling a lon/lat box. Neighbouring
// counties share vertices exactly. Consecutive cells form state blocks that
// use real state FIPS prefixes.
struct UniverseSpec {
  int columns = 25;
  int rows = 20;
  // Keeps only the first `count` cells when > 0.
  int count = 0;
  double min_lon = -124.0;
  double max_lon = -67.0;
  double min_lat = 25.0;
  double max_lat = 49.0;
  // Vertex displacement as a fraction of the cell size, at most 0.12.
  double jitter = 0.1;
  // Extra counties with the Alaska prefix, placed in a separate box and
  // left out of the election file.
  int alaska_counties = 0;
  bool operator==(const UniverseSpec&) const = default;
};

struct SynthSpec {
  std::uint64_t seed = 1;
  std::size_t n_tweets = 10000;
  DateRange date_range{Date{std::chrono::year{2020} / 3 / 1},
                       Date{std::chrono::year{2020} / 6 / 30}};
  std::array<double, kNumFrames> frame_weights{};
  std::array<double, kNumFrames> pro_probability{};
  std::array<double, kNumFrames> sentiment_mean{};
  std::array<double, kNumFrames> sentiment_spread{};
  double unknown_stance_probability = 0.05;
  double vivid_probability = 0.3;
  double virality_mean = 20.0;
  std::vector<PlantedEffect> planted_effects;
  UniverseSpec universe;
  double population_log_mean = 10.3;
  double population_log_sd = 1.2;
  // Tweet allocation weight is population ^ exponent.
  double population_exponent = 1.0;
  bool covid = true;
  // Without a stance column the stance is only recoverable from hashtags
  // through the emitted lexicon.
  bool emit_stance = true;

  // Care dominant, Harm second, sentiment rising with vote_margin (slope
  // 0.8), Care share rising with mask_use and Liberty share with rep_share.
  static SynthSpec Default();
  // Keys not present keep their Default() value. Throws ValidationError.
  static SynthSpec FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
  // Throws ValidationError: negative or all-zero weights, probabilities
  // outside [0,1], unsupported effects, empty universe, inverted range.
  void Validate() const;
};

struct GroundTruth {
  std::uint64_t seed = 0;
  std::size_t n_counties = 0;
  std::vector<PlantedEffect> planted_effects;
  // Tweet id -> generating county, in corpus order.
  std::vector<std::pair<std::string, Fips>> tweet_counties;

  nlohmann::json ToJson() const;
  static GroundTruth FromJson(const nlohmann::json& j);
};

struct SynthDataset {
  // File name -> contents, including ground_truth.json and config.json.
  std::map<std::string, std::string> files;
  GroundTruth truth;
};

// Pure function of the spec. Throws ValidationError on an invalid spec.
SynthDataset Generate(const SynthSpec& spec);
// Generates and writes every file into `dir` (created when missing).
GroundTruth GenerateToDirectory(const SynthSpec& spec, const std::string& dir);

}  // namespace moralmap

#endif  // MORALMAP_SYNTHGEN_SYNTHGEN_H_

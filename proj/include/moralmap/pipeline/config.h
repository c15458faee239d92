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

// Pipeline configuration file (JSON; // and /* */ comments allowed).
//
//   {
//     "paths": {"corpus", "boundaries", "census", "elections",
//               "mask", "covid", "taxonomy", "output_dir"},
//     "corpus_schema": {...}, "boundary_schema": {...},
//     "census_schema": {...}, "election_schema": {...},
//     "mask_schema": {...}, "covid_schema": {...},
//     "exclusions": ["AK"],
//     "study_window": {"from": "YYYY-MM-DD", "to": "YYYY-MM-DD"},
//     "taxonomy": {...}, "stance_lexicon": {"pro": [...], "anti": [...]},
//     "bin_width_days": 1, "mask_weights": [0, 0.25, 0.5, 0.75, 1],
//     "simplify_tolerance": 0.001, "workers": 1,
//     "serve": {"host": "127.0.0.1", "port": 8080}
//   }
//
// Relative paths resolve against the directory holding the config file.
// mask, covid and taxonomy are optional.

#ifndef MORALMAP_PIPELINE_CONFIG_H_
#define MORALMAP_PIPELINE_CONFIG_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/common/dates.h"
#include "moralmap/context/context.h"
#include "moralmap/corpus/corpus_parser.h"
#include "moralmap/corpus/stance.h"
#include "moralmap/corpus/taxonomy.h"
#include "moralmap/geo/geometry.h"

namespace moralmap {

struct PipelinePaths {
  std::string corpus;
  std::string boundaries;
  std::string census;
  std::string elections;
  std::string mask;      // empty when absent
  std::string covid;     // empty when absent
  std::string taxonomy;  // empty when absent
  std::string output_dir;
};

struct PipelineConfig {
  // Paths exactly as written in the file, and resolved against base_dir.
  PipelinePaths declared;
  PipelinePaths paths;
  std::string base_dir;

  CorpusSchema corpus_schema = CorpusSchema::Default();
  BoundarySchema boundary_schema;
  CensusSchema census_schema;
  ElectionSchema election_schema;
  MaskSchema mask_schema;
  CovidSchema covid_schema;
  std::set<std::string> exclusions;
  std::optional<DateRange> study_window;
  std::optional<nlohmann::json> taxonomy_inline;
  StanceLexicon lexicon;
  int bin_width_days = 1;
  std::vector<double> mask_weights;  // empty: linear default
  double simplify_tolerance = 0.001;
  int workers = 1;
  std::string host = "127.0.0.1";
  int port = 8080;

  // Inline taxonomy, then the taxonomy file, then the default.
  Taxonomy LoadTaxonomy() const;
  std::vector<double> EffectiveMaskWeights() const;
};

// Throws IoError when unreadable and ValidationError when malformed.
PipelineConfig ParseConfig(const nlohmann::json& j, const std::string& base_dir);
PipelineConfig LoadConfig(const std::string& path);

// Every problem found: missing files, unknown columns, bad exclusions and
// out-of-range settings. Empty when the config is usable.
std::vector<std::string> ValidateConfig(const PipelineConfig& config);

}  // namespace moralmap

#endif  // MORALMAP_PIPELINE_CONFIG_H_

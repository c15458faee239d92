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

#ifndef MORALMAP_PIPELINE_BUILD_H_
#define MORALMAP_PIPELINE_BUILD_H_

#include <string>

#include "json.hpp"
#include "moralmap/pipeline/config.h"

namespace moralmap {

struct BuildReport {
  std::string output_dir;
  nlohmann::json manifest;
};

// Runs ingest, geotagging, context join and aggregation, then writes every
// artifact and the manifest into config.paths.output_dir. Output bytes are a
// function of the input bytes and settings only. Throws ValidationError when
// the config does not validate, and propagates loader errors with the
// offending file named.
BuildReport BuildDataset(const PipelineConfig& config);

}  // namespace moralmap

#endif  // MORALMAP_PIPELINE_BUILD_H_

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

#ifndef MORALMAP_GEO_GEOTAG_H_
#define MORALMAP_GEO_GEOTAG_H_

#include <span>
#include <string>
#include <vector>

#include "moralmap/corpus/tweet.h"
#include "moralmap/geo/geometry.h"
#include "moralmap/geo/spatial_index.h"

namespace moralmap {

struct TaggedTweet {
  AnnotatedTweet tweet;
  Fips fips;
  std::string state;
};

struct GeotagResult {
  std::vector<TaggedTweet> tagged;  // input order
  std::vector<std::string> unassigned_ids;
  std::size_t unassigned() const { return unassigned_ids.size(); }
};

// Assigns every tweet to its containing county. `workers` > 1 splits the
// work; output order does not depend on it.
GeotagResult GeotagCorpus(std::span<const AnnotatedTweet> tweets,
                          const SpatialIndex& index,
                          std::span<const CountyGeometry> counties,
                          int workers = 1);

// `fips,count` rows sorted by FIPS, header included, counties with zero
// tweets listed with 0.
std::string FormatAssignmentCounts(std::span<const TaggedTweet> tagged,
                                   std::span<const CountyGeometry> counties);

}  // namespace moralmap

#endif  // MORALMAP_GEO_GEOTAG_H_

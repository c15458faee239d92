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

#ifndef MORALMAP_GEO_SPATIAL_INDEX_H_
#define MORALMAP_GEO_SPATIAL_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "moralmap/common/fips.h"
#include "moralmap/geo/geometry.h"

namespace moralmap {

// Axis-aligned bounding-box tree over county bboxes. Immutable after Build
// and safe for concurrent queries.
class SpatialIndex {
 public:
  static constexpr std::size_t kLeafSize = 16;

  // Throws DataError on an empty county set.
  static SpatialIndex Build(std::span<const CountyGeometry> counties);

  // Indices (into the span given to Build) of every county whose bbox
  // contains the point, ascending.
  std::vector<std::size_t> Candidates(double lon, double lat) const;

  std::size_t size() const { return boxes_.size(); }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    BBox box;
    // Leaf: [first, first + count) in order_. Inner: children left/right.
    std::uint32_t first = 0;
    std::uint32_t count = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  std::int32_t BuildNode(std::size_t begin, std::size_t end);

  std::vector<BBox> boxes_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

// FIPS of the county whose polygon contains (lat, lon); on shared boundaries
// the lowest FIPS among containing counties wins. `counties` must be the
// same sequence the index was built from.
std::optional<Fips> AssignCounty(const SpatialIndex& index,
                                 std::span<const CountyGeometry> counties,
                                 double lat, double lon);

}  // namespace moralmap

#endif  // MORALMAP_GEO_SPATIAL_INDEX_H_

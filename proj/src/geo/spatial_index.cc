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

#include "moralmap/geo/spatial_index.h"

#include <algorithm>
#include <numeric>

#include "moralmap/common/error.h"

namespace moralmap {

SpatialIndex SpatialIndex::Build(std::span<const CountyGeometry> counties) {
  if (counties.empty()) throw DataError("cannot index an empty county set");
  SpatialIndex index;
  index.boxes_.reserve(counties.size());
  for (const auto& c : counties) index.boxes_.push_back(c.bbox);
  index.order_.resize(counties.size());
  std::iota(index.order_.begin(), index.order_.end(), 0u);
  index.nodes_.reserve(2 * counties.size() / kLeafSize + 2);
  index.BuildNode(0, counties.size());
  return index;
}

std::int32_t SpatialIndex::BuildNode(std::size_t begin, std::size_t end) {
  Node node;
  for (std::size_t i = begin; i < end; ++i) node.box.Expand(boxes_[order_[i]]);
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) {
    nodes_[id].first = static_cast<std::uint32_t>(begin);
    nodes_[id].count = static_cast<std::uint32_t>(end - begin);
    return id;
  }
  // Median split on the wider axis of the bbox centers.
  BBox centers;
  for (std::size_t i = begin; i < end; ++i) {
    const BBox& b = boxes_[order_[i]];
    centers.Expand(LonLat{(b.min_lon + b.max_lon) / 2, (b.min_lat + b.max_lat) / 2});
  }
  const bool split_lon =
      centers.max_lon - centers.min_lon >= centers.max_lat - centers.min_lat;
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const BBox& ba = boxes_[a];
                     const BBox& bb = boxes_[b];
                     const double ca = split_lon ? ba.min_lon + ba.max_lon
                                                 : ba.min_lat + ba.max_lat;
                     const double cb = split_lon ? bb.min_lon + bb.max_lon
                                                 : bb.min_lat + bb.max_lat;
                     return ca < cb || (ca == cb && a < b);
                   });
  const std::int32_t left = BuildNode(begin, mid);
  const std::int32_t right = BuildNode(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<std::size_t> SpatialIndex::Candidates(double lon,
                                                  double lat) const {
  std::vector<std::size_t> out;
  if (nodes_.empty()) return out;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (!node.box.Contains(lon, lat)) continue;
    if (node.left < 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        if (boxes_[order_[i]].Contains(lon, lat)) out.push_back(order_[i]);
      }
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Fips> AssignCounty(const SpatialIndex& index,
                                 std::span<const CountyGeometry> counties,
                                 double lat, double lon) {
  std::optional<Fips> best;
  for (std::size_t i : index.Candidates(lon, lat)) {
    const CountyGeometry& county = counties[i];
    if (best && *best < county.fips) continue;
    if (CountyContains(county, lon, lat)) best = county.fips;
  }
  return best;
}

}  // namespace moralmap

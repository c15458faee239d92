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

// County boundary geometry in planar lon/lat coordinates.

#ifndef MORALMAP_GEO_GEOMETRY_H_
#define MORALMAP_GEO_GEOMETRY_H_

#include <limits>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/common/fips.h"

namespace moralmap {

struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
  bool operator==(const LonLat&) const = default;
};

// Closed: front() == back().
using Ring = std::vector<LonLat>;

struct Polygon {
  Ring outer;
  std::vector<Ring> holes;
};

struct BBox {
  double min_lon = std::numeric_limits<double>::infinity();
  double min_lat = std::numeric_limits<double>::infinity();
  double max_lon = -std::numeric_limits<double>::infinity();
  double max_lat = -std::numeric_limits<double>::infinity();

  bool empty() const { return min_lon > max_lon; }
  bool Contains(double lon, double lat) const {
    return lon >= min_lon && lon <= max_lon && lat >= min_lat &&
           lat <= max_lat;
  }
  void Expand(const LonLat& p);
  void Expand(const BBox& other);
};

struct CountyGeometry {
  Fips fips;
  std::string name;
  std::string state;  // USPS abbreviation
  std::vector<Polygon> polygons;
  BBox bbox;
};

// Even-odd crossing test with half-open edges. Points exactly on an edge are
// resolved consistently for edges shared between adjacent rings.
bool RingContains(const Ring& ring, double lon, double lat);

// Inside the outer ring and not inside any hole.
bool PolygonContains(const Polygon& polygon, double lon, double lat);

bool CountyContains(const CountyGeometry& county, double lon, double lat);

BBox ComputeBBox(const std::vector<Polygon>& polygons);

// Property names read from each feature.
struct BoundarySchema {
  std::string fips_property = "fips";
  std::string name_property = "name";
  // When the property is absent, the state is derived from the FIPS prefix.
  std::string state_property = "state";
};

// Parses a GeoJSON FeatureCollection of Polygon/MultiPolygon features.
// Features whose state is in `exclusions` are skipped. Result is sorted by
// FIPS. Throws DataError naming the feature index for a missing FIPS
// property, unclosed or degenerate ring, duplicate FIPS, or an empty result.
std::vector<CountyGeometry> ParseCounties(const nlohmann::json& collection,
                                          const BoundarySchema& schema,
                                          const std::set<std::string>& exclusions);

std::vector<CountyGeometry> LoadCounties(const std::string& path,
                                         const BoundarySchema& schema,
                                         const std::set<std::string>& exclusions);

// Douglas-Peucker decimation of every ring. Rings that would drop below four
// vertices are kept unchanged.
CountyGeometry Simplify(const CountyGeometry& county, double tolerance);

// FeatureCollection with {fips, name, state} properties, readable back by
// ParseCounties with the default schema. Coordinates rounded to `digits`
// decimal places when digits >= 0.
nlohmann::json CountiesToGeoJson(const std::vector<CountyGeometry>& counties,
                                 int digits = -1);

}  // namespace moralmap

#endif  // MORALMAP_GEO_GEOMETRY_H_

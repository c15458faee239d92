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

#include "moralmap/geo/geometry.h"

#include <algorithm>
#include <cmath>

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"

namespace moralmap {
namespace {

std::string FeatureLabel(std::size_t index) {
  return "feature " + std::to_string(index);
}

Ring ParseRing(const nlohmann::json& coords, std::size_t feature_index) {
  if (!coords.is_array()) {
    throw DataError(FeatureLabel(feature_index) + ": ring is not an array");
  }
  Ring ring;
  ring.reserve(coords.size());
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() ||
        !pt[1].is_number()) {
      throw DataError(FeatureLabel(feature_index) + ": bad coordinate");
    }
    ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
  }
  if (ring.size() < 4) {
    throw DataError(FeatureLabel(feature_index) +
                    ": ring has fewer than 4 vertices");
  }
  if (!(ring.front() == ring.back())) {
    throw DataError(FeatureLabel(feature_index) + ": unclosed ring");
  }
  return ring;
}

Polygon ParsePolygon(const nlohmann::json& rings, std::size_t feature_index) {
  if (!rings.is_array() || rings.empty()) {
    throw DataError(FeatureLabel(feature_index) + ": polygon has no rings");
  }
  Polygon polygon;
  polygon.outer = ParseRing(rings[0], feature_index);
  for (std::size_t i = 1; i < rings.size(); ++i) {
    polygon.holes.push_back(ParseRing(rings[i], feature_index));
  }
  return polygon;
}

std::string PropertyAsString(const nlohmann::json& props,
                             const std::string& key) {
  if (!props.is_object() || !props.contains(key)) return {};
  const auto& v = props[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return {};
}

double PerpendicularDistance(const LonLat& p, const LonLat& a,
                             const LonLat& b) {
  const double dx = b.lon - a.lon;
  const double dy = b.lat - a.lat;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return std::hypot(p.lon - a.lon, p.lat - a.lat);
  const double t = std::clamp(
      ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.lon - (a.lon + t * dx), p.lat - (a.lat + t * dy));
}

void DouglasPeucker(const Ring& pts, std::size_t first, std::size_t last,
                    double tolerance, std::vector<bool>& keep) {
  if (last <= first + 1) return;
  double max_dist = -1.0;
  std::size_t index = first;
  for (std::size_t i = first + 1; i < last; ++i) {
    const double d = PerpendicularDistance(pts[i], pts[first], pts[last]);
    if (d > max_dist) {
      max_dist = d;
      index = i;
    }
  }
  if (max_dist > tolerance) {
    keep[index] = true;
    DouglasPeucker(pts, first, index, tolerance, keep);
    DouglasPeucker(pts, index, last, tolerance, keep);
  }
}

Ring SimplifyRing(const Ring& ring, double tolerance) {
  if (ring.size() <= 4 || tolerance <= 0.0) return ring;
  // Anchor on the first vertex and the vertex farthest from it so the
  // closed ring is split into two open chains.
  std::size_t far = 0;
  double far_d = -1.0;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
    const double d = std::hypot(ring[i].lon - ring[0].lon,
                                ring[i].lat - ring[0].lat);
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }
  std::vector<bool> keep(ring.size(), false);
  keep.front() = keep.back() = keep[far] = true;
  DouglasPeucker(ring, 0, far, tolerance, keep);
  DouglasPeucker(ring, far, ring.size() - 1, tolerance, keep);
  Ring out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (keep[i]) out.push_back(ring[i]);
  }
  if (out.size() < 4) return ring;
  return out;
}

double RoundTo(double v, int digits) {
  if (digits < 0) return v;
  const double scale = std::pow(10.0, digits);
  return std::round(v * scale) / scale;
}

nlohmann::json RingToJson(const Ring& ring, int digits) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : ring) {
    out.push_back({RoundTo(p.lon, digits), RoundTo(p.lat, digits)});
  }
  return out;
}

}  // namespace

void BBox::Expand(const LonLat& p) {
  min_lon = std::min(min_lon, p.lon);
  min_lat = std::min(min_lat, p.lat);
  max_lon = std::max(max_lon, p.lon);
  max_lat = std::max(max_lat, p.lat);
}

void BBox::Expand(const BBox& other) {
  min_lon = std::min(min_lon, other.min_lon);
  min_lat = std::min(min_lat, other.min_lat);
  max_lon = std::max(max_lon, other.max_lon);
  max_lat = std::max(max_lat, other.max_lat);
}

bool RingContains(const Ring& ring, double lon, double lat) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const LonLat& a = ring[i];
    const LonLat& b = ring[j];
    if ((a.lat > lat) != (b.lat > lat)) {
      const double x = (b.lon - a.lon) * (lat - a.lat) / (b.lat - a.lat) + a.lon;
      if (lon < x) inside = !inside;
    }
  }
  return inside;
}

bool PolygonContains(const Polygon& polygon, double lon, double lat) {
  if (!RingContains(polygon.outer, lon, lat)) return false;
  for (const auto& hole : polygon.holes) {
    if (RingContains(hole, lon, lat)) return false;
  }
  return true;
}

bool CountyContains(const CountyGeometry& county, double lon, double lat) {
  if (!county.bbox.Contains(lon, lat)) return false;
  for (const auto& polygon : county.polygons) {
    if (PolygonContains(polygon, lon, lat)) return true;
  }
  return false;
}

BBox ComputeBBox(const std::vector<Polygon>& polygons) {
  BBox box;
  for (const auto& polygon : polygons) {
    for (const auto& p : polygon.outer) box.Expand(p);
    for (const auto& hole : polygon.holes) {
      for (const auto& p : hole) box.Expand(p);
    }
  }
  return box;
}

std::vector<CountyGeometry> ParseCounties(
    const nlohmann::json& collection, const BoundarySchema& schema,
    const std::set<std::string>& exclusions) {
  if (!collection.is_object() || !collection.contains("features") ||
      !collection["features"].is_array()) {
    throw DataError("boundary file is not a FeatureCollection");
  }
  std::vector<CountyGeometry> counties;
  const auto& features = collection["features"];
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& feature = features[i];
    const nlohmann::json props = feature.value("properties", nlohmann::json{});
    const std::string fips_text = PropertyAsString(props, schema.fips_property);
    if (fips_text.empty()) {
      throw DataError(FeatureLabel(i) + ": missing fips property '" +
                      schema.fips_property + "'");
    }
    const auto fips = Fips::Parse(fips_text);
    if (!fips) {
      throw DataError(FeatureLabel(i) + ": invalid fips '" + fips_text + "'");
    }
    std::string state = PropertyAsString(props, schema.state_property);
    if (state.empty()) {
      auto abbrev = StateAbbrevForPrefix(fips->state_prefix());
      if (abbrev) state = std::string(*abbrev);
    }
    if (exclusions.count(state)) continue;

    if (!feature.contains("geometry") || !feature["geometry"].is_object()) {
      throw DataError(FeatureLabel(i) + ": missing geometry");
    }
    const auto& geometry = feature["geometry"];
    const std::string type = geometry.value("type", "");
    const auto& coords = geometry.value("coordinates", nlohmann::json{});
    CountyGeometry county{*fips, PropertyAsString(props, schema.name_property),
                          state, {}, {}};
    if (type == "Polygon") {
      county.polygons.push_back(ParsePolygon(coords, i));
    } else if (type == "MultiPolygon") {
      if (!coords.is_array() || coords.empty()) {
        throw DataError(FeatureLabel(i) + ": empty MultiPolygon");
      }
      for (const auto& poly : coords) {
        county.polygons.push_back(ParsePolygon(poly, i));
      }
    } else {
      throw DataError(FeatureLabel(i) + ": unsupported geometry type '" +
                      type + "'");
    }
    county.bbox = ComputeBBox(county.polygons);
    counties.push_back(std::move(county));
  }
  if (counties.empty()) throw DataError("boundary file yielded no counties");
  std::sort(counties.begin(), counties.end(),
            [](const auto& a, const auto& b) { return a.fips < b.fips; });
  for (std::size_t i = 1; i < counties.size(); ++i) {
    if (counties[i].fips == counties[i - 1].fips) {
      throw DataError("duplicate fips " + counties[i].fips.str());
    }
  }
  return counties;
}

std::vector<CountyGeometry> LoadCounties(
    const std::string& path, const BoundarySchema& schema,
    const std::set<std::string>& exclusions) {
  nlohmann::json collection;
  try {
    collection = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  try {
    return ParseCounties(collection, schema, exclusions);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

CountyGeometry Simplify(const CountyGeometry& county, double tolerance) {
  CountyGeometry out = county;
  for (auto& polygon : out.polygons) {
    polygon.outer = SimplifyRing(polygon.outer, tolerance);
    for (auto& hole : polygon.holes) hole = SimplifyRing(hole, tolerance);
  }
  out.bbox = ComputeBBox(out.polygons);
  return out;
}

nlohmann::json CountiesToGeoJson(const std::vector<CountyGeometry>& counties,
                                 int digits) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& county : counties) {
    nlohmann::json polygons = nlohmann::json::array();
    for (const auto& polygon : county.polygons) {
      nlohmann::json rings = nlohmann::json::array();
      rings.push_back(RingToJson(polygon.outer, digits));
      for (const auto& hole : polygon.holes) {
        rings.push_back(RingToJson(hole, digits));
      }
      polygons.push_back(std::move(rings));
    }
    nlohmann::json geometry;
    if (polygons.size() == 1) {
      geometry = {{"type", "Polygon"}, {"coordinates", polygons[0]}};
    } else {
      geometry = {{"type", "MultiPolygon"}, {"coordinates", polygons}};
    }
    features.push_back({{"type", "Feature"},
                        {"properties",
                         {{"fips", county.fips.str()},
                          {"name", county.name},
                          {"state", county.state}}},
                        {"geometry", std::move(geometry)}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace moralmap

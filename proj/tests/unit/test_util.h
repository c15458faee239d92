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

#ifndef MORALMAP_TESTS_UNIT_TEST_UTIL_H_
#define MORALMAP_TESTS_UNIT_TEST_UTIL_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/common/dates.h"
#include "moralmap/common/fips.h"
#include "moralmap/corpus/tweet.h"
#include "moralmap/geo/geometry.h"
#include "moralmap/geo/geotag.h"

namespace testutil {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("moralmap-test-" + std::to_string(stamp) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline moralmap::Fips F(const std::string& code) { return *moralmap::Fips::Parse(code); }

inline moralmap::Date D(const std::string& text) { return *moralmap::ParseDate(text); }

inline moralmap::Timestamp T(const std::string& text) {
  return *moralmap::ParseTimestamp(text);
}

// Axis-aligned square county.
inline moralmap::CountyGeometry Square(const std::string& fips, double lon0, double lat0,
                                       double size, const std::string& state = "IL") {
  moralmap::CountyGeometry c{F(fips), "County " + fips, state, {}, {}};
  moralmap::Polygon p;
  p.outer = {{lon0, lat0},
             {lon0 + size, lat0},
             {lon0 + size, lat0 + size},
             {lon0, lat0 + size},
             {lon0, lat0}};
  c.polygons.push_back(p);
  c.bbox = moralmap::ComputeBBox(c.polygons);
  return c;
}

inline nlohmann::json SquareFeature(const std::string& fips, double lon0, double lat0,
                                    double size, const std::string& state = "IL") {
  return {{"type", "Feature"},
          {"properties", {{"fips", fips}, {"name", "County " + fips}, {"state", state}}},
          {"geometry",
           {{"type", "Polygon"},
            {"coordinates",
             {{{lon0, lat0},
               {lon0 + size, lat0},
               {lon0 + size, lat0 + size},
               {lon0, lat0 + size},
               {lon0, lat0}}}}}}};
}

inline moralmap::AnnotatedTweet Tweet(const std::string& id, moralmap::MoralFrame frame,
                                      moralmap::Stance stance = moralmap::Stance::kPro,
                                      double sentiment = 0.0,
                                      const std::string& ts = "2020-04-01T12:00:00Z") {
  moralmap::AnnotatedTweet t;
  t.id = id;
  t.timestamp = T(ts);
  t.frame = frame;
  t.stance = stance;
  t.sentiment = sentiment;
  return t;
}

inline moralmap::TaggedTweet Tagged(moralmap::AnnotatedTweet t, const std::string& fips,
                                    const std::string& state = "IL") {
  return {std::move(t), F(fips), state};
}

}  // namespace testutil

#endif  // MORALMAP_TESTS_UNIT_TEST_UTIL_H_

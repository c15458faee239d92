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

#include "moralmap/geo/geotag.h"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

namespace moralmap {

GeotagResult GeotagCorpus(std::span<const AnnotatedTweet> tweets,
                          const SpatialIndex& index,
                          std::span<const CountyGeometry> counties,
                          int workers) {
  std::unordered_map<Fips, std::size_t> position;
  for (std::size_t i = 0; i < counties.size(); ++i) {
    position.emplace(counties[i].fips, i);
  }

  std::vector<std::optional<Fips>> assigned(tweets.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      assigned[i] = AssignCounty(index, counties, tweets[i].latitude,
                                 tweets[i].longitude);
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(
      workers < 1 ? 1 : workers, 1, std::max<std::size_t>(1, tweets.size()));
  if (n_workers == 1) {
    run(0, tweets.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (tweets.size() + n_workers - 1) / n_workers;
    for (std::size_t begin = 0; begin < tweets.size(); begin += chunk) {
      threads.emplace_back(run, begin, std::min(tweets.size(), begin + chunk));
    }
    for (auto& t : threads) t.join();
  }

  GeotagResult result;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (!assigned[i]) {
      result.unassigned_ids.push_back(tweets[i].id);
      continue;
    }
    const auto& county = counties[position.at(*assigned[i])];
    result.tagged.push_back({tweets[i], *assigned[i], county.state});
  }
  return result;
}

std::string FormatAssignmentCounts(std::span<const TaggedTweet> tagged,
                                   std::span<const CountyGeometry> counties) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : counties) counts[c.fips.str()] = 0;
  for (const auto& t : tagged) ++counts[t.fips.str()];
  std::string out = "fips,count\n";
  for (const auto& [fips, n] : counts) {
    out += fips + "," + std::to_string(n) + "\n";
  }
  return out;
}

}  // namespace moralmap

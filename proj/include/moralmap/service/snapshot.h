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

// Immutable, versioned view of a built dataset and its swap-able holder.

#ifndef MORALMAP_SERVICE_SNAPSHOT_H_
#define MORALMAP_SERVICE_SNAPSHOT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "moralmap/analytics/features.h"
#include "moralmap/analytics/timeline.h"
#include "moralmap/inference/model.h"
#include "moralmap/pipeline/dataset.h"

namespace moralmap {

struct Snapshot {
  std::uint64_t version = 0;
  std::string source_dir;
  Dataset data;
  CountyAggregation aggregation;  // unfiltered
  CountyTable table;              // unfiltered
  std::vector<TimelineBin> default_timeline;
  // Indices into data.tweets ordered by (timestamp, id).
  std::vector<std::size_t> tweet_order;
  std::map<Fips, std::size_t> geometry_index;
  std::optional<DateRange> tweet_range;

  static std::shared_ptr<const Snapshot> Create(Dataset data, std::uint64_t version,
                                                std::string source_dir = {});
};

// Holds the published snapshot. Readers copy the pointer under a short lock
// and keep the snapshot alive for the rest of their request; publication is
// a pointer swap. Versions count loads, starting at 1.
class SnapshotStore {
 public:
  // nullptr before the first successful load.
  std::shared_ptr<const Snapshot> current() const;
  // Loads `dir` and publishes it. On error the previous snapshot stays
  // published and the exception propagates.
  std::uint64_t Load(const std::string& dir);
  // Publishes an already loaded dataset.
  std::uint64_t Publish(Dataset data, std::string source_dir = {});

 private:
  mutable std::mutex mu_;
  std::mutex load_mu_;
  std::shared_ptr<const Snapshot> current_;
  std::uint64_t last_version_ = 0;
};

}  // namespace moralmap

#endif  // MORALMAP_SERVICE_SNAPSHOT_H_

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

#include "moralmap/service/snapshot.h"

#include <algorithm>
#include <numeric>

namespace moralmap {

std::shared_ptr<const Snapshot> Snapshot::Create(Dataset data, std::uint64_t version,
                                                 std::string source_dir) {
  auto s = std::make_shared<Snapshot>();
  s->version = version;
  s->source_dir = std::move(source_dir);
  s->data = std::move(data);
  const Dataset& d = s->data;
  s->aggregation = AggregateCounties(d.tweets, d.contexts);
  s->table = CountyTable::Build(d.contexts, s->aggregation.vectors);
  s->default_timeline =
      BinTimeline(d.tweets, d.contexts, d.bin_width_days, TweetFilter{}, d.study_window);
  s->tweet_order.resize(d.tweets.size());
  std::iota(s->tweet_order.begin(), s->tweet_order.end(), 0);
  std::sort(s->tweet_order.begin(), s->tweet_order.end(),
            [&](std::size_t a, std::size_t b) {
              const auto& ta = d.tweets[a].tweet;
              const auto& tb = d.tweets[b].tweet;
              if (ta.timestamp != tb.timestamp) return ta.timestamp < tb.timestamp;
              return ta.id < tb.id;
            });
  for (std::size_t i = 0; i < d.counties.size(); ++i) {
    s->geometry_index.emplace(d.counties[i].fips, i);
  }
  if (!s->tweet_order.empty()) {
    s->tweet_range = DateRange{DateOf(d.tweets[s->tweet_order.front()].tweet.timestamp),
                               DateOf(d.tweets[s->tweet_order.back()].tweet.timestamp)};
  }
  return s;
}

std::shared_ptr<const Snapshot> SnapshotStore::current() const {
  std::lock_guard<std::mutex> lock(mu_);
  return current_;
}

std::uint64_t SnapshotStore::Load(const std::string& dir) {
  std::lock_guard<std::mutex> load_lock(load_mu_);
  Dataset data = LoadDataset(dir);
  auto next = Snapshot::Create(std::move(data), last_version_ + 1, dir);
  std::lock_guard<std::mutex> lock(mu_);
  current_ = std::move(next);
  return ++last_version_;
}

std::uint64_t SnapshotStore::Publish(Dataset data, std::string source_dir) {
  std::lock_guard<std::mutex> load_lock(load_mu_);
  auto next = Snapshot::Create(std::move(data), last_version_ + 1, std::move(source_dir));
  std::lock_guard<std::mutex> lock(mu_);
  current_ = std::move(next);
  return ++last_version_;
}

}  // namespace moralmap

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

#ifndef MORALMAP_TESTS_UNIT_RANDOM_FILTER_H_
#define MORALMAP_TESTS_UNIT_RANDOM_FILTER_H_

#include <random>
#include <set>
#include <span>
#include <vector>

#include "moralmap/analytics/filter.h"

namespace testutil {

// Random conjunctive filter whose clauses draw values seen in `tweets`.
inline moralmap::TweetFilter RandomFilter(std::mt19937_64& rng,
                                          std::span<const moralmap::TaggedTweet> tweets) {
  using namespace moralmap;
  TweetFilter f;
  std::bernoulli_distribution coin(0.4);
  std::uniform_int_distribution<std::size_t> pick(0, tweets.size() - 1);
  if (coin(rng)) {
    f.frames.emplace();
    std::uniform_int_distribution<int> frame(0, kNumFrames - 1);
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) f.frames->insert(FrameAt(frame(rng)));
  }
  if (coin(rng)) {
    f.stances.emplace();
    f.stances->insert(static_cast<Stance>(rng() % 3));
    if (coin(rng)) f.stances->insert(static_cast<Stance>(rng() % 3));
  }
  if (coin(rng)) {
    Date a = DateOf(tweets[pick(rng)].tweet.timestamp);
    Date b = DateOf(tweets[pick(rng)].tweet.timestamp);
    if (b < a) std::swap(a, b);
    if (coin(rng)) f.from = a;
    if (coin(rng)) f.to = b;
  }
  if (coin(rng)) {
    f.states.emplace();
    const int k = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) f.states->insert(tweets[pick(rng)].state);
  } else if (coin(rng)) {
    f.fips.emplace();
    const int k = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < k; ++i) f.fips->insert(tweets[pick(rng)].fips);
  }
  return f;
}

}  // namespace testutil

#endif  // MORALMAP_TESTS_UNIT_RANDOM_FILTER_H_

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

// Hashtag-vote stance heuristic for corpora without stance labels.

#ifndef MORALMAP_CORPUS_STANCE_H_
#define MORALMAP_CORPUS_STANCE_H_

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/corpus/tweet.h"

namespace moralmap {

class StanceLexicon {
 public:
  StanceLexicon() = default;

  // Tags are normalized (lowercase, no '#'). Throws ValidationError when a
  // tag appears in both sets.
  static StanceLexicon Create(const std::vector<std::string>& pro,
                              const std::vector<std::string>& anti);
  // {"pro": [...], "anti": [...]}
  static StanceLexicon FromJson(const nlohmann::json& config);

  const std::set<std::string>& pro() const { return pro_; }
  const std::set<std::string>& anti() const { return anti_; }
  bool empty() const { return pro_.empty() && anti_.empty(); }

 private:
  std::set<std::string> pro_;
  std::set<std::string> anti_;
};

// Counts distinct matching hashtags on each side; the majority wins and a
// tie (including no matches) is Unknown.
Stance EstimateStance(const AnnotatedTweet& tweet,
                      const StanceLexicon& lexicon);

// Fills in Unknown stances in place; labelled tweets are untouched. Returns
// the number of tweets whose stance changed.
std::size_t EnrichStances(std::vector<AnnotatedTweet>& tweets,
                          const StanceLexicon& lexicon);

}  // namespace moralmap

#endif  // MORALMAP_CORPUS_STANCE_H_

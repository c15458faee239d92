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

#include "moralmap/corpus/stance.h"

#include "moralmap/common/error.h"

namespace moralmap {

StanceLexicon StanceLexicon::Create(const std::vector<std::string>& pro,
                                    const std::vector<std::string>& anti) {
  StanceLexicon lex;
  for (const auto& tag : pro) {
    std::string t = NormalizeHashtag(tag);
    if (!t.empty()) lex.pro_.insert(std::move(t));
  }
  for (const auto& tag : anti) {
    std::string t = NormalizeHashtag(tag);
    if (t.empty()) continue;
    if (lex.pro_.count(t)) {
      throw ValidationError("hashtag #" + t +
                            " is in both the pro and anti lexicon");
    }
    lex.anti_.insert(std::move(t));
  }
  return lex;
}

StanceLexicon StanceLexicon::FromJson(const nlohmann::json& config) {
  if (config.is_null()) return {};
  auto list = [&](const char* key) {
    if (!config.contains(key)) return std::vector<std::string>{};
    return config[key].get<std::vector<std::string>>();
  };
  return Create(list("pro"), list("anti"));
}

Stance EstimateStance(const AnnotatedTweet& tweet,
                      const StanceLexicon& lexicon) {
  std::set<std::string> tags;
  for (const auto& h : tweet.hashtags) tags.insert(NormalizeHashtag(h));
  int pro = 0;
  int anti = 0;
  for (const auto& tag : tags) {
    if (lexicon.pro().count(tag)) ++pro;
    if (lexicon.anti().count(tag)) ++anti;
  }
  if (pro > anti) return Stance::kPro;
  if (anti > pro) return Stance::kAnti;
  return Stance::kUnknown;
}

std::size_t EnrichStances(std::vector<AnnotatedTweet>& tweets,
                          const StanceLexicon& lexicon) {
  std::size_t changed = 0;
  for (auto& t : tweets) {
    if (t.stance != Stance::kUnknown) continue;
    t.stance = EstimateStance(t, lexicon);
    if (t.stance != Stance::kUnknown) ++changed;
  }
  return changed;
}

}  // namespace moralmap

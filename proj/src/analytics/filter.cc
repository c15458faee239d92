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

#include "moralmap/analytics/filter.h"

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"

namespace moralmap {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::string Join(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += values[i];
  }
  return out;
}

}  // namespace

bool TweetFilter::Matches(const TaggedTweet& t) const {
  if (frames && !frames->count(t.tweet.frame)) return false;
  if (stances && !stances->count(t.tweet.stance)) return false;
  if (from || to) {
    const Date d = DateOf(t.tweet.timestamp);
    if (from && d < *from) return false;
    if (to && d > *to) return false;
  }
  return MatchesRegion(t.fips, t.state);
}

bool TweetFilter::MatchesRegion(const Fips& county,
                                std::string_view state) const {
  if (states && !states->count(std::string(state))) return false;
  if (fips && !fips->count(county)) return false;
  return true;
}

std::vector<TaggedTweet> FilterTweets(std::span<const TaggedTweet> tweets,
                                      const TweetFilter& filter) {
  std::vector<TaggedTweet> out;
  for (const auto& t : tweets) {
    if (filter.Matches(t)) out.push_back(t);
  }
  return out;
}

TweetFilter ParseFilter(std::string_view text, const Taxonomy& taxonomy) {
  TweetFilter filter;
  text = Trim(text);
  if (text.empty()) return filter;
  for (std::string_view clause : Split(text, ';')) {
    clause = Trim(clause);
    if (clause.empty()) continue;
    const std::size_t eq = clause.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("filter clause without '=': " + std::string(clause));
    }
    const std::string key = ToLower(Trim(clause.substr(0, eq)));
    std::vector<std::string> values;
    for (auto v : Split(clause.substr(eq + 1), ',')) {
      v = Trim(v);
      if (v.empty()) {
        throw ValidationError("empty value in filter clause: " +
                              std::string(clause));
      }
      values.emplace_back(v);
    }
    auto duplicate = [&]() {
      return ValidationError("filter key repeated: " + key);
    };
    if (key == "frame") {
      if (filter.frames) throw duplicate();
      filter.frames.emplace();
      for (const auto& v : values) {
        auto f = taxonomy.Resolve(v);
        if (!f) throw ValidationError("unknown frame in filter: " + v);
        filter.frames->insert(*f);
      }
    } else if (key == "stance") {
      if (filter.stances) throw duplicate();
      filter.stances.emplace();
      for (const auto& v : values) {
        auto s = ParseStance(v);
        if (!s || Trim(v).empty()) {
          throw ValidationError("unknown stance in filter: " + v);
        }
        filter.stances->insert(*s);
      }
    } else if (key == "state") {
      if (filter.states) throw duplicate();
      filter.states.emplace();
      for (const auto& v : values) {
        std::string abbrev(v);
        for (auto& c : abbrev) c = static_cast<char>(std::toupper(c));
        if (!IsValidStateAbbrev(abbrev)) {
          throw ValidationError("unknown state in filter: " + v);
        }
        filter.states->insert(abbrev);
      }
    } else if (key == "fips") {
      if (filter.fips) throw duplicate();
      filter.fips.emplace();
      for (const auto& v : values) {
        auto f = Fips::Parse(v);
        if (!f) throw ValidationError("bad fips in filter: " + v);
        filter.fips->insert(*f);
      }
    } else if (key == "from" || key == "to") {
      if (values.size() != 1) {
        throw ValidationError("filter key " + key + " takes one date");
      }
      auto d = ParseDate(values[0]);
      if (!d) throw ValidationError("bad date in filter: " + values[0]);
      auto& slot = key == "from" ? filter.from : filter.to;
      if (slot) throw duplicate();
      slot = *d;
    } else {
      throw ValidationError("unknown filter key: " + key);
    }
  }
  if (filter.from && filter.to && *filter.from > *filter.to) {
    throw ValidationError("filter date range is inverted");
  }
  return filter;
}

std::string FormatFilter(const TweetFilter& filter, const Taxonomy& taxonomy) {
  std::vector<std::string> clauses;
  if (filter.frames) {
    std::vector<std::string> v;
    for (auto f : *filter.frames) v.push_back(taxonomy.Name(f));
    clauses.push_back("frame=" + Join(v));
  }
  if (filter.stances) {
    std::vector<std::string> v;
    for (auto s : *filter.stances) v.emplace_back(StanceName(s));
    clauses.push_back("stance=" + Join(v));
  }
  if (filter.states) {
    clauses.push_back("state=" + Join({filter.states->begin(),
                                       filter.states->end()}));
  }
  if (filter.fips) {
    std::vector<std::string> v;
    for (const auto& f : *filter.fips) v.push_back(f.str());
    clauses.push_back("fips=" + Join(v));
  }
  if (filter.from) clauses.push_back("from=" + FormatDate(*filter.from));
  if (filter.to) clauses.push_back("to=" + FormatDate(*filter.to));
  std::string out;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i > 0) out.push_back(';');
    out += clauses[i];
  }
  return out;
}

}  // namespace moralmap

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

#include <set>

#include "doctest.h"
#include "moralmap/common/error.h"
#include "moralmap/corpus/corpus_parser.h"
#include "moralmap/corpus/stance.h"
#include "moralmap/corpus/taxonomy.h"
#include "test_util.h"

using namespace moralmap;
using nlohmann::json;

namespace {

const char* kHeader = "id,timestamp,lat,lon,frame,stance,sentiment,vivid,virality,hashtags,text\n";

std::string Line(const std::string& id, const std::string& frame, double lat = 41.8,
                 double lon = -87.6) {
  return id + ",2020-04-01T10:00:00Z," + std::to_string(lat) + "," + std::to_string(lon) + "," +
         frame + ",pro,0.25,true,3,stayhome,hello\n";
}

}  // namespace

TEST_CASE("taxonomy: default has 12 frames over 6 foundations") {
  const Taxonomy t = Taxonomy::Default();
  std::set<Foundation> foundations;
  std::set<std::string> names;
  for (int i = 0; i < kNumFrames; ++i) {
    foundations.insert(FoundationOf(FrameAt(i)));
    names.insert(t.Name(FrameAt(i)));
    CHECK(Partner(Partner(FrameAt(i))) == FrameAt(i));
  }
  CHECK(foundations.size() == 6);
  CHECK(names.size() == 12);
  CHECK(t.Resolve("care") == MoralFrame::kCare);
  CHECK(t.Resolve(" Subversion ") == MoralFrame::kSubversion);
}

TEST_CASE("taxonomy: Freedom resolves to the Liberty virtue frame") {
  const auto f = Taxonomy::Default().Resolve("Freedom");
  REQUIRE(f);
  CHECK(*f == MoralFrame::kLiberty);
  CHECK(FoundationOf(*f) == Foundation::kLiberty);
  CHECK(PolarityOf(*f) == Polarity::kVirtue);
}

TEST_CASE("taxonomy: a label listed twice is rejected") {
  json config = Taxonomy::Default().ToJson();
  config["frames"][1]["name"] = "Care";
  CHECK_THROWS_AS(Taxonomy::FromJson(config), ValidationError);
}

TEST_CASE("taxonomy: json round-trip") {
  const Taxonomy t = Taxonomy::Default();
  CHECK(Taxonomy::FromJson(t.ToJson()).ToJson() == t.ToJson());
}

TEST_CASE("parser: five valid lines give five tweets and no rejects") {
  std::string text = kHeader;
  for (int i = 0; i < 5; ++i) text += Line("t" + std::to_string(i), "Care");
  const ParsedCorpus p = ParseCorpus(text, CorpusSchema::Default(), Taxonomy::Default());
  CHECK(p.tweets.size() == 5);
  CHECK(p.rejects.empty());
  CHECK(p.total_records == 5);
  const AnnotatedTweet& t = p.tweets[0];
  CHECK(t.id == "t0");
  CHECK(t.stance == Stance::kPro);
  CHECK(t.sentiment == 0.25);
  CHECK(t.vivid);
  CHECK(t.virality == 3.0);
  CHECK(t.hashtags == std::vector<std::string>{"stayhome"});
}

TEST_CASE("parser: unknown frame is rejected, the rest kept") {
  std::string text = kHeader;
  text += Line("a", "Care");
  text += Line("b", "NotAFrame");
  text += Line("c", "Harm");
  const ParsedCorpus p = ParseCorpus(text, CorpusSchema::Default(), Taxonomy::Default());
  CHECK(p.tweets.size() == 2);
  REQUIRE(p.rejects.size() == 1);
  CHECK(p.rejects[0].line_no == 3);
  CHECK(p.rejects[0].reason == reject_reason::kUnknownFrame);
}

TEST_CASE("parser: latitude out of range is rejected") {
  std::string text = kHeader;
  text += Line("a", "Care", 95.0);
  const ParsedCorpus p = ParseCorpus(text, CorpusSchema::Default(), Taxonomy::Default());
  CHECK(p.tweets.empty());
  REQUIRE(p.rejects.size() == 1);
  CHECK(p.rejects[0].reason == reject_reason::kOutOfRange);
}

TEST_CASE("parser: duplicate ids and window are enforced") {
  std::string text = kHeader;
  text += Line("a", "Care");
  text += Line("a", "Care");
  CorpusSchema schema = CorpusSchema::Default();
  ParsedCorpus p = ParseCorpus(text, schema, Taxonomy::Default());
  REQUIRE(p.rejects.size() == 1);
  CHECK(p.rejects[0].reason == reject_reason::kDuplicateId);
  schema.study_window = DateRange{testutil::D("2020-05-01"), testutil::D("2020-05-31")};
  p = ParseCorpus(kHeader + Line("b", "Care"), schema, Taxonomy::Default());
  REQUIRE(p.rejects.size() == 1);
  CHECK(p.rejects[0].reason == reject_reason::kOutsideWindow);
}

TEST_CASE("parser: worker count does not change the result") {
  std::string text = kHeader;
  for (int i = 0; i < 400; ++i) {
    text += Line("t" + std::to_string(i), i % 7 == 0 ? "Bogus" : (i % 2 ? "Harm" : "Freedom"));
  }
  const ParsedCorpus one = ParseCorpus(text, CorpusSchema::Default(), Taxonomy::Default(), 1);
  const ParsedCorpus four = ParseCorpus(text, CorpusSchema::Default(), Taxonomy::Default(), 4);
  CHECK(one.tweets == four.tweets);
  CHECK(one.rejects == four.rejects);
}

TEST_CASE("parser: schema mapping renames source columns") {
  const json config = {{"fields",
                        {{"id", "tweet_id"},
                         {"timestamp", "created_at"},
                         {"lat", "latitude"},
                         {"lon", "longitude"},
                         {"frame", "moral_frame"}}}};
  const CorpusSchema schema = CorpusSchema::FromJson(config);
  const std::string text =
      "tweet_id,created_at,latitude,longitude,moral_frame\n"
      "x1,2020-04-01T00:00:00Z,40,-100,Purity\n";
  const ParsedCorpus p = ParseCorpus(text, schema, Taxonomy::Default());
  REQUIRE(p.tweets.size() == 1);
  CHECK(p.tweets[0].frame == MoralFrame::kPurity);
  CHECK(p.tweets[0].stance == Stance::kUnknown);
}

TEST_CASE("parser: a header missing a mapped column is a schema error") {
  CHECK_THROWS_AS(ParseCorpus("id,timestamp,lat\n", CorpusSchema::Default(), Taxonomy::Default()),
                  ValidationError);
}

TEST_CASE("stance: single pro match") {
  const auto lex = StanceLexicon::Create({"stayhome"}, {"reopen"});
  AnnotatedTweet t = testutil::Tweet("a", MoralFrame::kCare, Stance::kUnknown);
  t.hashtags = {"stayhome"};
  CHECK(EstimateStance(t, lex) == Stance::kPro);
  t.hashtags = {};
  CHECK(EstimateStance(t, lex) == Stance::kUnknown);
}

TEST_CASE("stance: every two-hashtag assignment follows the majority rule") {
  // Labels: 0 neutral, 1 pro, 2 anti. Enumerate all pairs.
  const auto lex = StanceLexicon::Create({"p1", "p2"}, {"a1", "a2"});
  const std::vector<std::vector<std::string>> tags = {{"n1", "n2"}, {"p1", "p2"}, {"a1", "a2"}};
  for (int first = 0; first < 3; ++first) {
    for (int second = 0; second < 3; ++second) {
      AnnotatedTweet t = testutil::Tweet("a", MoralFrame::kCare, Stance::kUnknown);
      t.hashtags = {tags[first][0], tags[second][1]};
      const int pro = (first == 1) + (second == 1);
      const int anti = (first == 2) + (second == 2);
      const Stance expected =
          pro > anti ? Stance::kPro : (anti > pro ? Stance::kAnti : Stance::kUnknown);
      CAPTURE(first);
      CAPTURE(second);
      CHECK(EstimateStance(t, lex) == expected);
    }
  }
}

TEST_CASE("stance: enrichment leaves labelled tweets alone") {
  const auto lex = StanceLexicon::Create({"stayhome"}, {"reopen"});
  std::vector<AnnotatedTweet> tweets = {testutil::Tweet("a", MoralFrame::kCare, Stance::kAnti),
                                        testutil::Tweet("b", MoralFrame::kCare, Stance::kUnknown)};
  tweets[0].hashtags = {"stayhome"};
  tweets[1].hashtags = {"stayhome"};
  CHECK(EnrichStances(tweets, lex) == 1);
  CHECK(tweets[0].stance == Stance::kAnti);
  CHECK(tweets[1].stance == Stance::kPro);
  CHECK_THROWS_AS(StanceLexicon::Create({"x"}, {"x"}), ValidationError);
}

TEST_CASE("hashtags: extraction normalizes case and strips the marker") {
  CHECK(ExtractHashtags("Stay safe #StayHome and #FlattenTheCurve!") ==
        std::vector<std::string>{"stayhome", "flattenthecurve"});
}

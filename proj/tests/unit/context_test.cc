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

#include <random>
#include <set>

#include "doctest.h"
#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"
#include "moralmap/context/context.h"
#include "test_util.h"

using namespace moralmap;
using testutil::D;
using testutil::F;

namespace {

std::string Write(const testutil::TempDir& dir, const std::string& name,
                  const std::string& contents) {
  WriteFile(dir.file(name), contents);
  return dir.file(name);
}

CensusSchema DemographicCensus() {
  CensusSchema s;
  s.demographic_columns = {"median_age"};
  return s;
}

}  // namespace

TEST_CASE("census: three rows parse with populations") {
  testutil::TempDir dir;
  const auto path = Write(dir, "census.csv",
                          "fips,population,median_age\n17031,5150233,35.8\n"
                          "6037,10039107,36.7\n48201,4713325,33.4\n");
  const auto r = LoadCensus(path, DemographicCensus());
  CHECK(r.rejects.empty());
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries.at(F("06037")).population == 10039107);
  CHECK(r.entries.at(F("17031")).demographics.at("median_age") == 35.8);
}

TEST_CASE("census: non-positive population is rejected with its reason") {
  testutil::TempDir dir;
  const auto path = Write(dir, "census.csv",
                          "fips,population,median_age\n17031,-5,35\n17033,100,40\n");
  const auto r = LoadCensus(path, DemographicCensus());
  CHECK(r.entries.size() == 1);
  REQUIRE(r.rejects.size() == 1);
  CHECK(r.rejects[0].line_no == 2);
  CHECK(r.rejects[0].reason == "non-positive");
}

TEST_CASE("census: entry count equals the distinct fips count of a large file") {
  testutil::TempDir dir;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> county(0, 499);
  std::string text = "fips,population,median_age\n";
  std::set<std::string> distinct;
  for (int i = 0; i < 2000; ++i) {
    char code[16];
    std::snprintf(code, sizeof code, "48%03d", 2 * county(rng) + 1);
    text += std::string(code) + ",1000,30\n";
    distinct.insert(code);
  }
  const auto r = LoadCensus(Write(dir, "census.csv", text), DemographicCensus());
  CHECK(r.entries.size() == distinct.size());
  for (const auto& reject : r.rejects) CHECK(reject.reason == "duplicate-fips");
}

TEST_CASE("elections: raw counts become shares") {
  testutil::TempDir dir;
  const auto path = Write(dir, "elections.csv",
                          "fips,dem_votes,rep_votes,total_votes\n17031,60,40,100\n"
                          "17033,0,0,0\n");
  const auto r = LoadElections(path, ElectionSchema{});
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries.at(F("17031")).dem_share == 0.6);
  CHECK(r.entries.at(F("17031")).rep_share == 0.4);
  REQUIRE(r.rejects.size() == 1);
  CHECK(r.rejects[0].reason == "zero-total");
}

TEST_CASE("elections: normalized shares pass through and match the raw counts") {
  testutil::TempDir dir;
  const std::vector<std::array<int, 3>> raw = {{523, 401, 960}, {10, 15, 25}, {7, 2, 11}};
  std::string counts = "fips,dem_votes,rep_votes,total_votes\n";
  std::string shares = "fips,dem,rep\n";
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string f = "1700" + std::to_string(2 * i + 1);
    counts += f + "," + std::to_string(raw[i][0]) + "," + std::to_string(raw[i][1]) + "," +
              std::to_string(raw[i][2]) + "\n";
    shares += f + "," + FormatDouble(double(raw[i][0]) / raw[i][2]) + "," +
              FormatDouble(double(raw[i][1]) / raw[i][2]) + "\n";
  }
  ElectionSchema share_schema;
  share_schema.mode = ElectionSchema::Mode::kShares;
  share_schema.dem_column = "dem";
  share_schema.rep_column = "rep";
  const auto a = LoadElections(Write(dir, "c.csv", counts), ElectionSchema{});
  const auto b = LoadElections(Write(dir, "s.csv", shares), share_schema);
  REQUIRE(a.entries.size() == 3);
  REQUIRE(b.entries.size() == 3);
  for (const auto& [fips, rec] : a.entries) {
    CHECK(b.entries.at(fips).dem_share == doctest::Approx(rec.dem_share).epsilon(1e-15));
    CHECK(b.entries.at(fips).rep_share == doctest::Approx(rec.rep_share).epsilon(1e-15));
    CHECK(rec.dem_share + rec.rep_share <= 1.0);
  }
  const auto bad = LoadElections(Write(dir, "bad.csv", "fips,dem,rep\n17001,0.7,0.6\n"),
                                 share_schema);
  CHECK(bad.entries.empty());
  REQUIRE(bad.rejects.size() == 1);
  CHECK(bad.rejects[0].reason == "share-sum");
}

TEST_CASE("mask: weighted category shares") {
  testutil::TempDir dir;
  const auto weights = DefaultMaskWeights(5);
  CHECK(weights == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto path = Write(dir, "mask.csv",
                          "fips,never,rarely,sometimes,frequently,always\n"
                          "17031,0,0,0,0,1\n17033,0.2,0.2,0.2,0.2,0.2\n");
  const auto r = LoadMaskSurvey(path, MaskSchema{}, weights);
  CHECK(r.entries.at(F("17031")) == 1.0);
  // Dot product by hand: 0.2 * (0 + 0.25 + 0.5 + 0.75 + 1) = 0.5.
  CHECK(r.entries.at(F("17033")) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mask: shares that do not sum to one are an error") {
  testutil::TempDir dir;
  const auto path = Write(dir, "mask.csv",
                          "fips,never,rarely,sometimes,frequently,always\n"
                          "17031,0.1,0.1,0.1,0.1,0.1\n");
  CHECK_THROWS_AS(LoadMaskSurvey(path, MaskSchema{}, DefaultMaskWeights(5)), DataError);
  CHECK_THROWS_AS(LoadMaskSurvey(path, MaskSchema{}, {1.0}), ValidationError);
}

TEST_CASE("covid: monotone series unchanged; dips repaired by running max") {
  CHECK(RunningMax(std::vector<std::int64_t>{1, 2, 2, 5}) ==
        std::vector<std::int64_t>{1, 2, 2, 5});
  CHECK(RunningMax(std::vector<std::int64_t>{3, 2, 4}) == std::vector<std::int64_t>{3, 3, 4});
  // Oracle on random walks: every output is the max of the prefix.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> v(0, 100);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> xs(30);
    for (auto& x : xs) x = v(rng);
    const auto got = RunningMax(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(got[i] == *std::max_element(xs.begin(), xs.begin() + i + 1));
    }
  }
}

TEST_CASE("covid: missing middle day is forward-filled and deltas follow") {
  testutil::TempDir dir;
  const auto path = Write(dir, "covid.csv",
                          "fips,date,cases,deaths\n17031,2020-04-01,1,0\n"
                          "17031,2020-04-03,5,1\n"
                          "17033,2020-04-01,3,0\n17033,2020-04-02,2,0\n17033,2020-04-03,4,0\n");
  const auto r = LoadCovid(path, CovidSchema{}, {D("2020-04-01"), D("2020-04-04")});
  const CovidSeries& a = r.entries.at(F("17031"));
  CHECK(a.cases == std::vector<std::int64_t>{1, 1, 5, 5});
  CHECK(a.NewCases(0) == 0);
  CHECK(a.NewCases(1) == 0);
  CHECK(a.NewCases(2) == 4);
  const CovidSeries& b = r.entries.at(F("17033"));
  CHECK(b.cases == std::vector<std::int64_t>{3, 3, 4, 4});
}

TEST_CASE("covid: bad rows name the file and line") {
  testutil::TempDir dir;
  const auto path = Write(dir, "covid.csv",
                          "fips,date,cases,deaths\n17031,2020-04-01,1,0\n17031,2020-04-02,x,0\n");
  try {
    LoadCovid(path, CovidSchema{}, {D("2020-04-01"), D("2020-04-02")});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("covid.csv") != std::string::npos);
    CHECK(what.find(":3") != std::string::npos);
  }
}

TEST_CASE("join: complete counties become contexts, gaps are reported") {
  std::map<Fips, CensusRecord> census = {
      {F("17031"), {100, {}}}, {F("17033"), {200, {}}}, {F("17035"), {300, {}}}};
  std::map<Fips, ElectionRecord> elections = {{F("17031"), {0.6, 0.4}},
                                              {F("17033"), {0.3, 0.6}},
                                              {F("17035"), {0.5, 0.5}}};
  std::map<Fips, double> mask = {{F("17031"), 0.8}, {F("17033"), 0.5}, {F("17035"), 0.6}};
  std::map<Fips, CovidSeries> covid;
  for (const auto& [f, c] : census) covid.emplace(f, CovidSeries{D("2020-04-01"), {1}, {0}});
  const std::vector<Fips> universe = {F("17031"), F("17033"), F("17035")};

  JoinResult j = JoinContext(census, elections, &mask, &covid, universe);
  CHECK(j.contexts.size() == 3);
  CHECK(j.coverage.empty());
  CHECK(j.contexts[0].vote_margin == doctest::Approx(0.2));

  elections.erase(F("17033"));
  j = JoinContext(census, elections, &mask, &covid, universe);
  CHECK(j.contexts.size() == 2);
  REQUIRE(j.coverage.size() == 1);
  CHECK(j.coverage[0].fips.str() == "17033");
  CHECK(j.coverage[0].missing_sources == std::vector<std::string>{"elections"});
  CHECK(FormatCoverageReport(j.coverage) == "fips,missing_sources\n17033,elections\n");
}

TEST_CASE("join: a universe without Alaska yields no Alaska contexts") {
  std::map<Fips, CensusRecord> census = {{F("02020"), {300000, {}}}, {F("17031"), {100, {}}}};
  std::map<Fips, ElectionRecord> elections = {{F("17031"), {0.6, 0.4}}};
  const std::vector<Fips> universe = {F("17031")};
  const JoinResult j = JoinContext(census, elections, nullptr, nullptr, universe);
  REQUIRE(j.contexts.size() == 1);
  for (const auto& c : j.contexts) CHECK(c.fips.state_prefix() != "02");
  CHECK_FALSE(j.contexts[0].mask_use);
  CHECK_FALSE(j.contexts[0].covid);
}

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

#include <algorithm>
#include <random>
#include <tuple>

#include "doctest.h"
#include "httplib.h"
#include "moralmap/analytics/features.h"
#include "moralmap/analytics/summary.h"
#include "moralmap/analytics/timeline.h"
#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/pipeline/build.h"
#include "moralmap/pipeline/config.h"
#include "moralmap/service/api.h"
#include "moralmap/service/payloads.h"
#include "moralmap/synthgen/synthgen.h"
#include "random_filter.h"
#include "test_util.h"

using namespace moralmap;
using nlohmann::json;

namespace {

struct Fixture {
  testutil::TempDir dir;
  std::string dataset;
  std::string alternate;
  Dataset data;

  Fixture() {
    SynthSpec spec = SynthSpec::Default();
    spec.universe.columns = 10;
    spec.universe.rows = 8;
    spec.n_tweets = 4000;
    GenerateToDirectory(spec, dir.str());
    dataset = BuildDataset(LoadConfig(dir.file("config.json"))).output_dir;
    json j = json::parse(ReadFile(dir.file("config.json")));
    j["paths"]["output_dir"] = "alternate";
    j["bin_width_days"] = 7;
    alternate = BuildDataset(ParseConfig(j, dir.str())).output_dir;
    data = LoadDataset(dataset);
  }
};

const Fixture& Shared() {
  static const Fixture f;
  return f;
}

std::shared_ptr<const Snapshot> SharedSnapshot() {
  static const auto s = Snapshot::Create(Shared().data, 1, Shared().dataset);
  return s;
}

ApiResponse Get(const std::string& path, std::map<std::string, std::string> params = {}) {
  ApiRequest r;
  r.path = path;
  r.params = std::move(params);
  return Respond(SharedSnapshot(), r);
}

json Data(const ApiResponse& r) {
  REQUIRE_MESSAGE(r.status == 200, r.body);
  return json::parse(r.body).at("data");
}

std::int64_t SummaryTotal(const json& data) {
  std::int64_t n = 0;
  for (const auto& row : data) n += row.at("count").get<std::int64_t>();
  return n;
}

std::int64_t TimelineTotal(const json& data) {
  std::int64_t n = 0;
  for (const auto& bin : data) n += bin.at("total").get<std::int64_t>();
  return n;
}

}  // namespace

TEST_CASE("api: no snapshot gives 503") {
  ApiRequest r;
  r.path = "/api/meta";
  const ApiResponse resp = Respond(nullptr, r);
  CHECK(resp.status == 503);
  CHECK(json::parse(resp.body).contains("error"));
}

TEST_CASE("api: meta reports the dataset") {
  const Dataset& ds = Shared().data;
  const json body = json::parse(Get("/api/meta").body);
  CHECK(body["version"] == 1);
  CHECK(body["filter"] == "");
  const json& m = body["data"];
  CHECK(m["n_tweets"] == ds.tweets.size());
  CHECK(m["n_counties"] == ds.counties.size());
  CHECK(m["n_contexts"] == ds.contexts.size());
  CHECK(m["has_covid"] == true);
  CHECK(m["features"].size() == kNumFeatures);
  CHECK(m["bin_width_days"] == 1);
  std::int64_t stances = 0;
  for (const auto& [k, v] : m["stance_counts"].items()) stances += v.get<std::int64_t>();
  CHECK(stances == static_cast<std::int64_t>(ds.tweets.size()));
}

TEST_CASE("api: summary, timeline and tweet totals agree under random filters") {
  const Dataset& ds = Shared().data;
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const TweetFilter f = testutil::RandomFilter(rng, ds.tweets);
    const std::string text = FormatFilter(f, ds.taxonomy);
    const auto expected = static_cast<std::int64_t>(FilterTweets(ds.tweets, f).size());
    const json summary = Data(Get("/api/summary", {{"filter", text}}));
    const json timeline = Data(Get("/api/timeline", {{"filter", text}, {"width", "3"}}));
    const json tweets = Data(Get("/api/tweets", {{"filter", text}, {"limit", "0"}}));
    CHECK(SummaryTotal(summary) == expected);
    CHECK(TimelineTotal(timeline) == expected);
    CHECK(tweets["total"] == expected);
    CHECK(tweets["tweets"].empty());
  }
}

TEST_CASE("api: frame filter returns only that frame") {
  const json page = Data(Get("/api/tweets", {{"filter", "frame=Care"}, {"limit", "1000"}}));
  REQUIRE_FALSE(page["tweets"].empty());
  for (const auto& t : page["tweets"]) CHECK(t["frame"] == "Care");
  const json summary = Data(Get("/api/summary", {{"filter", "frame=Care"}}));
  for (const auto& row : summary) {
    if (row["frame"] != "Care") CHECK(row["count"] == 0);
  }
}

TEST_CASE("api: payloads equal the serialized library results") {
  const Dataset& ds = Shared().data;
  const TweetFilter f = ParseFilter("stance=pro,anti;frame=Care,Harm,Liberty", ds.taxonomy);
  const std::string text = FormatFilter(f, ds.taxonomy);
  CHECK(Data(Get("/api/summary", {{"filter", text}})) ==
        SummaryToJson(SummarizeFrames(ds.tweets, f), ds.taxonomy));
  CHECK(Data(Get("/api/timeline", {{"filter", text}, {"width", "5"}})) ==
        TimelineToJson(BinTimeline(ds.tweets, ds.contexts, 5, f, ds.study_window), ds.taxonomy,
                       true));
  CHECK(Data(Get("/api/timeline")) ==
        TimelineToJson(BinTimeline(ds.tweets, ds.contexts, 1, {}, ds.study_window), ds.taxonomy,
                       true));
  CHECK(Data(Get("/api/counties")) == CountiesToGeoJson(ds.counties, 6));

  const auto filtered = FilterTweets(ds.tweets, f);
  const CountyAggregation agg = AggregateCounties(filtered, ds.contexts);
  const CountyTable table = CountyTable::Build(ds.contexts, agg.vectors);
  const json corr = Data(Get("/api/correlation", {{"filter", text}, {"x", "mask_use"},
                                                  {"y", "f9"}, {"precision", "full"}}));
  CHECK(corr["result"] == CorrelationToJson(CorrelateFields(table, "mask_use", "f9"), true));

  const ModelSpec spec{"f4", {"vote_margin"}, true, std::nullopt};
  ApiRequest post;
  post.method = "POST";
  post.path = "/api/inference";
  json body = spec.ToJson();
  body["filter"] = text;
  post.body = body.dump();
  const json inference = Data(Respond(SharedSnapshot(), post));
  CHECK(inference["fit"] == ModelFitToJson(RunInference(spec, table)));
  CHECK(inference["spec"] == spec.ToJson());

  const json map = Data(Get("/api/map", {{"filter", text}, {"feature", "f4"}}));
  REQUIRE(map["records"].size() == agg.vectors.size());
  for (const auto& rec : map["records"]) {
    const auto& v = agg.vectors.at(testutil::F(rec["fips"].get<std::string>()));
    CHECK(rec["value"] == v[Feature::kMeanSentiment]);
    CHECK(rec["n_tweets"] == v.n_tweets);
  }
}

TEST_CASE("api: map omits null counties and carries the demographic") {
  const Snapshot& s = *SharedSnapshot();
  const json map = Data(Get("/api/map", {{"feature", "pro_share"}}));
  CHECK(map["feature"] == "f3");
  CHECK(map["demographic"] == "vote_margin");
  CHECK(map["records"].size() == s.aggregation.vectors.size());
  for (const auto& rec : map["records"]) {
    const Fips fips = testutil::F(rec["fips"].get<std::string>());
    CHECK(std::find(s.aggregation.null_counties.begin(), s.aggregation.null_counties.end(),
                    fips) == s.aggregation.null_counties.end());
    CHECK(rec["n_tweets"].get<int>() > 0);
    const double margin = rec["demographic_value"].get<double>();
    CHECK(margin >= -1.0);
    CHECK(margin <= 1.0);
    CHECK(rec["glyph"].contains("dominant_foundation"));
  }
  CHECK(Get("/api/map", {{"demographic", "f2"}}).status == 400);
  CHECK(Get("/api/map", {{"demographic", "shoe_size"}}).status == 400);
  CHECK(Get("/api/map", {{"feature", "shoe_size"}}).status == 400);
}

TEST_CASE("api: pages concatenate to the ordered filtered set") {
  const Dataset& ds = Shared().data;
  const std::string text = "stance=pro";
  auto expected = FilterTweets(ds.tweets, ParseFilter(text, ds.taxonomy));
  std::sort(expected.begin(), expected.end(), [](const TaggedTweet& a, const TaggedTweet& b) {
    return std::tie(a.tweet.timestamp, a.tweet.id) < std::tie(b.tweet.timestamp, b.tweet.id);
  });
  std::vector<std::string> ids;
  for (std::size_t offset = 0;; offset += 317) {
    const json page = Data(Get("/api/tweets", {{"filter", text}, {"limit", "317"},
                                               {"offset", std::to_string(offset)}}));
    CHECK(page["total"] == expected.size());
    if (page["tweets"].empty()) break;
    for (const auto& t : page["tweets"]) ids.push_back(t["id"].get<std::string>());
  }
  REQUIRE(ids.size() == expected.size());
  for (std::size_t i = 0; i < ids.size(); ++i) CHECK(ids[i] == expected[i].tweet.id);
  const json past = Data(Get("/api/tweets", {{"offset", "1000000"}}));
  CHECK(past["tweets"].empty());
  CHECK(past["total"] == ds.tweets.size());
  CHECK(Data(Get("/api/tweets"))["tweets"].size() == kDefaultPageSize);
  CHECK(Get("/api/tweets", {{"limit", "1001"}}).status == 400);
  CHECK(Get("/api/tweets", {{"limit", "-1"}}).status == 400);
  CHECK(Get("/api/tweets", {{"offset", "x"}}).status == 400);
}

TEST_CASE("api: request errors map to status codes") {
  CHECK(Get("/api/nowhere").status == 404);
  CHECK(Get("/api/meta", {{"bogus", "1"}}).status == 400);
  CHECK(Get("/api/summary", {{"filter", "frame=Nonsense"}}).status == 400);
  CHECK(Get("/api/timeline", {{"width", "0"}}).status == 400);
  CHECK(Get("/api/correlation", {{"x", "mask_use"}}).status == 400);
  CHECK(Get("/api/correlation", {{"x", "mask_use"}, {"y", "nonsense"}}).status == 422);
  CHECK(Get("/api/inference").status == 405);

  ApiRequest post;
  post.method = "POST";
  post.path = "/api/inference";
  post.body = "{not json";
  CHECK(Respond(SharedSnapshot(), post).status == 400);
  post.body = R"({"dependent":"f4","predictors":["vote_margin","vote_margin"]})";
  const ApiResponse dup = Respond(SharedSnapshot(), post);
  CHECK(dup.status == 422);
  CHECK(json::parse(dup.body)["version"] == 1);
  post.body = R"({"dependent":"f4","predictors":["mask_use"],"filter":"state=ZZ"})";
  CHECK(Respond(SharedSnapshot(), post).status == 400);
  // One county cannot support a fit.
  post.body = json{{"dependent", "f4"},
                   {"predictors", {"mask_use"}},
                   {"filter", "fips=" + Shared().data.tweets.front().fips.str()}}
                  .dump();
  CHECK(Respond(SharedSnapshot(), post).status == 422);
}

TEST_CASE("store: versions increase and failed loads keep the old snapshot") {
  SnapshotStore store;
  CHECK_FALSE(store.current());
  CHECK(store.Load(Shared().dataset) == 1);
  const auto first = store.current();
  CHECK(first->version == 1);
  CHECK_THROWS_AS(store.Load(Shared().dir.file("missing")), DataError);
  CHECK(store.current() == first);
  CHECK(store.Load(Shared().alternate) == 2);
  CHECK(store.current()->data.bin_width_days == 7);
  CHECK(first->data.bin_width_days == 1);
}

TEST_CASE("service: reload is loopback-only and reports conflicts") {
  SnapshotStore store;
  store.Load(Shared().dataset);
  ApiService service(store);
  ApiRequest reload;
  reload.method = "POST";
  reload.path = "/admin/reload";
  reload.remote_addr = "10.1.2.3";
  CHECK(service.Handle(reload).status == 403);
  reload.remote_addr = "127.0.0.1";
  const ApiResponse ok = service.Handle(reload);
  CHECK(ok.status == 200);
  CHECK(json::parse(ok.body)["version"] == 2);
  CHECK(json::parse(ok.body)["previous"] == 1);
  reload.body = json{{"dataset", Shared().dir.file("missing")}}.dump();
  const ApiResponse bad = service.Handle(reload);
  CHECK(bad.status == 409);
  CHECK(bad.version == 2);
  CHECK(store.current()->version == 2);
  reload.method = "GET";
  CHECK(service.Handle(reload).status == 405);
  ApiRequest meta;
  meta.path = "/api/meta";
  CHECK(json::parse(service.Handle(meta).body)["version"] == 2);
}

TEST_CASE("http: the server answers with matching version headers") {
  SnapshotStore store;
  store.Load(Shared().dataset);
  HttpServer server(store, "127.0.0.1", 0);
  server.Start();
  REQUIRE(server.port() > 0);
  httplib::Client client("127.0.0.1", server.port());
  auto res = client.Get("/api/meta");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("X-Snapshot-Version") == "1");
  CHECK(json::parse(res->body)["data"] == MetaData(*store.current()));
  res = client.Get("/api/summary?filter=frame%3DCare");
  REQUIRE(res);
  CHECK(json::parse(res->body)["filter"] == "frame=Care");
  res = client.Post("/admin/reload", "", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("X-Snapshot-Version") == "2");
  res = client.Post("/api/inference", R"({"dependent":"f4","predictors":["vote_margin"]})",
                    "application/x-www-form-urlencoded");
  REQUIRE(res);
  CHECK(res->status == 200);
  server.Stop();
  HttpServer holder(store, "127.0.0.1", 0);
  holder.Start();
  HttpServer clash(store, "127.0.0.1", holder.port());
  CHECK_THROWS_AS(clash.Start(), IoError);
  holder.Stop();
}

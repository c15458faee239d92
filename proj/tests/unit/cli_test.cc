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

#include <chrono>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "moralmap/common/csv.h"
#include "process.h"
#include "test_util.h"

using nlohmann::json;
using testutil::RunResult;

namespace {

struct Workspace {
  testutil::TempDir dir;
  std::string config;
  std::string dataset;
  int runs = 0;

  Workspace() {
    REQUIRE(Cli({"synth", "--out", dir.str(), "--tweets", "3000"}).exit_code == 0);
    config = dir.file("config.json");
    dataset = dir.file("build");
    const RunResult built = Cli({"--config", config, "build"});
    REQUIRE_MESSAGE(built.exit_code == 0, built.err);
  }

  RunResult Cli(std::vector<std::string> args) {
    args.insert(args.begin(), MORALMAP_CLI);
    return testutil::Run(args, dir.file("run" + std::to_string(runs++)));
  }
};

Workspace& Shared() {
  static Workspace w;
  return w;
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
  auto& w = Shared();
  CHECK(w.Cli({"--help"}).exit_code == 0);
  CHECK(w.Cli({"no-such-command"}).exit_code == 1);
  CHECK(w.Cli({"synth"}).exit_code == 1);
  CHECK(w.Cli({"stats", "--dataset", w.dataset, "--width", "abc"}).exit_code == 1);
}

TEST_CASE("cli: validate reports every config problem") {
  auto& w = Shared();
  CHECK(w.Cli({"--config", w.config, "validate"}).exit_code == 0);
  json j = json::parse(testutil::Slurp(w.config));
  j["paths"]["census"] = "nowhere.csv";
  j["workers"] = 0;
  const std::string bad = w.dir.file("bad_config.json");
  moralmap::WriteFile(bad, j.dump());
  const RunResult r = w.Cli({"--config", bad, "validate"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("paths.census") != std::string::npos);
  CHECK(r.err.find("workers") != std::string::npos);
  CHECK(w.Cli({"--config", bad, "build"}).exit_code == 1);
  CHECK(w.Cli({"validate"}).exit_code == 1);
}

TEST_CASE("cli: data errors exit with code 2") {
  auto& w = Shared();
  const RunResult r = w.Cli({"stats", "--dataset", w.dir.file("missing"), "--summary"});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("missing") != std::string::npos);
  CHECK(w.Cli({"stats", "--dataset", w.dataset, "--pearson", "mask_use", "nonsense"})
            .exit_code == 2);
}

TEST_CASE("cli: stats summary totals all accepted tweets") {
  auto& w = Shared();
  const RunResult r = w.Cli({"stats", "--dataset", w.dataset, "--summary", "--json"});
  REQUIRE(r.exit_code == 0);
  const json body = json::parse(r.out);
  std::int64_t total = 0;
  for (const auto& row : body["data"]) total += row["count"].get<std::int64_t>();
  const json manifest = json::parse(testutil::Slurp(w.dataset + "/manifest.json"));
  CHECK(total == manifest["counts"]["assigned"].get<std::int64_t>());
  const RunResult text = w.Cli({"stats", "--dataset", w.dataset, "--summary"});
  CHECK(text.exit_code == 0);
  CHECK(text.out.rfind("frame,", 0) == 0);
}

TEST_CASE("cli: stats output is identical across runs") {
  auto& w = Shared();
  const std::vector<std::string> args = {"stats", "--dataset", w.dataset, "--timeline",
                                         "--width", "7", "--pearson", "mask_use", "f9",
                                         "--model", "f4~vote_margin+mask_use"};
  const RunResult a = w.Cli(args);
  const RunResult b = w.Cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("vote_margin") != std::string::npos);
}

TEST_CASE("cli: export writes csv and json") {
  auto& w = Shared();
  const std::string out = w.dir.file("features.csv");
  REQUIRE(w.Cli({"export", "features", "--dataset", w.dataset, "--output", out}).exit_code == 0);
  CHECK(testutil::Slurp(out) == testutil::Slurp(w.dataset + "/county_features.csv"));
  const RunResult map = w.Cli({"export", "map", "--dataset", w.dataset, "--format", "json",
                               "--feature", "f9", "--demographic", "mask_use"});
  REQUIRE(map.exit_code == 0);
  CHECK(json::parse(map.out)["data"]["demographic"] == "mask_use");
  CHECK(w.Cli({"export", "nothing", "--dataset", w.dataset}).exit_code == 1);
}

TEST_CASE("cli: serve answers, reloads and shuts down") {
  auto& w = Shared();
  testutil::Process server({MORALMAP_CLI, "serve", "--dataset", w.dataset, "--port", "0"},
                           w.dir.file("serve"));
  const int port = testutil::WaitForServing(server, std::chrono::seconds(5));
  REQUIRE_MESSAGE(port > 0, server.err());
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/meta");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["version"] == 1);
  res = client.Post("/admin/reload", "", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  res = client.Get("/api/meta");
  REQUIRE(res);
  CHECK(json::parse(res->body)["version"] == 2);
  server.Signal(SIGTERM);
  CHECK(server.Wait() == 0);

  testutil::Process missing({MORALMAP_CLI, "serve", "--dataset", w.dir.file("missing")},
                            w.dir.file("serve_missing"));
  CHECK(missing.Wait() != 0);
}

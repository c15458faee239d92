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

// moralmap: generate, validate, build, query, export and serve datasets.
//
// Exit codes: 0 success, 1 validation, 2 data error, 3 runtime failure.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moralmap/analytics/features.h"
#include "moralmap/analytics/summary.h"
#include "moralmap/analytics/timeline.h"
#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"
#include "moralmap/inference/model.h"
#include "moralmap/pipeline/build.h"
#include "moralmap/pipeline/config.h"
#include "moralmap/pipeline/dataset.h"
#include "moralmap/service/api.h"
#include "moralmap/service/payloads.h"
#include "moralmap/service/snapshot.h"
#include "moralmap/synthgen/synthgen.h"
#include "moralmap/version.h"

namespace mm = moralmap;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

int ExitCodeFor(mm::ErrorKind kind) {
  switch (kind) {
    case mm::ErrorKind::kValidation:
      return kExitValidation;
    case mm::ErrorKind::kData:
      return kExitData;
    case mm::ErrorKind::kRuntime:
      return kExitRuntime;
  }
  return kExitRuntime;
}

struct GlobalOptions {
  std::string config;
};

std::optional<mm::PipelineConfig> MaybeConfig(const GlobalOptions& g) {
  if (g.config.empty()) return std::nullopt;
  return mm::LoadConfig(g.config);
}

mm::PipelineConfig RequireConfig(const GlobalOptions& g, const char* command) {
  if (g.config.empty()) {
    throw mm::ValidationError(std::string(command) + " requires --config");
  }
  return mm::LoadConfig(g.config);
}

std::string DatasetDir(const GlobalOptions& g, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (auto config = MaybeConfig(g)) return config->paths.output_dir;
  throw mm::ValidationError("no dataset directory: pass --dataset or --config");
}

std::string Trimmed(std::string_view s) { return std::string(mm::Trim(s)); }

// "dep ~ a + b" -> ModelSpec.
mm::ModelSpec ParseFormula(const std::string& text) {
  const auto tilde = text.find('~');
  if (tilde == std::string::npos) {
    throw mm::ValidationError("model must look like 'dependent~a+b', got '" + text + "'");
  }
  mm::ModelSpec spec;
  spec.dependent = Trimmed(std::string_view(text).substr(0, tilde));
  std::string_view rest = std::string_view(text).substr(tilde + 1);
  while (true) {
    const auto plus = rest.find('+');
    spec.predictors.push_back(Trimmed(rest.substr(0, plus)));
    if (spec.predictors.back().empty()) {
      throw mm::ValidationError("empty predictor in model '" + text + "'");
    }
    if (plus == std::string_view::npos) break;
    rest.remove_prefix(plus + 1);
  }
  if (spec.dependent.empty()) throw mm::ValidationError("empty dependent in model '" + text + "'");
  return spec;
}

void WriteOutput(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  mm::WriteFile(path, contents);
}

std::string JsonText(const json& j) { return j.dump() + "\n"; }

// validate ------------------------------------------------------------------

int RunValidate(const GlobalOptions& g) {
  const mm::PipelineConfig config = RequireConfig(g, "validate");
  const auto problems = mm::ValidateConfig(config);
  if (problems.empty()) {
    std::cout << "ok: " << g.config << "\n";
    return kExitOk;
  }
  for (const auto& p : problems) std::cerr << "error: " << p << "\n";
  std::cerr << problems.size() << " problem(s) found\n";
  return kExitValidation;
}

// synth ---------------------------------------------------------------------

struct SynthOptions {
  std::string spec;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> tweets;
};

int RunSynth(const SynthOptions& o) {
  mm::SynthSpec spec = mm::SynthSpec::Default();
  if (!o.spec.empty()) {
    json j;
    try {
      j = json::parse(mm::ReadFile(o.spec), nullptr, true, true);
    } catch (const json::exception& e) {
      throw mm::ValidationError(o.spec + ": " + e.what());
    }
    spec = mm::SynthSpec::FromJson(j);
  }
  if (o.seed) spec.seed = *o.seed;
  if (o.tweets) spec.n_tweets = *o.tweets;
  spec.Validate();
  const mm::GroundTruth truth = mm::GenerateToDirectory(spec, o.out);
  std::cout << "wrote " << o.out << ": " << truth.n_counties << " counties, "
            << truth.tweet_counties.size() << " tweets, seed " << truth.seed << "\n";
  return kExitOk;
}

// build ---------------------------------------------------------------------

struct BuildOptions {
  std::string output;
  std::optional<int> workers;
};

int RunBuild(const GlobalOptions& g, const BuildOptions& o) {
  mm::PipelineConfig config = RequireConfig(g, "build");
  if (!o.output.empty()) config.paths.output_dir = o.output;
  if (o.workers) config.workers = *o.workers;
  const mm::BuildReport report = mm::BuildDataset(config);
  const json& c = report.manifest.at("counts");
  std::cout << "built " << report.output_dir << ": " << c.at("assigned") << " tweets in "
            << c.at("feature_counties") << " counties (" << c.at("rejected") << " rejected, "
            << c.at("unassigned") << " unassigned, " << c.at("coverage_gaps")
            << " coverage gaps)\n";
  return kExitOk;
}

// serve ---------------------------------------------------------------------

struct ServeOptions {
  std::string dataset;
  std::string host;
  std::optional<int> port;
};

int RunServe(const GlobalOptions& g, const ServeOptions& o) {
  const auto config = MaybeConfig(g);
  const std::string dir = DatasetDir(g, o.dataset);
  std::string host = config ? config->host : "127.0.0.1";
  int port = config ? config->port : 8080;
  if (!o.host.empty()) host = o.host;
  if (o.port) port = *o.port;
  if (port < 0 || port > 65535) throw mm::ValidationError("port out of range");

  // Worker threads inherit the mask; the main thread collects the signal.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  mm::SnapshotStore store;
  const std::uint64_t version = store.Load(dir);
  mm::HttpServer server(store, host, port);
  server.Start();
  std::cout << "serving " << dir << " (snapshot " << version << ") on http://" << host << ":"
            << server.port() << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  std::cout << "shutting down" << std::endl;
  server.Stop();
  server.Wait();
  return kExitOk;
}

// stats ---------------------------------------------------------------------

struct StatsOptions {
  std::string dataset;
  bool summary = false;
  bool timeline = false;
  std::optional<int> width;
  std::vector<std::string> pearson;
  std::string model;
  bool no_intercept = false;
  std::string weight;
  std::string filter;
  bool json = false;
  bool full_precision = false;
};

int RunStats(const GlobalOptions& g, const StatsOptions& o) {
  if (!o.summary && !o.timeline && o.pearson.empty() && o.model.empty()) {
    throw mm::ValidationError("stats needs one of --summary, --timeline, --pearson, --model");
  }
  if ((o.no_intercept || !o.weight.empty()) && o.model.empty()) {
    throw mm::ValidationError("--no-intercept and --weight apply to --model");
  }
  const auto snapshot = mm::Snapshot::Create(mm::LoadDataset(DatasetDir(g, o.dataset)), 1);
  const mm::Snapshot& s = *snapshot;
  const mm::Taxonomy& taxonomy = s.data.taxonomy;
  const mm::TweetFilter filter = mm::ParseFilter(o.filter, taxonomy);
  std::string out;
  if (o.summary) {
    const auto rows = mm::SummarizeFrames(s.data.tweets, filter);
    out += o.json ? JsonText(mm::Envelope(s, filter, mm::SummaryToJson(rows, taxonomy)))
                  : mm::FormatSummary(rows, taxonomy);
  }
  if (o.timeline) {
    const int width = o.width.value_or(s.data.bin_width_days);
    if (o.json) {
      out += JsonText(mm::Envelope(s, filter, mm::TimelineData(s, width, filter)));
    } else {
      if (width < 1) throw mm::ValidationError("width must be a positive number of days");
      out += mm::FormatTimeline(
          mm::BinTimeline(s.data.tweets, s.data.contexts, width, filter, s.data.study_window),
          taxonomy, s.data.has_covid);
    }
  }
  if (!o.pearson.empty()) {
    const auto& x = o.pearson[0];
    const auto& y = o.pearson[1];
    out += o.json ? JsonText(mm::Envelope(
                        s, filter, mm::CorrelationData(s, x, y, filter, o.full_precision)))
                  : mm::FormatCorrelation(mm::CorrelationFit(s, x, y, filter), x, y);
  }
  if (!o.model.empty()) {
    mm::ModelSpec spec = ParseFormula(o.model);
    spec.include_intercept = !o.no_intercept;
    if (!o.weight.empty()) spec.weight = o.weight;
    out += o.json ? JsonText(mm::Envelope(
                        s, filter, mm::InferenceData(s, spec, filter, o.full_precision)))
                  : mm::FormatModelFit(mm::InferenceFit(s, spec, filter));
  }
  std::cout << out;
  return kExitOk;
}

// export --------------------------------------------------------------------

struct ExportOptions {
  std::string dataset;
  std::string what;
  std::string format = "csv";
  std::string output;
  std::string filter;
  std::optional<int> width;
  std::string feature = "f1";
  std::string demographic = "vote_margin";
};

std::string MapCsv(std::span<const mm::MapRecord> records, const std::string& demographic) {
  std::string out = "fips,name,state,n_tweets,value," + mm::EscapeField(demographic) + "\n";
  for (const auto& r : records) {
    out += mm::JoinRecord({r.fips.str(), r.name, r.state, std::to_string(r.n_tweets),
                           mm::FormatDouble(r.value),
                           r.demographic_value ? mm::FormatDouble(*r.demographic_value) : std::string()}) +
           "\n";
  }
  return out;
}

int RunExport(const GlobalOptions& g, const ExportOptions& o) {
  const auto snapshot = mm::Snapshot::Create(mm::LoadDataset(DatasetDir(g, o.dataset)), 1);
  const mm::Snapshot& s = *snapshot;
  const mm::TweetFilter filter = mm::ParseFilter(o.filter, s.data.taxonomy);
  const bool as_json = o.format == "json";
  std::string out;
  if (o.what == "features") {
    if (as_json) {
      json rows = json::array();
      const auto subset = mm::FilterTweets(s.data.tweets, filter);
      const auto agg = filter.empty() ? s.aggregation
                                      : mm::AggregateCounties(subset, s.data.contexts);
      for (const auto& [fips, v] : agg.vectors) rows.push_back(mm::FeatureVectorToJson(v));
      out = JsonText(mm::Envelope(s, filter, rows));
    } else if (filter.empty()) {
      out = mm::FormatFeatureTable(s.aggregation.vectors);
    } else {
      const auto subset = mm::FilterTweets(s.data.tweets, filter);
      out = mm::FormatFeatureTable(mm::AggregateCounties(subset, s.data.contexts).vectors);
    }
  } else if (o.what == "timeline") {
    const int width = o.width.value_or(s.data.bin_width_days);
    if (width < 1) throw mm::ValidationError("width must be a positive number of days");
    out = as_json ? JsonText(mm::Envelope(s, filter, mm::TimelineData(s, width, filter)))
                  : mm::FormatTimeline(mm::BinTimeline(s.data.tweets, s.data.contexts, width,
                                                       filter, s.data.study_window),
                                       s.data.taxonomy, s.data.has_covid);
  } else if (o.what == "summary") {
    const auto rows = mm::SummarizeFrames(s.data.tweets, filter);
    out = as_json ? JsonText(mm::Envelope(s, filter, mm::SummaryToJson(rows, s.data.taxonomy)))
                  : mm::FormatSummary(rows, s.data.taxonomy);
  } else if (o.what == "map") {
    const auto feature = mm::ParseFeature(o.feature);
    if (!feature) throw mm::ValidationError("unknown feature '" + o.feature + "'");
    const auto resolved = s.table.Resolve(o.demographic);
    if (!resolved || mm::ParseFeature(*resolved)) {
      throw mm::ValidationError("unknown demographic '" + o.demographic + "'");
    }
    out = as_json
              ? JsonText(mm::Envelope(s, filter, mm::MapData(s, *feature, o.demographic, filter)))
              : MapCsv(mm::MapRecords(s, *feature, o.demographic, filter), *resolved);
  } else if (o.what == "counties") {
    if (!as_json) throw mm::ValidationError("counties export is GeoJSON only; use --format json");
    out = JsonText(mm::CountiesData(s));
  } else {
    throw mm::ValidationError("unknown export '" + o.what + "'");
  }
  WriteOutput(o.output, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moralmap: moral-frame geospatial analytics pipeline"};
  app.set_version_flag("--version", std::string(mm::kVersion));
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config, "Pipeline config file (JSON)");

  auto* validate = app.add_subcommand("validate", "Check every path and schema in the config");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset with ground truth");
  synth_cmd->add_option("--spec", synth.spec, "Synthesis spec (JSON); defaults when omitted");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "Override the spec seed");
  synth_cmd->add_option("--tweets", synth.tweets, "Override the tweet count");

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Ingest, geotag, join and aggregate");
  build_cmd->add_option("--output", build.output, "Override paths.output_dir");
  build_cmd->add_option("--workers", build.workers, "Override worker thread count")
      ->check(CLI::Range(1, 256));

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a built dataset over HTTP");
  serve_cmd->add_option("--dataset", serve.dataset, "Built dataset directory");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Port (0 picks a free port)");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Query a built dataset");
  stats_cmd->add_option("--dataset", stats.dataset, "Built dataset directory");
  stats_cmd->add_flag("--summary", stats.summary, "Per-frame summary");
  stats_cmd->add_flag("--timeline", stats.timeline, "Timeline bins");
  stats_cmd->add_option("--width", stats.width, "Timeline bin width in days");
  stats_cmd->add_option("--pearson", stats.pearson, "Correlate two county fields")
      ->expected(2);
  stats_cmd->add_option("--model", stats.model, "OLS model, e.g. 'f4~vote_margin+mask_use'");
  stats_cmd->add_flag("--no-intercept", stats.no_intercept, "Fit without an intercept");
  stats_cmd->add_option("--weight", stats.weight, "Observation weight field");
  stats_cmd->add_option("--filter", stats.filter, "Tweet filter, e.g. 'frame=Care;state=TX'");
  stats_cmd->add_flag("--json", stats.json, "Emit the service's JSON payloads");
  stats_cmd->add_flag("--full-precision", stats.full_precision,
                      "Do not round fit statistics to 6 significant digits");

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export", "Export tables or payloads");
  export_cmd->add_option("what", exp.what, "features | timeline | summary | map | counties")
      ->required()
      ->check(CLI::IsMember({"features", "timeline", "summary", "map", "counties"}));
  export_cmd->add_option("--dataset", exp.dataset, "Built dataset directory");
  export_cmd->add_option("--format", exp.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  export_cmd->add_option("--output", exp.output, "Output file; stdout when omitted");
  export_cmd->add_option("--filter", exp.filter, "Tweet filter");
  export_cmd->add_option("--width", exp.width, "Timeline bin width in days");
  export_cmd->add_option("--feature", exp.feature, "Map feature, f1..f14");
  export_cmd->add_option("--demographic", exp.demographic, "Map demographic field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate) return RunValidate(global);
    if (*synth_cmd) return RunSynth(synth);
    if (*build_cmd) return RunBuild(global, build);
    if (*serve_cmd) return RunServe(global, serve);
    if (*stats_cmd) return RunStats(global, stats);
    if (*export_cmd) return RunExport(global, exp);
  } catch (const mm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

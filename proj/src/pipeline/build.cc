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

#include "moralmap/pipeline/build.h"

#include <filesystem>
#include <map>

#include "moralmap/analytics/features.h"
#include "moralmap/analytics/summary.h"
#include "moralmap/analytics/timeline.h"
#include "moralmap/common/checksum.h"
#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/geo/geotag.h"
#include "moralmap/geo/spatial_index.h"
#include "moralmap/pipeline/dataset.h"
#include "moralmap/version.h"

namespace moralmap {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Rethrows with the source named, keeping the error kind.
template <typename F>
auto WithSource(const std::string& source, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind(source, 0) == 0) throw;
    throw Error(e.kind(), source + ": " + what);
  }
}

std::string SourceRejects(const char* source, std::span<const RowReject> rejects) {
  std::string out;
  for (const auto& r : rejects) {
    out += std::string(source) + "\t" + std::to_string(r.line_no) + "\t" + r.reason + "\n";
  }
  return out;
}

json InputEntry(const std::string& declared, const std::string& resolved) {
  return {{"path", declared}, {"sha256", Sha256File(resolved)}};
}

}  // namespace

BuildReport BuildDataset(const PipelineConfig& config) {
  const auto problems = ValidateConfig(config);
  if (!problems.empty()) {
    std::string message = "config is invalid:";
    for (const auto& p : problems) message += "\n  " + p;
    throw ValidationError(message);
  }
  const PipelinePaths& paths = config.paths;
  const Taxonomy taxonomy = config.LoadTaxonomy();

  const auto counties = WithSource(paths.boundaries, [&] {
    return LoadCounties(paths.boundaries, config.boundary_schema, config.exclusions);
  });
  ParsedCorpus parsed = WithSource(paths.corpus, [&] {
    return ParseCorpusFile(paths.corpus, config.corpus_schema, taxonomy, config.workers);
  });
  std::size_t stance_estimated = 0;
  if (!config.lexicon.empty()) {
    stance_estimated = EnrichStances(parsed.tweets, config.lexicon);
  }
  const SpatialIndex index = SpatialIndex::Build(counties);
  const GeotagResult geo = GeotagCorpus(parsed.tweets, index, counties, config.workers);

  const auto census = WithSource(paths.census, [&] {
    return LoadCensus(paths.census, config.census_schema);
  });
  const auto elections = WithSource(paths.elections, [&] {
    return LoadElections(paths.elections, config.election_schema);
  });
  std::optional<LoadResult<double>> mask;
  if (!paths.mask.empty()) {
    mask = WithSource(paths.mask, [&] {
      return LoadMaskSurvey(paths.mask, config.mask_schema, config.EffectiveMaskWeights());
    });
  }
  std::optional<LoadResult<CovidSeries>> covid;
  if (!paths.covid.empty()) {
    std::optional<DateRange> range = config.study_window;
    if (!range) {
      for (const auto& t : geo.tagged) {
        const Date d = DateOf(t.tweet.timestamp);
        if (!range) {
          range = DateRange{d, d};
        } else {
          range->from = std::min(range->from, d);
          range->to = std::max(range->to, d);
        }
      }
    }
    if (!range) {
      throw DataError(paths.covid + ": no study window and no tweets to derive one");
    }
    covid = WithSource(paths.covid, [&] {
      return LoadCovid(paths.covid, config.covid_schema, *range);
    });
  }

  std::vector<Fips> universe;
  for (const auto& c : counties) universe.push_back(c.fips);
  const JoinResult join =
      JoinContext(census.entries, elections.entries, mask ? &mask->entries : nullptr,
                  covid ? &covid->entries : nullptr, universe);
  const CountyAggregation agg = AggregateCounties(geo.tagged, join.contexts);
  const auto timeline = BinTimeline(geo.tagged, join.contexts, config.bin_width_days,
                                    TweetFilter{}, config.study_window);
  const auto summary = SummarizeFrames(geo.tagged, TweetFilter{});

  std::vector<CountyGeometry> simplified;
  simplified.reserve(counties.size());
  for (const auto& c : counties) simplified.push_back(Simplify(c, config.simplify_tolerance));

  std::map<std::string, std::string> files;
  files[artifact::kTaggedCorpus] = FormatTaggedCorpus(geo.tagged, taxonomy);
  files[artifact::kRejects] = FormatRejectReport(parsed.rejects);
  std::string unassigned;
  for (const auto& id : geo.unassigned_ids) unassigned += id + "\n";
  files[artifact::kUnassigned] = unassigned;
  files[artifact::kCountyCounts] = FormatAssignmentCounts(geo.tagged, counties);
  files[artifact::kFeatures] = FormatFeatureTable(agg.vectors);
  files[artifact::kContext] =
      FormatContextTable(join.contexts, config.census_schema.demographic_columns);
  files[artifact::kContextRejects] =
      SourceRejects("census", census.rejects) +
      SourceRejects("elections", elections.rejects) +
      (mask ? SourceRejects("mask", mask->rejects) : std::string());
  if (covid) files[artifact::kCovid] = FormatCovidTable(join.contexts);
  files[artifact::kCoverage] = FormatCoverageReport(join.coverage);
  files[artifact::kTimeline] = FormatTimeline(timeline, taxonomy, covid.has_value());
  files[artifact::kSummary] = FormatSummary(summary, taxonomy);
  files[artifact::kCounties] = CountiesToGeoJson(simplified, 6).dump() + "\n";
  files[artifact::kTaxonomy] = taxonomy.ToJson().dump(2) + "\n";

  json inputs = {
      {"corpus", InputEntry(config.declared.corpus, paths.corpus)},
      {"boundaries", InputEntry(config.declared.boundaries, paths.boundaries)},
      {"census", InputEntry(config.declared.census, paths.census)},
      {"elections", InputEntry(config.declared.elections, paths.elections)}};
  if (!paths.mask.empty()) inputs["mask"] = InputEntry(config.declared.mask, paths.mask);
  if (!paths.covid.empty()) inputs["covid"] = InputEntry(config.declared.covid, paths.covid);
  if (!paths.taxonomy.empty() && !config.taxonomy_inline) {
    inputs["taxonomy"] = InputEntry(config.declared.taxonomy, paths.taxonomy);
  }
  json artifacts = json::object();
  for (const auto& [name, contents] : files) artifacts[name] = Sha256Hex(contents);

  std::int64_t tweets_without_context = 0;
  for (const auto& [fips, n] : agg.missing_context) tweets_without_context += n;
  json settings = {
      {"bin_width_days", config.bin_width_days},
      {"exclusions", config.exclusions},
      {"has_covid", covid.has_value()},
      {"has_mask", mask.has_value()},
      {"simplify_tolerance", config.simplify_tolerance},
      {"study_window", nullptr},
      {"stance_lexicon", {{"pro", config.lexicon.pro()}, {"anti", config.lexicon.anti()}}}};
  if (config.study_window) {
    settings["study_window"] = {{"from", FormatDate(config.study_window->from)},
                                {"to", FormatDate(config.study_window->to)}};
  }
  json manifest = {
      {"format", "moralmap-dataset"},
      {"format_version", kDatasetFormatVersion},
      {"tool_version", kVersion},
      {"inputs", inputs},
      {"artifacts", artifacts},
      {"settings", settings},
      {"counts",
       {{"records", parsed.total_records},
        {"accepted", parsed.tweets.size()},
        {"rejected", parsed.rejects.size()},
        {"stance_estimated", stance_estimated},
        {"assigned", geo.tagged.size()},
        {"unassigned", geo.unassigned()},
        {"counties", counties.size()},
        {"contexts", join.contexts.size()},
        {"coverage_gaps", join.coverage.size()},
        {"feature_counties", agg.vectors.size()},
        {"null_counties", agg.null_counties.size()},
        {"tweets_without_context", tweets_without_context},
        {"timeline_bins", timeline.size()}}}};

  std::error_code ec;
  fs::create_directories(paths.output_dir, ec);
  if (ec) throw IoError("cannot create " + paths.output_dir + ": " + ec.message());
  for (const auto& [name, contents] : files) {
    WriteFile((fs::path(paths.output_dir) / name).string(), contents);
  }
  WriteFile((fs::path(paths.output_dir) / artifact::kManifest).string(),
            manifest.dump(2) + "\n");
  return {paths.output_dir, manifest};
}

}  // namespace moralmap

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

#include "moralmap/pipeline/dataset.h"

#include <filesystem>
#include <set>

#include "moralmap/common/checksum.h"
#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"
#include "moralmap/corpus/corpus_parser.h"

namespace moralmap {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string PathIn(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

std::string OptionalCell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

Fips ParseFipsOrThrow(const std::string& text, const std::string& where) {
  auto f = Fips::Parse(text);
  if (!f) throw DataError(where + ": bad fips '" + text + "'");
  return *f;
}

double ParseDoubleOrThrow(const std::string& text, const std::string& where) {
  auto v = ParseDouble(text);
  if (!v) throw DataError(where + ": bad number '" + text + "'");
  return *v;
}

std::vector<TaggedTweet> ReadTaggedCorpus(const std::string& path,
                                          const Taxonomy& taxonomy) {
  const std::string text = ReadFile(path);
  const ParsedCorpus parsed =
      ParseCorpus(text, CorpusSchema::Default(), taxonomy);
  if (!parsed.rejects.empty()) {
    throw DataError(path + ":" + std::to_string(parsed.rejects.front().line_no) +
                    ": " + parsed.rejects.front().reason);
  }
  const CsvTable table = ParseCsv(text);
  const auto fips_col = table.Column("fips");
  const auto state_col = table.Column("state");
  if (!fips_col || !state_col) throw DataError(path + ": missing fips/state columns");
  if (table.rows.size() != parsed.tweets.size()) {
    throw DataError(path + ": row count mismatch");
  }
  std::vector<TaggedTweet> out;
  out.reserve(parsed.tweets.size());
  for (std::size_t i = 0; i < parsed.tweets.size(); ++i) {
    const auto& row = table.rows[i];
    out.push_back({parsed.tweets[i],
                   ParseFipsOrThrow(row.cells[*fips_col],
                                    path + ":" + std::to_string(row.line_no)),
                   row.cells[*state_col]});
  }
  return out;
}

std::vector<CountyContext> ReadContextTable(const std::string& path,
                                            std::vector<std::string>& demographics) {
  const CsvTable table = ReadCsvFile(path);
  if (!table.malformed_lines.empty()) {
    throw DataError(path + ":" + std::to_string(table.malformed_lines.front()) +
                    ": malformed row");
  }
  const std::vector<std::string> fixed = {"fips", "population", "dem_share",
                                          "rep_share", "vote_margin", "mask_use"};
  if (table.header.size() < fixed.size() ||
      !std::equal(fixed.begin(), fixed.end(), table.header.begin())) {
    throw DataError(path + ": unexpected header");
  }
  demographics.assign(table.header.begin() + fixed.size(), table.header.end());
  std::vector<CountyContext> out;
  for (const auto& row : table.rows) {
    const std::string where = path + ":" + std::to_string(row.line_no);
    CountyContext c{ParseFipsOrThrow(row.cells[0], where), 0, {}, 0, 0, 0, {}, {}};
    const auto pop = ParseInt(row.cells[1]);
    if (!pop) throw DataError(where + ": bad population");
    c.population = *pop;
    c.dem_share = ParseDoubleOrThrow(row.cells[2], where);
    c.rep_share = ParseDoubleOrThrow(row.cells[3], where);
    c.vote_margin = ParseDoubleOrThrow(row.cells[4], where);
    if (!row.cells[5].empty()) c.mask_use = ParseDoubleOrThrow(row.cells[5], where);
    for (std::size_t k = 0; k < demographics.size(); ++k) {
      const std::string& cell = row.cells[fixed.size() + k];
      if (!cell.empty()) c.demographics[demographics[k]] = ParseDoubleOrThrow(cell, where);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void ReadCovidTable(const std::string& path, std::vector<CountyContext>& contexts) {
  const CsvTable table = ReadCsvFile(path);
  if (!table.malformed_lines.empty() || table.header.size() != 4) {
    throw DataError(path + ": malformed covid table");
  }
  std::map<Fips, CovidSeries> series;
  for (const auto& row : table.rows) {
    const std::string where = path + ":" + std::to_string(row.line_no);
    const Fips fips = ParseFipsOrThrow(row.cells[0], where);
    const auto date = ParseDate(row.cells[1]);
    const auto cases = ParseInt(row.cells[2]);
    const auto deaths = ParseInt(row.cells[3]);
    if (!date || !cases || !deaths) throw DataError(where + ": bad covid row");
    auto [it, inserted] = series.try_emplace(fips, CovidSeries{*date, {}, {}});
    CovidSeries& s = it->second;
    if (s.start_date + std::chrono::days{static_cast<int>(s.days())} != *date) {
      throw DataError(where + ": covid dates not consecutive");
    }
    s.cases.push_back(*cases);
    s.deaths.push_back(*deaths);
  }
  for (auto& c : contexts) {
    auto it = series.find(c.fips);
    if (it != series.end()) c.covid = std::move(it->second);
  }
}

std::vector<CoverageEntry> ReadCoverage(const std::string& path) {
  const CsvTable table = ReadCsvFile(path);
  std::vector<CoverageEntry> out;
  for (const auto& row : table.rows) {
    CoverageEntry e{ParseFipsOrThrow(row.cells[0], path + ":" + std::to_string(row.line_no)),
                    {}};
    std::string_view sources = row.cells[1];
    while (!sources.empty()) {
      const auto pos = sources.find(';');
      e.missing_sources.emplace_back(sources.substr(0, pos));
      if (pos == std::string_view::npos) break;
      sources.remove_prefix(pos + 1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::string FormatTaggedCorpus(std::span<const TaggedTweet> tweets,
                               const Taxonomy& taxonomy) {
  std::string out =
      "id,timestamp,lat,lon,frame,stance,sentiment,vivid,virality,hashtags,text,"
      "fips,state\n";
  for (const auto& t : tweets) {
    std::string tags;
    for (const auto& h : t.tweet.hashtags) tags += (tags.empty() ? "" : ";") + h;
    out += JoinRecord({t.tweet.id, FormatTimestamp(t.tweet.timestamp),
                       FormatDouble(t.tweet.latitude), FormatDouble(t.tweet.longitude),
                       taxonomy.Name(t.tweet.frame),
                       std::string(StanceName(t.tweet.stance)),
                       FormatDouble(t.tweet.sentiment),
                       t.tweet.vivid ? "true" : "false",
                       FormatDouble(t.tweet.virality), tags,
                       t.tweet.text.value_or(""), t.fips.str(), t.state}) +
           "\n";
  }
  return out;
}

std::string FormatContextTable(std::span<const CountyContext> contexts,
                               const std::vector<std::string>& demographics) {
  std::string out = "fips,population,dem_share,rep_share,vote_margin,mask_use";
  for (const auto& d : demographics) out += "," + EscapeField(d);
  out += "\n";
  for (const auto& c : contexts) {
    out += c.fips.str() + "," + std::to_string(c.population) + "," +
           FormatDouble(c.dem_share) + "," + FormatDouble(c.rep_share) + "," +
           FormatDouble(c.vote_margin) + "," + OptionalCell(c.mask_use);
    for (const auto& d : demographics) {
      auto it = c.demographics.find(d);
      out += "," + (it == c.demographics.end() ? std::string() : FormatDouble(it->second));
    }
    out += "\n";
  }
  return out;
}

std::string FormatCovidTable(std::span<const CountyContext> contexts) {
  std::string out = "fips,date,cases,deaths\n";
  for (const auto& c : contexts) {
    if (!c.covid) continue;
    for (std::size_t d = 0; d < c.covid->days(); ++d) {
      out += c.fips.str() + "," +
             FormatDate(c.covid->start_date + std::chrono::days{static_cast<int>(d)}) +
             "," + std::to_string(c.covid->cases[d]) + "," +
             std::to_string(c.covid->deaths[d]) + "\n";
    }
  }
  return out;
}

Dataset LoadDataset(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("dataset directory not found: " + dir);
  const std::string manifest_path = PathIn(dir, artifact::kManifest);
  if (!fs::is_regular_file(manifest_path, ec)) {
    throw DataError(dir + ": no " + std::string(artifact::kManifest));
  }
  Dataset ds;
  try {
    ds.manifest = json::parse(ReadFile(manifest_path));
  } catch (const json::exception& e) {
    throw DataError(manifest_path + ": " + e.what());
  }
  try {
    if (ds.manifest.at("format_version").get<int>() != kDatasetFormatVersion) {
      throw DataError(manifest_path + ": unsupported format version");
    }
    for (const auto& [name, sha] : ds.manifest.at("artifacts").items()) {
      const std::string path = PathIn(dir, name.c_str());
      if (!fs::is_regular_file(path, ec)) throw DataError(dir + ": missing artifact " + name);
      if (Sha256File(path) != sha.get<std::string>()) {
        throw DataError(path + ": checksum does not match manifest");
      }
    }
    const json& settings = ds.manifest.at("settings");
    ds.bin_width_days = settings.at("bin_width_days").get<int>();
    ds.has_covid = settings.at("has_covid").get<bool>();
    ds.has_mask = settings.at("has_mask").get<bool>();
    if (!settings.at("study_window").is_null()) {
      const auto from = ParseDate(settings["study_window"].at("from").get<std::string>());
      const auto to = ParseDate(settings["study_window"].at("to").get<std::string>());
      if (!from || !to) throw DataError(manifest_path + ": bad study window");
      ds.study_window = DateRange{*from, *to};
    }
  } catch (const json::exception& e) {
    throw DataError(manifest_path + ": " + e.what());
  }

  ds.taxonomy = Taxonomy::FromJson(json::parse(ReadFile(PathIn(dir, artifact::kTaxonomy))));
  ds.tweets = ReadTaggedCorpus(PathIn(dir, artifact::kTaggedCorpus), ds.taxonomy);
  ds.counties = ParseCounties(json::parse(ReadFile(PathIn(dir, artifact::kCounties))),
                              BoundarySchema{}, {});
  ds.contexts = ReadContextTable(PathIn(dir, artifact::kContext), ds.demographic_columns);
  if (ds.has_covid) ReadCovidTable(PathIn(dir, artifact::kCovid), ds.contexts);
  ds.coverage = ReadCoverage(PathIn(dir, artifact::kCoverage));

  std::set<Fips> geometry, context, covered;
  for (const auto& c : ds.counties) geometry.insert(c.fips);
  for (const auto& c : ds.contexts) context.insert(c.fips);
  for (const auto& c : ds.coverage) covered.insert(c.fips);
  for (const auto& t : ds.tweets) {
    if (!geometry.count(t.fips)) {
      throw DataError(dir + ": tweet " + t.tweet.id + " maps to " + t.fips.str() +
                      " which has no geometry");
    }
    if (!context.count(t.fips) && !covered.count(t.fips)) {
      throw DataError(dir + ": county " + t.fips.str() +
                      " has neither context nor a coverage entry");
    }
  }
  return ds;
}

}  // namespace moralmap

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

#include "moralmap/pipeline/config.h"

#include <filesystem>
#include <fstream>

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/fips.h"

namespace moralmap {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kTopLevelKeys[] = {
    "paths",         "corpus_schema",  "boundary_schema", "census_schema",
    "election_schema", "mask_schema",  "covid_schema",    "exclusions",
    "study_window",  "taxonomy",       "stance_lexicon",  "bin_width_days",
    "mask_weights",  "simplify_tolerance", "workers",     "serve"};

std::string Resolve(const std::string& base, const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  if (p.is_absolute()) return p.lexically_normal().string();
  return (fs::path(base) / p).lexically_normal().string();
}

std::string PathField(const json& paths, const char* key) {
  if (!paths.contains(key) || paths[key].is_null()) return {};
  return paths[key].get<std::string>();
}

// First line of a delimited file split into trimmed column names.
std::optional<std::vector<std::string>> HeaderOf(const std::string& path,
                                                 char delimiter = ',') {
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line)) return std::nullopt;
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto cells = SplitRecord(line, delimiter);
  if (!cells) return std::nullopt;
  for (auto& c : *cells) c = std::string(Trim(c));
  return cells;
}

void CheckColumns(const std::string& label, const std::string& path,
                  const std::vector<std::string>& columns, char delimiter,
                  std::vector<std::string>& problems) {
  const auto header = HeaderOf(path, delimiter);
  if (!header) {
    problems.push_back(label + ": cannot read header of " + path);
    return;
  }
  for (const auto& c : columns) {
    if (c.empty()) continue;
    if (std::find(header->begin(), header->end(), c) == header->end()) {
      problems.push_back(label + ": column '" + c + "' not found in " + path);
    }
  }
}

}  // namespace

Taxonomy PipelineConfig::LoadTaxonomy() const {
  if (taxonomy_inline) return Taxonomy::FromJson(*taxonomy_inline);
  return Taxonomy::Load(paths.taxonomy);
}

std::vector<double> PipelineConfig::EffectiveMaskWeights() const {
  if (!mask_weights.empty()) return mask_weights;
  return DefaultMaskWeights(mask_schema.category_columns.size());
}

PipelineConfig ParseConfig(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(kTopLevelKeys), std::end(kTopLevelKeys),
                     [&](const char* k) { return key == k; }) ==
        std::end(kTopLevelKeys)) {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
  PipelineConfig c;
  c.base_dir = base_dir;
  try {
    const json paths = j.value("paths", json::object());
    c.declared.corpus = PathField(paths, "corpus");
    c.declared.boundaries = PathField(paths, "boundaries");
    c.declared.census = PathField(paths, "census");
    c.declared.elections = PathField(paths, "elections");
    c.declared.mask = PathField(paths, "mask");
    c.declared.covid = PathField(paths, "covid");
    c.declared.taxonomy = PathField(paths, "taxonomy");
    c.declared.output_dir = PathField(paths, "output_dir");
    if (c.declared.output_dir.empty()) c.declared.output_dir = "build";
    c.paths = {Resolve(base_dir, c.declared.corpus),
               Resolve(base_dir, c.declared.boundaries),
               Resolve(base_dir, c.declared.census),
               Resolve(base_dir, c.declared.elections),
               Resolve(base_dir, c.declared.mask),
               Resolve(base_dir, c.declared.covid),
               Resolve(base_dir, c.declared.taxonomy),
               Resolve(base_dir, c.declared.output_dir)};

    c.corpus_schema = CorpusSchema::FromJson(j.value("corpus_schema", json()));
    if (j.contains("boundary_schema")) {
      const json& b = j["boundary_schema"];
      c.boundary_schema.fips_property = b.value("fips", c.boundary_schema.fips_property);
      c.boundary_schema.name_property = b.value("name", c.boundary_schema.name_property);
      c.boundary_schema.state_property = b.value("state", c.boundary_schema.state_property);
    }
    c.census_schema = CensusSchema::FromJson(j.value("census_schema", json::object()));
    c.election_schema =
        ElectionSchema::FromJson(j.value("election_schema", json::object()));
    c.mask_schema = MaskSchema::FromJson(j.value("mask_schema", json::object()));
    c.covid_schema = CovidSchema::FromJson(j.value("covid_schema", json::object()));
    for (const auto& e : j.value("exclusions", json::array())) {
      c.exclusions.insert(e.get<std::string>());
    }
    if (j.contains("study_window") && !j["study_window"].is_null()) {
      const auto from = ParseDate(j["study_window"].at("from").get<std::string>());
      const auto to = ParseDate(j["study_window"].at("to").get<std::string>());
      if (!from || !to) throw ValidationError("study_window needs YYYY-MM-DD dates");
      c.study_window = DateRange{*from, *to};
      c.corpus_schema.study_window = c.study_window;
    }
    if (j.contains("taxonomy") && !j["taxonomy"].is_null()) {
      c.taxonomy_inline = j["taxonomy"];
    }
    c.lexicon = StanceLexicon::FromJson(j.value("stance_lexicon", json()));
    c.bin_width_days = j.value("bin_width_days", c.bin_width_days);
    if (j.contains("mask_weights")) {
      c.mask_weights = j["mask_weights"].get<std::vector<double>>();
    }
    c.simplify_tolerance = j.value("simplify_tolerance", c.simplify_tolerance);
    c.workers = j.value("workers", c.workers);
    if (j.contains("serve")) {
      c.host = j["serve"].value("host", c.host);
      c.port = j["serve"].value("port", c.port);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig LoadConfig(const std::string& path) {
  const std::string text = ReadFile(path);
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  const fs::path parent = fs::path(path).parent_path();
  return ParseConfig(j, parent.empty() ? "." : parent.string());
}

std::vector<std::string> ValidateConfig(const PipelineConfig& c) {
  std::vector<std::string> problems;
  auto require_file = [&](const char* field, const std::string& path,
                          bool optional) {
    if (path.empty()) {
      if (!optional) problems.push_back(std::string("paths.") + field + ": not set");
      return false;
    }
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
      problems.push_back(std::string("paths.") + field + ": file not found: " + path);
      return false;
    }
    return true;
  };

  if (require_file("corpus", c.paths.corpus, false) &&
      c.corpus_schema.format == CorpusSchema::Format::kDelimited) {
    std::vector<std::string> columns;
    for (const auto& [logical, column] : c.corpus_schema.fields) columns.push_back(column);
    CheckColumns("corpus_schema", c.paths.corpus, columns,
                 c.corpus_schema.delimiter, problems);
  }
  try {
    c.corpus_schema.Validate();
  } catch (const Error& e) {
    problems.push_back(std::string("corpus_schema: ") + e.what());
  }
  if (require_file("boundaries", c.paths.boundaries, false)) {
    try {
      const json g = json::parse(ReadFile(c.paths.boundaries));
      if (!g.is_object() || g.value("type", "") != "FeatureCollection") {
        problems.push_back("paths.boundaries: not a FeatureCollection: " +
                           c.paths.boundaries);
      }
    } catch (const std::exception& e) {
      problems.push_back("paths.boundaries: " + std::string(e.what()));
    }
  }
  if (require_file("census", c.paths.census, false)) {
    std::vector<std::string> columns = {c.census_schema.fips_column,
                                        c.census_schema.population_column};
    columns.insert(columns.end(), c.census_schema.demographic_columns.begin(),
                   c.census_schema.demographic_columns.end());
    CheckColumns("census_schema", c.paths.census, columns, ',', problems);
  }
  if (require_file("elections", c.paths.elections, false)) {
    const auto& s = c.election_schema;
    CheckColumns("election_schema", c.paths.elections,
                 {s.fips_column, s.dem_column, s.rep_column, s.total_column,
                  s.other_column},
                 ',', problems);
  }
  if (require_file("mask", c.paths.mask, true)) {
    std::vector<std::string> columns = {c.mask_schema.fips_column};
    columns.insert(columns.end(), c.mask_schema.category_columns.begin(),
                   c.mask_schema.category_columns.end());
    CheckColumns("mask_schema", c.paths.mask, columns, ',', problems);
  }
  if (require_file("covid", c.paths.covid, true)) {
    const auto& s = c.covid_schema;
    CheckColumns("covid_schema", c.paths.covid,
                 {s.fips_column, s.date_column, s.cases_column, s.deaths_column},
                 ',', problems);
  }
  if (!c.taxonomy_inline) {
    if (require_file("taxonomy", c.paths.taxonomy, true)) {
      try {
        c.LoadTaxonomy();
      } catch (const std::exception& e) {
        problems.push_back("paths.taxonomy: " + std::string(e.what()));
      }
    }
  } else {
    try {
      c.LoadTaxonomy();
    } catch (const std::exception& e) {
      problems.push_back("taxonomy: " + std::string(e.what()));
    }
  }
  for (const auto& s : c.exclusions) {
    if (!IsValidStateAbbrev(s)) problems.push_back("exclusions: unknown state code '" + s + "'");
  }
  if (c.study_window && !c.study_window->valid()) {
    problems.push_back("study_window: 'from' is after 'to'");
  }
  if (c.bin_width_days < 1) problems.push_back("bin_width_days: must be >= 1");
  if (!c.mask_weights.empty() &&
      c.mask_weights.size() != c.mask_schema.category_columns.size()) {
    problems.push_back("mask_weights: expected " +
                       std::to_string(c.mask_schema.category_columns.size()) +
                       " weights, got " + std::to_string(c.mask_weights.size()));
  }
  if (!(c.simplify_tolerance >= 0.0)) {
    problems.push_back("simplify_tolerance: must be >= 0");
  }
  if (c.workers < 1) problems.push_back("workers: must be >= 1");
  if (c.port < 0 || c.port > 65535) problems.push_back("serve.port: out of range");
  return problems;
}

}  // namespace moralmap

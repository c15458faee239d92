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

// County context: census, 2016 presidential vote, mask-use survey and daily
// COVID-19 counts, joined by FIPS.

#ifndef MORALMAP_CONTEXT_CONTEXT_H_
#define MORALMAP_CONTEXT_CONTEXT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "moralmap/common/dates.h"
#include "moralmap/common/fips.h"

namespace moralmap {

struct RowReject {
  std::size_t line_no = 0;
  std::string reason;
};

struct CensusRecord {
  std::int64_t population = 0;
  std::map<std::string, double> demographics;
};

struct ElectionRecord {
  double dem_share = 0.0;
  double rep_share = 0.0;
};

// Cumulative daily counts starting at `start_date`. After cleaning both
// series are non-decreasing and deaths[i] <= cases[i].
struct CovidSeries {
  Date start_date;
  std::vector<std::int64_t> cases;
  std::vector<std::int64_t> deaths;

  std::size_t days() const { return cases.size(); }
  // New counts on day i; the first day has no predecessor and reports 0.
  std::int64_t NewCases(std::size_t i) const;
  std::int64_t NewDeaths(std::size_t i) const;
  bool operator==(const CovidSeries&) const = default;
};

struct CountyContext {
  Fips fips;
  std::int64_t population = 0;
  std::map<std::string, double> demographics;
  double dem_share = 0.0;
  double rep_share = 0.0;
  double vote_margin = 0.0;  // dem_share - rep_share
  std::optional<double> mask_use;
  std::optional<CovidSeries> covid;
};

template <typename T>
struct LoadResult {
  std::map<Fips, T> entries;
  std::vector<RowReject> rejects;
};

struct CensusSchema {
  std::string fips_column = "fips";
  std::string population_column = "population";
  std::vector<std::string> demographic_columns;

  static CensusSchema FromJson(const nlohmann::json& config);
};

struct ElectionSchema {
  enum class Mode { kCounts, kShares };
  std::string fips_column = "fips";
  Mode mode = Mode::kCounts;
  std::string dem_column = "dem_votes";
  std::string rep_column = "rep_votes";
  // Counts mode: the total is read from total_column when set, else
  // dem + rep + other_column (when set).
  std::string total_column = "total_votes";
  std::string other_column;

  static ElectionSchema FromJson(const nlohmann::json& config);
};

struct MaskSchema {
  std::string fips_column = "fips";
  // Ordered from least to most frequent mask use.
  std::vector<std::string> category_columns = {"never", "rarely", "sometimes",
                                               "frequently", "always"};
  static MaskSchema FromJson(const nlohmann::json& config);
};

// Linear 0..1 over the ordered categories.
std::vector<double> DefaultMaskWeights(std::size_t n_categories);

struct CovidSchema {
  std::string fips_column = "fips";
  std::string date_column = "date";
  std::string cases_column = "cases";
  std::string deaths_column = "deaths";
  static CovidSchema FromJson(const nlohmann::json& config);
};

// Row-level rejects: unparseable fips or numbers, non-positive population,
// duplicate fips. Throws DataError when a mapped column is missing.
LoadResult<CensusRecord> LoadCensus(const std::string& path,
                                    const CensusSchema& schema);

// Row-level rejects: zero or negative totals, shares outside [0,1] or
// summing above 1, duplicate fips.
LoadResult<ElectionRecord> LoadElections(const std::string& path,
                                         const ElectionSchema& schema);

// mask_use = clamp(sum(weight_c * share_c), 0, 1). A row whose shares sum
// outside [0.98, 1.02] is a DataError naming the line.
LoadResult<double> LoadMaskSurvey(const std::string& path,
                                  const MaskSchema& schema,
                                  const std::vector<double>& weights);

// Long format (fips, date, cumulative cases, cumulative deaths). Rows before
// the range seed the first day; gaps are forward-filled and decreases
// clamped to the running maximum. Malformed rows and an empty range are
// DataErrors naming the file and line.
LoadResult<CovidSeries> LoadCovid(const std::string& path,
                                  const CovidSchema& schema,
                                  const DateRange& range);

// Running maximum; identity on an already-monotone series.
std::vector<std::int64_t> RunningMax(std::span<const std::int64_t> values);

// Applies the cleaning rule: running max on both series, then deaths capped
// at cases.
void CleanCovidSeries(CovidSeries& series);

struct CoverageEntry {
  Fips fips;
  std::vector<std::string> missing_sources;
};

struct JoinResult {
  std::vector<CountyContext> contexts;  // sorted by fips
  std::vector<CoverageEntry> coverage;  // universe counties dropped
};

// Inner join over `universe`. Optional sources (mask, covid) only count as
// missing when provided. Throws DataError when nothing joins.
JoinResult JoinContext(const std::map<Fips, CensusRecord>& census,
                       const std::map<Fips, ElectionRecord>& elections,
                       const std::map<Fips, double>* mask,
                       const std::map<Fips, CovidSeries>* covid,
                       std::span<const Fips> universe);

// `fips,missing_sources` with sources joined by ';'.
std::string FormatCoverageReport(std::span<const CoverageEntry> coverage);

std::string FormatRowRejects(std::span<const RowReject> rejects);

}  // namespace moralmap

#endif  // MORALMAP_CONTEXT_CONTEXT_H_

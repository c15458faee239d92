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

#include "moralmap/context/context.h"

#include <algorithm>
#include <cmath>

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"

namespace moralmap {
namespace {

std::size_t RequireColumn(const CsvTable& table, const std::string& name,
                          const std::string& path) {
  auto col = table.Column(name);
  if (!col) throw DataError(path + ": missing column '" + name + "'");
  return *col;
}

void AddMalformed(const CsvTable& table, std::vector<RowReject>& rejects) {
  for (std::size_t line : table.malformed_lines) {
    rejects.push_back({line, "malformed-row"});
  }
}

void SortRejects(std::vector<RowReject>& rejects) {
  std::sort(rejects.begin(), rejects.end(),
            [](const auto& a, const auto& b) { return a.line_no < b.line_no; });
}

std::string GetString(const nlohmann::json& config, const char* key,
                      const std::string& fallback) {
  if (!config.is_object() || !config.contains(key)) return fallback;
  return config[key].get<std::string>();
}

std::string LineRef(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

}  // namespace

std::int64_t CovidSeries::NewCases(std::size_t i) const {
  return i == 0 ? 0 : cases[i] - cases[i - 1];
}

std::int64_t CovidSeries::NewDeaths(std::size_t i) const {
  return i == 0 ? 0 : deaths[i] - deaths[i - 1];
}

CensusSchema CensusSchema::FromJson(const nlohmann::json& config) {
  CensusSchema s;
  s.fips_column = GetString(config, "fips", s.fips_column);
  s.population_column = GetString(config, "population", s.population_column);
  if (config.is_object() && config.contains("demographics")) {
    s.demographic_columns =
        config["demographics"].get<std::vector<std::string>>();
  }
  return s;
}

ElectionSchema ElectionSchema::FromJson(const nlohmann::json& config) {
  ElectionSchema s;
  s.fips_column = GetString(config, "fips", s.fips_column);
  const std::string mode = GetString(config, "mode", "counts");
  if (mode == "counts") {
    s.mode = Mode::kCounts;
  } else if (mode == "shares") {
    s.mode = Mode::kShares;
    s.dem_column = "dem_share";
    s.rep_column = "rep_share";
    s.total_column.clear();
  } else {
    throw ValidationError("election mode must be counts or shares: " + mode);
  }
  s.dem_column = GetString(config, "dem", s.dem_column);
  s.rep_column = GetString(config, "rep", s.rep_column);
  s.total_column = GetString(config, "total", s.total_column);
  s.other_column = GetString(config, "other", s.other_column);
  return s;
}

MaskSchema MaskSchema::FromJson(const nlohmann::json& config) {
  MaskSchema s;
  s.fips_column = GetString(config, "fips", s.fips_column);
  if (config.is_object() && config.contains("categories")) {
    s.category_columns = config["categories"].get<std::vector<std::string>>();
  }
  if (s.category_columns.empty()) {
    throw ValidationError("mask schema needs at least one category");
  }
  return s;
}

std::vector<double> DefaultMaskWeights(std::size_t n_categories) {
  std::vector<double> w(n_categories, 1.0);
  if (n_categories <= 1) return w;
  for (std::size_t i = 0; i < n_categories; ++i) {
    w[i] = static_cast<double>(i) / static_cast<double>(n_categories - 1);
  }
  return w;
}

CovidSchema CovidSchema::FromJson(const nlohmann::json& config) {
  CovidSchema s;
  s.fips_column = GetString(config, "fips", s.fips_column);
  s.date_column = GetString(config, "date", s.date_column);
  s.cases_column = GetString(config, "cases", s.cases_column);
  s.deaths_column = GetString(config, "deaths", s.deaths_column);
  return s;
}

LoadResult<CensusRecord> LoadCensus(const std::string& path,
                                    const CensusSchema& schema) {
  const CsvTable table = ReadCsvFile(path);
  const std::size_t fips_col = RequireColumn(table, schema.fips_column, path);
  const std::size_t pop_col =
      RequireColumn(table, schema.population_column, path);
  std::vector<std::pair<std::string, std::size_t>> demo_cols;
  for (const auto& name : schema.demographic_columns) {
    demo_cols.emplace_back(name, RequireColumn(table, name, path));
  }

  LoadResult<CensusRecord> out;
  AddMalformed(table, out.rejects);
  for (const auto& row : table.rows) {
    const auto fips = Fips::Parse(row.cells[fips_col]);
    if (!fips) {
      out.rejects.push_back({row.line_no, "bad-fips"});
      continue;
    }
    const auto pop = ParseDouble(row.cells[pop_col]);
    if (!pop || *pop != std::floor(*pop)) {
      out.rejects.push_back({row.line_no, "non-numeric"});
      continue;
    }
    if (*pop <= 0) {
      out.rejects.push_back({row.line_no, "non-positive"});
      continue;
    }
    CensusRecord record;
    record.population = static_cast<std::int64_t>(*pop);
    bool ok = true;
    for (const auto& [name, col] : demo_cols) {
      const auto value = ParseDouble(row.cells[col]);
      if (!value) {
        ok = false;
        break;
      }
      record.demographics[name] = *value;
    }
    if (!ok) {
      out.rejects.push_back({row.line_no, "non-numeric"});
      continue;
    }
    if (!out.entries.emplace(*fips, std::move(record)).second) {
      out.rejects.push_back({row.line_no, "duplicate-fips"});
    }
  }
  SortRejects(out.rejects);
  return out;
}

LoadResult<ElectionRecord> LoadElections(const std::string& path,
                                         const ElectionSchema& schema) {
  const CsvTable table = ReadCsvFile(path);
  const std::size_t fips_col = RequireColumn(table, schema.fips_column, path);
  const std::size_t dem_col = RequireColumn(table, schema.dem_column, path);
  const std::size_t rep_col = RequireColumn(table, schema.rep_column, path);
  std::optional<std::size_t> total_col;
  std::optional<std::size_t> other_col;
  if (schema.mode == ElectionSchema::Mode::kCounts) {
    if (!schema.total_column.empty()) {
      total_col = RequireColumn(table, schema.total_column, path);
    } else if (!schema.other_column.empty()) {
      other_col = RequireColumn(table, schema.other_column, path);
    }
  }

  LoadResult<ElectionRecord> out;
  AddMalformed(table, out.rejects);
  for (const auto& row : table.rows) {
    const auto fips = Fips::Parse(row.cells[fips_col]);
    if (!fips) {
      out.rejects.push_back({row.line_no, "bad-fips"});
      continue;
    }
    const auto dem = ParseDouble(row.cells[dem_col]);
    const auto rep = ParseDouble(row.cells[rep_col]);
    if (!dem || !rep) {
      out.rejects.push_back({row.line_no, "non-numeric"});
      continue;
    }
    ElectionRecord record;
    if (schema.mode == ElectionSchema::Mode::kCounts) {
      double total = *dem + *rep;
      if (total_col || other_col) {
        const auto extra = ParseDouble(row.cells[total_col ? *total_col : *other_col]);
        if (!extra) {
          out.rejects.push_back({row.line_no, "non-numeric"});
          continue;
        }
        total = total_col ? *extra : total + *extra;
        if (other_col && *extra < 0) {
          out.rejects.push_back({row.line_no, "negative-count"});
          continue;
        }
      }
      if (*dem < 0 || *rep < 0) {
        out.rejects.push_back({row.line_no, "negative-count"});
        continue;
      }
      if (total <= 0) {
        out.rejects.push_back({row.line_no, "zero-total"});
        continue;
      }
      if (*dem + *rep > total) {
        out.rejects.push_back({row.line_no, "inconsistent-total"});
        continue;
      }
      record.dem_share = *dem / total;
      record.rep_share = *rep / total;
    } else {
      if (*dem < 0 || *dem > 1 || *rep < 0 || *rep > 1) {
        out.rejects.push_back({row.line_no, "out-of-range"});
        continue;
      }
      if (*dem + *rep > 1.0 + 1e-9) {
        out.rejects.push_back({row.line_no, "share-sum"});
        continue;
      }
      record.dem_share = *dem;
      record.rep_share = *rep;
    }
    if (!out.entries.emplace(*fips, record).second) {
      out.rejects.push_back({row.line_no, "duplicate-fips"});
    }
  }
  SortRejects(out.rejects);
  return out;
}

LoadResult<double> LoadMaskSurvey(const std::string& path,
                                  const MaskSchema& schema,
                                  const std::vector<double>& weights) {
  if (weights.size() != schema.category_columns.size()) {
    throw ValidationError("mask weights (" + std::to_string(weights.size()) +
                          ") do not match categories (" +
                          std::to_string(schema.category_columns.size()) +
                          ")");
  }
  const CsvTable table = ReadCsvFile(path);
  const std::size_t fips_col = RequireColumn(table, schema.fips_column, path);
  std::vector<std::size_t> cols;
  for (const auto& c : schema.category_columns) {
    cols.push_back(RequireColumn(table, c, path));
  }

  LoadResult<double> out;
  AddMalformed(table, out.rejects);
  for (const auto& row : table.rows) {
    const auto fips = Fips::Parse(row.cells[fips_col]);
    if (!fips) {
      out.rejects.push_back({row.line_no, "bad-fips"});
      continue;
    }
    double sum = 0.0;
    double use = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto share = ParseDouble(row.cells[cols[i]]);
      if (!share || *share < 0.0 || *share > 1.0) {
        ok = false;
        break;
      }
      sum += *share;
      use += weights[i] * *share;
    }
    if (!ok) {
      out.rejects.push_back({row.line_no, "non-numeric"});
      continue;
    }
    if (sum < 0.98 || sum > 1.02) {
      throw DataError(LineRef(path, row.line_no) +
                      ": mask shares sum to " + FormatSignificant(sum, 6) +
                      ", expected 1");
    }
    if (!out.entries.emplace(*fips, std::clamp(use, 0.0, 1.0)).second) {
      out.rejects.push_back({row.line_no, "duplicate-fips"});
    }
  }
  SortRejects(out.rejects);
  return out;
}

std::vector<std::int64_t> RunningMax(std::span<const std::int64_t> values) {
  std::vector<std::int64_t> out(values.begin(), values.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] = std::max(out[i], out[i - 1]);
  }
  return out;
}

void CleanCovidSeries(CovidSeries& series) {
  series.cases = RunningMax(series.cases);
  series.deaths = RunningMax(series.deaths);
  for (std::size_t i = 0; i < series.deaths.size(); ++i) {
    series.deaths[i] = std::min(series.deaths[i], series.cases[i]);
  }
}

LoadResult<CovidSeries> LoadCovid(const std::string& path,
                                  const CovidSchema& schema,
                                  const DateRange& range) {
  if (!range.valid()) throw ValidationError("covid date range is inverted");
  const CsvTable table = ReadCsvFile(path);
  const std::size_t fips_col = RequireColumn(table, schema.fips_column, path);
  const std::size_t date_col = RequireColumn(table, schema.date_column, path);
  const std::size_t cases_col = RequireColumn(table, schema.cases_column, path);
  const std::size_t deaths_col =
      RequireColumn(table, schema.deaths_column, path);
  if (!table.malformed_lines.empty()) {
    throw DataError(LineRef(path, table.malformed_lines.front()) +
                    ": malformed row");
  }

  struct Observation {
    std::int64_t cases;
    std::int64_t deaths;
  };
  // fips -> day -> observation
  std::map<Fips, std::map<Date, Observation>> observed;
  bool any_in_range = false;
  for (const auto& row : table.rows) {
    const auto fips = Fips::Parse(row.cells[fips_col]);
    const auto date = ParseDate(row.cells[date_col]);
    const auto cases = ParseInt(row.cells[cases_col]);
    const auto deaths = ParseInt(row.cells[deaths_col]);
    if (!fips) throw DataError(LineRef(path, row.line_no) + ": bad fips");
    if (!date) throw DataError(LineRef(path, row.line_no) + ": bad date");
    if (!cases || !deaths || *cases < 0 || *deaths < 0) {
      throw DataError(LineRef(path, row.line_no) +
                      ": cases/deaths must be non-negative integers");
    }
    if (*date > range.to) continue;
    if (range.Contains(*date)) any_in_range = true;
    auto [it, inserted] =
        observed[*fips].emplace(*date, Observation{*cases, *deaths});
    if (!inserted) {
      throw DataError(LineRef(path, row.line_no) + ": duplicate date for " +
                      fips->str());
    }
  }
  if (!any_in_range) {
    throw DataError(path + ": no rows within " + FormatDate(range.from) +
                    ".." + FormatDate(range.to));
  }

  LoadResult<CovidSeries> out;
  const auto n_days = static_cast<std::size_t>(range.days());
  for (const auto& [fips, by_day] : observed) {
    CovidSeries series{range.from, std::vector<std::int64_t>(n_days),
                       std::vector<std::int64_t>(n_days)};
    Observation carry{0, 0};
    auto it = by_day.begin();
    while (it != by_day.end() && it->first < range.from) {
      carry = it->second;
      ++it;
    }
    for (std::size_t d = 0; d < n_days; ++d) {
      const Date day = range.from + std::chrono::days{d};
      if (it != by_day.end() && it->first == day) {
        carry = it->second;
        ++it;
      }
      series.cases[d] = carry.cases;
      series.deaths[d] = carry.deaths;
    }
    CleanCovidSeries(series);
    out.entries.emplace(fips, std::move(series));
  }
  return out;
}

JoinResult JoinContext(const std::map<Fips, CensusRecord>& census,
                       const std::map<Fips, ElectionRecord>& elections,
                       const std::map<Fips, double>* mask,
                       const std::map<Fips, CovidSeries>* covid,
                       std::span<const Fips> universe) {
  std::vector<Fips> sorted(universe.begin(), universe.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  JoinResult out;
  for (const auto& fips : sorted) {
    std::vector<std::string> missing;
    auto c = census.find(fips);
    auto e = elections.find(fips);
    if (c == census.end()) missing.emplace_back("census");
    if (e == elections.end()) missing.emplace_back("elections");
    std::optional<double> mask_use;
    if (mask) {
      auto m = mask->find(fips);
      if (m == mask->end()) {
        missing.emplace_back("mask");
      } else {
        mask_use = m->second;
      }
    }
    std::optional<CovidSeries> series;
    if (covid) {
      auto s = covid->find(fips);
      if (s == covid->end()) {
        missing.emplace_back("covid");
      } else {
        series = s->second;
      }
    }
    if (!missing.empty()) {
      out.coverage.push_back({fips, std::move(missing)});
      continue;
    }
    out.contexts.push_back(CountyContext{
        fips, c->second.population, c->second.demographics,
        e->second.dem_share, e->second.rep_share,
        e->second.dem_share - e->second.rep_share, mask_use,
        std::move(series)});
  }
  if (out.contexts.empty()) {
    throw DataError("context join is empty: no county has every source");
  }
  return out;
}

std::string FormatCoverageReport(std::span<const CoverageEntry> coverage) {
  std::string out = "fips,missing_sources\n";
  for (const auto& entry : coverage) {
    out += entry.fips.str();
    out.push_back(',');
    for (std::size_t i = 0; i < entry.missing_sources.size(); ++i) {
      if (i > 0) out.push_back(';');
      out += entry.missing_sources[i];
    }
    out.push_back('\n');
  }
  return out;
}

std::string FormatRowRejects(std::span<const RowReject> rejects) {
  std::string out;
  for (const auto& r : rejects) {
    out += std::to_string(r.line_no) + "\t" + r.reason + "\n";
  }
  return out;
}

}  // namespace moralmap

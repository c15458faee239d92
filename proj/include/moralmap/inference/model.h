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

// County-level model specification and fitting over the joined feature and
// context table.

#ifndef MORALMAP_INFERENCE_MODEL_H_
#define MORALMAP_INFERENCE_MODEL_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "moralmap/analytics/features.h"
#include "moralmap/common/fips.h"
#include "moralmap/context/context.h"
#include "moralmap/inference/regression.h"

namespace moralmap {

// One row per context county. Feature columns are keyed by code (f1..f14)
// and are absent for null-vector counties; context columns are population,
// dem_share, rep_share, vote_margin, mask_use and each demographic.
class CountyTable {
 public:
  using Column = std::vector<std::optional<double>>;

  static CountyTable Build(std::span<const CountyContext> contexts,
                           const std::map<Fips, CountyFeatureVector>& vectors);

  std::size_t rows() const { return fips_.size(); }
  const std::vector<Fips>& fips() const { return fips_; }

  // Canonical column name for a feature code, feature name or context
  // field; nullopt when unknown.
  std::optional<std::string> Resolve(std::string_view name) const;
  // Throws InferenceError(kUnknownField) naming the field.
  const Column& column(std::string_view name) const;
  // Canonical names in table order: f1..f14, then context fields.
  std::vector<std::string> field_names() const;

 private:
  std::vector<Fips> fips_;
  std::vector<std::string> order_;
  std::map<std::string, Column, std::less<>> columns_;
};

struct ModelSpec {
  std::string dependent;  // a feature, f1..f14 or its name
  std::vector<std::string> predictors;
  bool include_intercept = true;
  // Optional weight column (for example population).
  std::optional<std::string> weight;

  // Throws InferenceError(kInvalidSpec): empty or duplicate predictors,
  // dependent among the predictors, dependent not a feature.
  void Validate() const;
  // {"dependent", "predictors", "include_intercept", "weight"}
  static ModelSpec FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
  bool operator==(const ModelSpec&) const = default;
};

// Builds the design from complete rows (null vectors and missing fields
// excluded, counted in excluded_rows) and fits OLS. Needs at least
// predictors + 2 complete rows.
ModelFit RunInference(const ModelSpec& spec, const CountyTable& table);

// Pearson correlation over rows where both fields are present.
CorrelationResult CorrelateFields(const CountyTable& table, std::string_view x,
                                  std::string_view y);

// Numbers rounded to 6 significant digits unless `full_precision`;
// non-finite values become null.
nlohmann::json ModelFitToJson(const ModelFit& fit, bool full_precision = false);
ModelFit ModelFitFromJson(const nlohmann::json& j);
nlohmann::json CorrelationToJson(const CorrelationResult& result,
                                 bool full_precision = false);

// Delimited coefficient table: term,estimate,std_error,t_stat,p_value then
// summary rows for r_squared, rss, n, dof and excluded.
std::string FormatModelFit(const ModelFit& fit);
std::string FormatCorrelation(const CorrelationResult& result,
                              std::string_view x, std::string_view y);

}  // namespace moralmap

#endif  // MORALMAP_INFERENCE_MODEL_H_

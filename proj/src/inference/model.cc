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

#include "moralmap/inference/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "moralmap/common/numbers.h"

namespace moralmap {
namespace {

using Code = InferenceError::Code;
using nlohmann::json;

constexpr std::string_view kContextFields[] = {
    "population", "dem_share", "rep_share", "vote_margin", "mask_use"};

json Number(double v, bool full_precision) {
  if (!std::isfinite(v)) return nullptr;
  return full_precision ? v : RoundSignificant(v, 6);
}

double ReadNumber(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

std::string Cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return FormatSignificant(v, 6);
}

}  // namespace

CountyTable CountyTable::Build(
    std::span<const CountyContext> contexts,
    const std::map<Fips, CountyFeatureVector>& vectors) {
  CountyTable table;
  for (int f = 0; f < kNumFeatures; ++f) {
    table.order_.emplace_back(FeatureCode(FeatureAt(f)));
  }
  for (auto field : kContextFields) table.order_.emplace_back(field);
  std::set<std::string> demographics;
  for (const auto& c : contexts) {
    for (const auto& [name, value] : c.demographics) demographics.insert(name);
  }
  for (const auto& name : demographics) {
    if (std::find(table.order_.begin(), table.order_.end(), name) ==
            table.order_.end() &&
        !ParseFeature(name)) {
      table.order_.push_back(name);
    }
  }
  for (const auto& name : table.order_) table.columns_[name].reserve(contexts.size());

  for (const auto& c : contexts) {
    table.fips_.push_back(c.fips);
    auto it = vectors.find(c.fips);
    for (int f = 0; f < kNumFeatures; ++f) {
      auto& col = table.columns_[std::string(FeatureCode(FeatureAt(f)))];
      if (it == vectors.end()) {
        col.push_back(std::nullopt);
      } else {
        col.push_back(it->second.values[f]);
      }
    }
    table.columns_["population"].push_back(static_cast<double>(c.population));
    table.columns_["dem_share"].push_back(c.dem_share);
    table.columns_["rep_share"].push_back(c.rep_share);
    table.columns_["vote_margin"].push_back(c.vote_margin);
    table.columns_["mask_use"].push_back(c.mask_use);
    for (std::size_t k = std::size(kContextFields) + kNumFeatures;
         k < table.order_.size(); ++k) {
      const std::string& name = table.order_[k];
      auto d = c.demographics.find(name);
      table.columns_[name].push_back(
          d == c.demographics.end() ? std::nullopt : std::optional<double>(d->second));
    }
  }
  return table;
}

std::optional<std::string> CountyTable::Resolve(std::string_view name) const {
  if (auto f = ParseFeature(name)) return std::string(FeatureCode(*f));
  if (columns_.find(name) != columns_.end()) return std::string(name);
  return std::nullopt;
}

const CountyTable::Column& CountyTable::column(std::string_view name) const {
  auto resolved = Resolve(name);
  if (!resolved) {
    throw InferenceError(Code::kUnknownField,
                         "unknown field '" + std::string(name) + "'",
                         std::string(name));
  }
  return columns_.find(*resolved)->second;
}

std::vector<std::string> CountyTable::field_names() const { return order_; }

void ModelSpec::Validate() const {
  if (!ParseFeature(dependent)) {
    throw InferenceError(Code::kInvalidSpec,
                         "dependent '" + dependent +
                             "' is not a tweet feature (f1..f14)",
                         dependent);
  }
  if (predictors.empty()) {
    throw InferenceError(Code::kInvalidSpec, "model needs at least one predictor");
  }
  std::set<std::string> seen;
  const std::string dep = std::string(FeatureCode(*ParseFeature(dependent)));
  for (const auto& p : predictors) {
    const auto f = ParseFeature(p);
    const std::string key = f ? std::string(FeatureCode(*f)) : p;
    if (!seen.insert(key).second) {
      throw InferenceError(Code::kInvalidSpec,
                           "duplicate predictor '" + p + "'", p);
    }
    if (key == dep) {
      throw InferenceError(Code::kInvalidSpec,
                           "dependent '" + dependent + "' is also a predictor", p);
    }
  }
}

ModelSpec ModelSpec::FromJson(const json& j) {
  if (!j.is_object()) {
    throw InferenceError(Code::kInvalidSpec, "model spec must be an object");
  }
  ModelSpec spec;
  try {
    spec.dependent = j.at("dependent").get<std::string>();
    spec.predictors = j.at("predictors").get<std::vector<std::string>>();
    if (j.contains("include_intercept")) {
      spec.include_intercept = j.at("include_intercept").get<bool>();
    }
    if (j.contains("weight") && !j.at("weight").is_null()) {
      spec.weight = j.at("weight").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw InferenceError(Code::kInvalidSpec,
                         std::string("malformed model spec: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "dependent" && key != "predictors" &&
        key != "include_intercept" && key != "weight" && key != "filter") {
      throw InferenceError(Code::kInvalidSpec,
                           "unknown model spec key '" + key + "'");
    }
  }
  return spec;
}

json ModelSpec::ToJson() const {
  json j = {{"dependent", dependent},
            {"predictors", predictors},
            {"include_intercept", include_intercept}};
  if (weight) j["weight"] = *weight;
  return j;
}

ModelFit RunInference(const ModelSpec& spec, const CountyTable& table) {
  spec.Validate();
  const auto& y_col = table.column(spec.dependent);
  std::vector<const CountyTable::Column*> x_cols;
  for (const auto& p : spec.predictors) x_cols.push_back(&table.column(p));
  const CountyTable::Column* w_col =
      spec.weight ? &table.column(*spec.weight) : nullptr;

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    bool complete = y_col[i].has_value();
    for (const auto* c : x_cols) complete = complete && (*c)[i].has_value();
    if (w_col) complete = complete && (*w_col)[i].has_value();
    if (complete) rows.push_back(i);
  }
  const std::size_t p = spec.predictors.size();
  if (rows.size() < p + 2) {
    throw InferenceError(Code::kTooFewObservations,
                         "too few complete county rows: " +
                             std::to_string(rows.size()) + " (need at least " +
                             std::to_string(p + 2) + ")");
  }
  Matrix x(rows.size(), p);
  std::vector<double> y(rows.size());
  OlsOptions options;
  options.include_intercept = spec.include_intercept;
  options.names = spec.predictors;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    y[r] = *y_col[rows[r]];
    for (std::size_t j = 0; j < p; ++j) x(r, j) = *(*x_cols[j])[rows[r]];
    if (w_col) options.weights.push_back(*(*w_col)[rows[r]]);
  }
  ModelFit fit = FitOls(x, y, options);
  fit.excluded_rows = table.rows() - rows.size();
  return fit;
}

CorrelationResult CorrelateFields(const CountyTable& table, std::string_view x,
                                  std::string_view y) {
  const auto& xc = table.column(x);
  const auto& yc = table.column(y);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    if (xc[i] && yc[i]) {
      xs.push_back(*xc[i]);
      ys.push_back(*yc[i]);
    }
  }
  try {
    return Pearson(xs, ys);
  } catch (const InferenceError& e) {
    if (e.code() != Code::kZeroVariance) throw;
    const std::string field(e.column() == "x" ? x : y);
    throw InferenceError(Code::kZeroVariance,
                         "pearson: field '" + field + "' has zero variance",
                         field);
  }
}

json ModelFitToJson(const ModelFit& fit, bool full_precision) {
  json terms = json::array();
  for (std::size_t i = 0; i < fit.terms.size(); ++i) {
    terms.push_back({{"term", fit.terms[i]},
                     {"estimate", Number(fit.coefficients[i], full_precision)},
                     {"std_error", Number(fit.std_errors[i], full_precision)},
                     {"t_stat", Number(fit.t_stats[i], full_precision)},
                     {"p_value", Number(fit.p_values[i], full_precision)}});
  }
  return {{"terms", terms},
          {"r_squared", Number(fit.r_squared, full_precision)},
          {"rss", Number(fit.rss, full_precision)},
          {"n_observations", fit.n_observations},
          {"dof", fit.dof},
          {"excluded_rows", fit.excluded_rows}};
}

ModelFit ModelFitFromJson(const json& j) {
  ModelFit fit;
  for (const auto& t : j.at("terms")) {
    fit.terms.push_back(t.at("term").get<std::string>());
    fit.coefficients.push_back(ReadNumber(t.at("estimate")));
    fit.std_errors.push_back(ReadNumber(t.at("std_error")));
    fit.t_stats.push_back(ReadNumber(t.at("t_stat")));
    fit.p_values.push_back(ReadNumber(t.at("p_value")));
  }
  fit.r_squared = ReadNumber(j.at("r_squared"));
  fit.rss = ReadNumber(j.at("rss"));
  fit.n_observations = j.at("n_observations").get<std::size_t>();
  fit.dof = j.at("dof").get<std::size_t>();
  fit.excluded_rows = j.at("excluded_rows").get<std::size_t>();
  return fit;
}

json CorrelationToJson(const CorrelationResult& result, bool full_precision) {
  return {{"r", Number(result.r, full_precision)},
          {"n", result.n},
          {"t_stat", Number(result.t_stat, full_precision)},
          {"p_value", Number(result.p_value, full_precision)}};
}

std::string FormatModelFit(const ModelFit& fit) {
  std::string out = "term,estimate,std_error,t_stat,p_value\n";
  for (std::size_t i = 0; i < fit.terms.size(); ++i) {
    out += fit.terms[i] + "," + Cell(fit.coefficients[i]) + "," +
           Cell(fit.std_errors[i]) + "," + Cell(fit.t_stats[i]) + "," +
           Cell(fit.p_values[i]) + "\n";
  }
  out += "r_squared," + Cell(fit.r_squared) + "\n";
  out += "rss," + Cell(fit.rss) + "\n";
  out += "n_observations," + std::to_string(fit.n_observations) + "\n";
  out += "dof," + std::to_string(fit.dof) + "\n";
  out += "excluded_rows," + std::to_string(fit.excluded_rows) + "\n";
  return out;
}

std::string FormatCorrelation(const CorrelationResult& result,
                              std::string_view x, std::string_view y) {
  std::string out = "x,y,r,n,t_stat,p_value\n";
  out += std::string(x) + "," + std::string(y) + "," + Cell(result.r) + "," +
         std::to_string(result.n) + "," + Cell(result.t_stat) + "," +
         Cell(result.p_value) + "\n";
  return out;
}

}  // namespace moralmap

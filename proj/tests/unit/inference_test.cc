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

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "doctest.h"
#include "moralmap/analytics/features.h"
#include "moralmap/inference/distributions.h"
#include "moralmap/inference/model.h"
#include "moralmap/inference/regression.h"
#include "moralmap/pipeline/build.h"
#include "moralmap/pipeline/config.h"
#include "moralmap/pipeline/dataset.h"
#include "moralmap/synthgen/synthgen.h"
#include "oracles.h"
#include "test_util.h"

using namespace moralmap;
using Code = InferenceError::Code;

namespace {

double TwoSidedOracle(double t, double dof) {
  return 2.0 * (1.0 - oracle::TCdfQuadrature(std::fabs(t), dof));
}

Matrix ToMatrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Code CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InferenceError& e) {
    return e.code();
  }
  FAIL("expected InferenceError");
  return Code::kInvalidSpec;
}

// County table built by running the pipeline on a synthetic dataset.
CountyTable PlantedTable(const testutil::TempDir& dir) {
  const SynthSpec spec = SynthSpec::Default();
  GenerateToDirectory(spec, dir.str());
  const BuildReport report = BuildDataset(LoadConfig(dir.file("config.json")));
  const Dataset ds = LoadDataset(report.output_dir);
  const CountyAggregation agg = AggregateCounties(ds.tweets, ds.contexts);
  return CountyTable::Build(ds.contexts, agg.vectors);
}

CountyTable SmallTable() {
  std::vector<CountyContext> contexts;
  std::map<Fips, CountyFeatureVector> vectors;
  for (int i = 0; i < 6; ++i) {
    const double dem = 0.3 + 0.05 * i, rep = 0.6 - 0.05 * i;
    const CountyContext c{testutil::F("170" + std::to_string(10 + 2 * i + 1)),
                          1000 * (i + 1), {}, dem, rep, dem - rep, 0.5, std::nullopt};
    contexts.push_back(c);
    if (i == 5) continue;
    CountyFeatureVector v{c.fips};
    v.n_tweets = 3 + i;
    for (int k = 0; k < kNumFeatures; ++k) v.values[k] = 0.1 * k + 0.01 * i * i;
    vectors.emplace(c.fips, v);
  }
  return CountyTable::Build(contexts, vectors);
}

}  // namespace

TEST_CASE("pearson: self and anti correlation") {
  const std::vector<double> x = {1, 2, 3, 4, 7};
  const CorrelationResult same = Pearson(x, x);
  CHECK(same.r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(same.p_value == doctest::Approx(0.0).epsilon(1e-12));
  const CorrelationResult anti = Pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1});
  CHECK(anti.r == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(anti.p_value < 1e-12);
}

TEST_CASE("pearson: five-point example matches the direct formula") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {2, 1, 4, 3, 6};
  const CorrelationResult got = Pearson(x, y);
  const double r = oracle::PearsonDirect(x, y);
  CHECK(std::fabs(got.r - r) < 1e-12);
  const double t = r * std::sqrt(3.0 / (1.0 - r * r));
  CHECK(std::fabs(got.t_stat - t) < 1e-9);
  CHECK(std::fabs(got.p_value - TwoSidedOracle(t, 3)) < 1e-6);
  CHECK(got.n == 5);
}

TEST_CASE("pearson: symmetry and affine invariance on random data") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(30), y(30), ax(30), ny(30);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = z(rng);
      y[i] = 0.5 * x[i] + z(rng);
      ax[i] = 3.0 * x[i] + 7.0;
      ny[i] = -2.0 * y[i];
    }
    const double r = Pearson(x, y).r;
    CHECK(std::fabs(r - oracle::PearsonDirect(x, y)) < 1e-12);
    CHECK(std::fabs(Pearson(y, x).r - r) < 1e-15);
    CHECK(std::fabs(Pearson(ax, y).r - r) < 1e-12);
    CHECK(std::fabs(Pearson(x, ny).r + r) < 1e-12);
  }
}

TEST_CASE("pearson: errors") {
  const std::vector<double> a = {1, 2, 3}, c = {5, 5, 5};
  CHECK(CodeOf([&] { Pearson(a, std::vector<double>{1, 2}); }) == Code::kLengthMismatch);
  CHECK(CodeOf([&] { Pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}); }) ==
        Code::kTooFewObservations);
  CHECK(CodeOf([&] { Pearson(a, c); }) == Code::kZeroVariance);
  CHECK(CodeOf([&] { Pearson(c, a); }) == Code::kZeroVariance);
}

TEST_CASE("t distribution: symmetry, limits and quadrature") {
  for (double dof : {1.0, 2.0, 5.0, 30.0}) CHECK(StudentTCdf(0.0, dof) == 0.5);
  CHECK(StudentTCdf(std::numeric_limits<double>::infinity(), 4) == 1.0);
  CHECK(StudentTCdf(-std::numeric_limits<double>::infinity(), 4) == 0.0);
  CHECK(std::fabs(StudentTCdf(2.0, 10) - oracle::TCdfQuadrature(2.0, 10)) < 1e-8);
  // Cauchy closed form at dof = 1.
  CHECK(std::fabs(StudentTCdf(1.0, 1) - 0.75) < 1e-14);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t(-8, 8);
  std::uniform_int_distribution<int> dof(1, 60);
  for (int i = 0; i < 40; ++i) {
    const double tv = t(rng);
    const double d = dof(rng);
    CHECK(std::fabs(StudentTCdf(tv, d) - oracle::TCdfQuadrature(tv, d)) < 1e-8);
    CHECK(std::fabs(StudentTCdf(tv, d) + StudentTCdf(-tv, d) - 1.0) < 1e-14);
    CHECK(StudentTCdf(tv + 0.1, d) >= StudentTCdf(tv, d));
  }
}

TEST_CASE("ols: exact fit y = 2x + 1") {
  const Matrix x = ToMatrix({{0}, {1}, {2}});
  const std::vector<double> y = {1, 3, 5};
  const ModelFit fit = FitOls(x, y);
  REQUIRE(fit.coefficients.size() == 2);
  CHECK(fit.terms == std::vector<std::string>{"intercept", "x1"});
  CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.r_squared == 1.0);
  CHECK(fit.rss < 1e-18);
  CHECK(fit.dof == 1);
}

TEST_CASE("ols: rank deficiency and underdetermined systems") {
  const Matrix dup = ToMatrix({{1, 1}, {2, 2}, {3, 3}, {5, 5}});
  const std::vector<double> y = {1, 2, 2, 4};
  try {
    FitOls(dup, y, {.include_intercept = true, .names = {"a", "b"}, .weights = {}});
    FAIL("expected InferenceError");
  } catch (const InferenceError& e) {
    CHECK(e.code() == Code::kRankDeficient);
    CHECK(e.column() == "b");
  }
  const Matrix constant = ToMatrix({{1, 4}, {2, 4}, {3, 4}, {5, 4}});
  try {
    FitOls(constant, y, {.include_intercept = true, .names = {"a", "flat"}, .weights = {}});
    FAIL("expected InferenceError");
  } catch (const InferenceError& e) {
    CHECK(e.code() == Code::kRankDeficient);
    CHECK(e.column() == "flat");
    CHECK(std::string(e.what()).find("flat") != std::string::npos);
  }
  CHECK(CodeOf([&] { FitOls(ToMatrix({{1}, {2}}), std::vector<double>{1, 2}); }) ==
        Code::kUnderdetermined);
  CHECK(CodeOf([&] { FitOls(ToMatrix({{1}, {2}, {4}}), std::vector<double>{1, 2}); }) ==
        Code::kLengthMismatch);
}

TEST_CASE("ols: random systems match the normal-equations oracle") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20, p = 3;
    const bool intercept = trial % 4 != 3;
    std::vector<std::vector<double>> rows(n, std::vector<double>(p));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : rows[i]) v = z(rng) * 2 + 1;
      y[i] = 0.5 + rows[i][0] - 2 * rows[i][1] + 0.3 * rows[i][2] + z(rng);
    }
    OlsOptions options;
    options.include_intercept = intercept;
    const ModelFit fit = FitOls(ToMatrix(rows), y, options);
    const auto beta = oracle::NormalEquations(rows, y, intercept);
    REQUIRE(fit.coefficients.size() == beta.size());
    for (std::size_t k = 0; k < beta.size(); ++k) {
      CHECK(std::fabs(fit.coefficients[k] - beta[k]) < 1e-9);
      CHECK(std::fabs(fit.p_values[k] - TwoSidedOracle(fit.t_stats[k], fit.dof)) < 1e-8);
      CHECK(fit.p_values[k] >= 0.0);
      CHECK(fit.p_values[k] <= 1.0);
      CHECK(fit.std_errors[k] > 0.0);
    }
    CHECK(fit.dof == n - beta.size());

    // Residual orthogonality and, with an intercept, zero-sum residuals.
    std::vector<double> resid(n);
    const std::size_t off = intercept ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      double fitted = intercept ? fit.coefficients[0] : 0.0;
      for (std::size_t j = 0; j < p; ++j) fitted += fit.coefficients[j + off] * rows[i][j];
      resid[i] = y[i] - fitted;
    }
    for (std::size_t j = 0; j < p; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += rows[i][j] * resid[i];
      CHECK(std::fabs(dot) < 1e-8);
    }
    if (intercept) {
      double sum = 0.0;
      for (double r : resid) sum += r;
      CHECK(std::fabs(sum) < 1e-8);
    }
  }
}

TEST_CASE("ols: weighted fit matches the weighted oracle") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u(0.5, 4.0);
  std::vector<std::vector<double>> rows(30, std::vector<double>(2));
  std::vector<double> y(30), w(30);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = {z(rng), z(rng)};
    y[i] = 1 + rows[i][0] + z(rng);
    w[i] = u(rng);
  }
  OlsOptions options;
  options.weights = w;
  const ModelFit fit = FitOls(ToMatrix(rows), y, options);
  const auto beta = oracle::NormalEquations(rows, y, true, w);
  for (std::size_t k = 0; k < beta.size(); ++k) {
    CHECK(std::fabs(fit.coefficients[k] - beta[k]) < 1e-9);
  }
}

TEST_CASE("ols: single-predictor R squared equals pearson r squared") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> z;
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = z(rng);
    y[i] = 0.7 * x[i] + z(rng);
  }
  Matrix m(x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) m(i, 0) = x[i];
  const double r = Pearson(x, y).r;
  CHECK(std::fabs(FitOls(m, y).r_squared - r * r) < 1e-9);
}

TEST_CASE("model spec: validation and JSON round trip") {
  ModelSpec spec{"f4", {"vote_margin", "mask_use"}, true, "population"};
  CHECK_NOTHROW(spec.Validate());
  CHECK(ModelSpec::FromJson(spec.ToJson()) == spec);
  CHECK(CodeOf([] { ModelSpec{"f4", {}, true, {}}.Validate(); }) == Code::kInvalidSpec);
  CHECK(CodeOf([] { ModelSpec{"f4", {"a", "a"}, true, {}}.Validate(); }) == Code::kInvalidSpec);
  CHECK(CodeOf([] { ModelSpec{"f4", {"f4"}, true, {}}.Validate(); }) == Code::kInvalidSpec);
  CHECK(CodeOf([] { ModelSpec{"vote_margin", {"f1"}, true, {}}.Validate(); }) ==
        Code::kInvalidSpec);
  CHECK(CodeOf([] { ModelSpec::FromJson(nlohmann::json::array()); }) == Code::kInvalidSpec);
  const auto parsed = ModelSpec::FromJson(
      nlohmann::json{{"dependent", "mean_sentiment"}, {"predictors", {"vote_margin"}}});
  CHECK(parsed.include_intercept);
  CHECK_FALSE(parsed.weight);
}

TEST_CASE("county table: resolution, nulls and inference errors") {
  const CountyTable table = SmallTable();
  CHECK(table.rows() == 6);
  CHECK(table.Resolve("mean_sentiment") == "f4");
  CHECK(table.Resolve("f4") == "f4");
  CHECK(table.Resolve("vote_margin") == "vote_margin");
  CHECK_FALSE(table.Resolve("nonsense"));
  CHECK_FALSE(table.column("f1")[5].has_value());
  CHECK(table.column("vote_margin")[5].has_value());
  try {
    table.column("nonsense");
    FAIL("expected InferenceError");
  } catch (const InferenceError& e) {
    CHECK(e.code() == Code::kUnknownField);
    CHECK(std::string(e.what()).find("nonsense") != std::string::npos);
  }
  try {
    RunInference({"f4", {"mask_use"}, true, {}}, table);
    FAIL("expected InferenceError");
  } catch (const InferenceError& e) {
    CHECK(e.code() == Code::kRankDeficient);
    CHECK(e.column() == "mask_use");
  }
  const ModelFit fit = RunInference({"f4", {"vote_margin"}, true, {}}, table);
  CHECK(fit.n_observations == 5);
  CHECK(fit.excluded_rows == 1);
  CHECK(CodeOf([&] { RunInference({"f4", {"vote_margin", "population", "f1", "f2"}, true, {}},
                                  table); }) == Code::kTooFewObservations);
}

TEST_CASE("model fit: JSON round trip at six significant digits") {
  const Matrix x = ToMatrix({{1, 0.3}, {2, 0.1}, {3, 0.9}, {5, 0.4}, {8, 0.2}, {9, 0.7}});
  const std::vector<double> y = {1.1, 2.3, 2.9, 5.2, 7.7, 9.4};
  const ModelFit fit = FitOls(x, y);
  const ModelFit back = ModelFitFromJson(ModelFitToJson(fit));
  CHECK(back.terms == fit.terms);
  CHECK(back.dof == fit.dof);
  for (std::size_t k = 0; k < fit.terms.size(); ++k) {
    CHECK(back.coefficients[k] == doctest::Approx(fit.coefficients[k]).epsilon(1e-6));
    CHECK(back.std_errors[k] == doctest::Approx(fit.std_errors[k]).epsilon(1e-6));
    CHECK(back.p_values[k] == doctest::Approx(fit.p_values[k]).epsilon(1e-6));
  }
  const ModelFit exact = ModelFitFromJson(ModelFitToJson(fit, true));
  CHECK(exact.coefficients == fit.coefficients);
  CHECK(exact.r_squared == fit.r_squared);
}

TEST_CASE("inference: planted effects are recovered on synthetic counties") {
  testutil::TempDir dir;
  const CountyTable table = PlantedTable(dir);
  CHECK(table.rows() == 500);
  const ModelFit fit = RunInference({"mean_sentiment", {"vote_margin"}, true, {}}, table);
  REQUIRE(fit.terms.size() == 2);
  CHECK(std::fabs(fit.coefficients[1] - 0.8) <= 0.1);
  CHECK(fit.p_values[1] < 0.01);
  const ModelFit care = RunInference({"f9", {"mask_use"}, true, {}}, table);
  CHECK(care.coefficients[1] > 0.0);
  CHECK(care.p_values[1] < 0.05);
  const CorrelationResult r = CorrelateFields(table, "mask_use", "f9");
  CHECK(r.r > 0.0);
  CHECK(r.p_value < 0.05);
  CHECK(CorrelateFields(table, "f9", "mask_use").r == doctest::Approx(r.r).epsilon(1e-15));
}

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

// Pearson correlation and ordinary least squares with t-based inference.

#ifndef MORALMAP_INFERENCE_REGRESSION_H_
#define MORALMAP_INFERENCE_REGRESSION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "moralmap/common/error.h"

namespace moralmap {

class InferenceError : public Error {
 public:
  enum class Code {
    kLengthMismatch,
    kTooFewObservations,
    kZeroVariance,
    kRankDeficient,
    kUnderdetermined,
    kUnknownField,
    kInvalidSpec,
  };

  InferenceError(Code code, const std::string& message,
                 std::string column = {})
      : Error(ErrorKind::kData, message),
        code_(code),
        column_(std::move(column)) {}

  Code code() const { return code_; }
  // Offending column for kRankDeficient / kZeroVariance / kUnknownField.
  const std::string& column() const { return column_; }

 private:
  Code code_;
  std::string column_;
};

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double t_stat = 0.0;
  double p_value = 1.0;  // two-sided, n - 2 degrees of freedom
};

// Throws InferenceError for unequal lengths, n < 3, or a constant vector.
CorrelationResult Pearson(std::span<const double> x, std::span<const double> y);

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct ModelFit {
  // "intercept" first when fitted, then the predictor names.
  std::vector<std::string> terms;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;  // two-sided
  double r_squared = 0.0;
  double rss = 0.0;
  std::size_t n_observations = 0;
  std::size_t dof = 0;  // n - terms
  std::size_t excluded_rows = 0;
};

struct OlsOptions {
  bool include_intercept = true;
  // Column names for terms and error messages; defaults to x1..xp.
  std::vector<std::string> names;
  // Optional non-negative observation weights (weighted least squares).
  std::vector<double> weights;
};

// Least squares via Householder QR on internally standardized predictors;
// coefficients and standard errors are reported in original units.
// Throws InferenceError when n <= terms (underdetermined), a predictor is
// constant or linearly dependent on earlier columns (names it), or y is
// constant under an intercept model.
ModelFit FitOls(const Matrix& x, std::span<const double> y,
                const OlsOptions& options = {});

}  // namespace moralmap

#endif  // MORALMAP_INFERENCE_REGRESSION_H_

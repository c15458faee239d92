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

#include "moralmap/inference/regression.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moralmap/inference/distributions.h"

namespace moralmap {
namespace {

using Code = InferenceError::Code;

// Relative size below which a column is treated as constant or dependent.
constexpr double kRankTolerance = 1e-10;

double TStat(double coefficient, double std_error) {
  if (std_error > 0.0) return coefficient / std_error;
  if (coefficient == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), coefficient);
}

}  // namespace

CorrelationResult Pearson(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InferenceError(Code::kLengthMismatch,
                         "pearson: vectors have different lengths (" +
                             std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw InferenceError(Code::kTooFewObservations,
                         "pearson: need at least 3 observations, got " +
                             std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) {
    throw InferenceError(Code::kZeroVariance, "pearson: x has zero variance",
                         "x");
  }
  if (syy == 0.0) {
    throw InferenceError(Code::kZeroVariance, "pearson: y has zero variance",
                         "y");
  }
  CorrelationResult result;
  result.n = n;
  result.r = std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
  // Rounding in the denominator can leave an exact fit a few ulps short.
  if (1.0 - std::fabs(result.r) <= 4 * std::numeric_limits<double>::epsilon()) {
    result.r = std::copysign(1.0, result.r);
  }
  const double dof = static_cast<double>(n - 2);
  if (std::fabs(result.r) >= 1.0) {
    result.t_stat =
        std::copysign(std::numeric_limits<double>::infinity(), result.r);
    result.p_value = 0.0;
  } else {
    result.t_stat = result.r * std::sqrt(dof / (1.0 - result.r * result.r));
    result.p_value = StudentTTwoSidedP(result.t_stat, dof);
  }
  return result;
}

ModelFit FitOls(const Matrix& x, std::span<const double> y,
                const OlsOptions& options) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const std::size_t offset = options.include_intercept ? 1 : 0;
  const std::size_t k = p + offset;

  std::vector<std::string> names = options.names;
  if (names.empty()) {
    for (std::size_t j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));
  }
  if (names.size() != p) {
    throw InferenceError(Code::kInvalidSpec, "ols: expected " +
                                                 std::to_string(p) +
                                                 " column names");
  }
  if (k == 0) throw InferenceError(Code::kInvalidSpec, "ols: model has no terms");
  if (y.size() != n) {
    throw InferenceError(Code::kLengthMismatch,
                         "ols: design has " + std::to_string(n) +
                             " rows but y has " + std::to_string(y.size()));
  }

  std::vector<double> w = options.weights;
  if (w.empty()) w.assign(n, 1.0);
  if (w.size() != n) {
    throw InferenceError(Code::kLengthMismatch,
                         "ols: weights length does not match rows");
  }
  std::size_t n_effective = 0;
  double wsum = 0.0;
  for (double wi : w) {
    if (!(wi >= 0.0) || !std::isfinite(wi)) {
      throw InferenceError(Code::kInvalidSpec,
                           "ols: weights must be finite and non-negative");
    }
    if (wi > 0.0) ++n_effective;
    wsum += wi;
  }
  if (n_effective <= k) {
    throw InferenceError(Code::kUnderdetermined,
                         "ols: " + std::to_string(n_effective) +
                             " observations for " + std::to_string(k) +
                             " terms; need more observations than terms");
  }

  // Standardize predictors: centered (intercept models) and scaled.
  std::vector<double> center(p, 0.0), scale(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_abs = std::max(max_abs, std::fabs(x(i, j)));
    if (options.include_intercept) {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) m += w[i] * x(i, j);
      center[j] = m / wsum;
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x(i, j) - center[j];
      ss += w[i] * d * d;
    }
    scale[j] = std::sqrt(ss / wsum);
    if (!(scale[j] > kRankTolerance * max_abs)) {
      throw InferenceError(Code::kRankDeficient,
                           "ols: rank deficient design, column '" + names[j] +
                               "' is constant",
                           names[j]);
    }
  }

  // Weighted standardized design A (n x k) and response b.
  Matrix a(n, k);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sw = std::sqrt(w[i]);
    if (options.include_intercept) a(i, 0) = sw;
    for (std::size_t j = 0; j < p; ++j) {
      a(i, j + offset) = sw * (x(i, j) - center[j]) / scale[j];
    }
    b[i] = sw * y[i];
  }

  // Householder QR; R overwrites the upper triangle of A.
  std::vector<double> original_norm(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) original_norm[j] += a(i, j) * a(i, j);
    original_norm[j] = std::sqrt(original_norm[j]);
  }
  std::vector<double> v(n);
  for (std::size_t j = 0; j < k; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < n; ++i) norm += a(i, j) * a(i, j);
    norm = std::sqrt(norm);
    if (!(norm > kRankTolerance * original_norm[j])) {
      const std::string& col = j < offset ? std::string("intercept") : names[j - offset];
      throw InferenceError(Code::kRankDeficient,
                           "ols: rank deficient design, column '" + col +
                               "' is a linear combination of earlier columns",
                           col);
    }
    const double alpha = a(j, j) > 0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) {
      v[i] = a(i, j) - (i == j ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    for (std::size_t c = j; c < k; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < n; ++i) s += v[i] * a(i, c);
      s = 2.0 * s / vnorm2;
      for (std::size_t i = j; i < n; ++i) a(i, c) -= s * v[i];
    }
    double s = 0.0;
    for (std::size_t i = j; i < n; ++i) s += v[i] * b[i];
    s = 2.0 * s / vnorm2;
    for (std::size_t i = j; i < n; ++i) b[i] -= s * v[i];
  }

  // gamma = R^-1 Q^T b, and R^-1 for the covariance.
  std::vector<double> gamma(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = b[jj];
    for (std::size_t c = jj + 1; c < k; ++c) s -= a(jj, c) * gamma[c];
    gamma[jj] = s / a(jj, jj);
  }
  Matrix r_inv(k, k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t row = col + 1; row-- > 0;) {
      double s = row == col ? 1.0 : 0.0;
      for (std::size_t c = row + 1; c <= col; ++c) s -= a(row, c) * r_inv(c, col);
      r_inv(row, col) = s / a(row, row);
    }
  }

  // Back to original units: beta = T gamma.
  Matrix t(k, k);
  if (options.include_intercept) {
    t(0, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) t(0, j + 1) = -center[j] / scale[j];
  }
  for (std::size_t j = 0; j < p; ++j) t(j + offset, j + offset) = 1.0 / scale[j];

  ModelFit fit;
  fit.n_observations = n_effective;
  fit.dof = n_effective - k;
  if (options.include_intercept) fit.terms.emplace_back("intercept");
  fit.terms.insert(fit.terms.end(), names.begin(), names.end());
  fit.coefficients.assign(k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) fit.coefficients[r] += t(r, c) * gamma[c];
  }

  double rss = 0.0;
  double ymean = 0.0;
  for (std::size_t i = 0; i < n; ++i) ymean += w[i] * y[i];
  ymean /= wsum;
  double tss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = options.include_intercept ? fit.coefficients[0] : 0.0;
    for (std::size_t j = 0; j < p; ++j) fitted += fit.coefficients[j + offset] * x(i, j);
    const double resid = y[i] - fitted;
    rss += w[i] * resid * resid;
    const double dy = options.include_intercept ? y[i] - ymean : y[i];
    tss += w[i] * dy * dy;
  }
  if (!(tss > 0.0)) {
    throw InferenceError(Code::kZeroVariance,
                         "ols: dependent variable has zero variance", "y");
  }
  fit.rss = rss;
  fit.r_squared = std::clamp(1.0 - rss / tss, 0.0, 1.0);
  const double sigma2 = rss / static_cast<double>(fit.dof);

  // Cov(beta) = sigma2 * (T R^-1)(T R^-1)^T
  Matrix tr(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t m = 0; m < k; ++m) s += t(r, m) * r_inv(m, c);
      tr(r, c) = s;
    }
  }
  fit.std_errors.resize(k);
  fit.t_stats.resize(k);
  fit.p_values.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    double var = 0.0;
    for (std::size_t c = 0; c < k; ++c) var += tr(r, c) * tr(r, c);
    fit.std_errors[r] = std::sqrt(std::max(0.0, sigma2 * var));
    fit.t_stats[r] = TStat(fit.coefficients[r], fit.std_errors[r]);
    fit.p_values[r] = StudentTTwoSidedP(fit.t_stats[r], static_cast<double>(fit.dof));
  }
  return fit;
}

}  // namespace moralmap

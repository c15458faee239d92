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

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks.

#ifndef MORALMAP_TESTS_ORACLES_ORACLES_H_
#define MORALMAP_TESTS_ORACLES_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "moralmap/geo/geometry.h"

namespace oracle {

using BigFloat = boost::multiprecision::cpp_dec_float_50;

// Winding number of `ring` around (x, y); nonzero means inside for simple
// rings. No bounding boxes, no index.
inline int WindingNumber(const moralmap::Ring& ring, double x, double y) {
  int wn = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    const double cross = (b.lon - a.lon) * (y - a.lat) - (x - a.lon) * (b.lat - a.lat);
    if (a.lat <= y) {
      if (b.lat > y && cross > 0) ++wn;
    } else if (b.lat <= y && cross < 0) {
      --wn;
    }
  }
  return wn;
}

inline bool InsidePolygon(const moralmap::Polygon& p, double x, double y) {
  if (WindingNumber(p.outer, x, y) == 0) return false;
  for (const auto& hole : p.holes) {
    if (WindingNumber(hole, x, y) != 0) return false;
  }
  return true;
}

// Lowest fips among counties whose polygons contain the point, by
// exhaustive scan.
inline std::optional<std::string> BruteForceCounty(
    std::span<const moralmap::CountyGeometry> counties, double lon, double lat) {
  std::optional<std::string> best;
  for (const auto& c : counties) {
    for (const auto& poly : c.polygons) {
      if (InsidePolygon(poly, lon, lat)) {
        if (!best || c.fips.str() < *best) best = c.fips.str();
        break;
      }
    }
  }
  return best;
}

// Bounding-box candidates by linear scan.
inline std::vector<std::size_t> BruteForceCandidates(
    std::span<const moralmap::CountyGeometry> counties, double lon, double lat) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < counties.size(); ++i) {
    double min_lon = INFINITY, max_lon = -INFINITY, min_lat = INFINITY, max_lat = -INFINITY;
    for (const auto& poly : counties[i].polygons) {
      for (const auto& p : poly.outer) {
        min_lon = std::min(min_lon, p.lon);
        max_lon = std::max(max_lon, p.lon);
        min_lat = std::min(min_lat, p.lat);
        max_lat = std::max(max_lat, p.lat);
      }
    }
    if (lon >= min_lon && lon <= max_lon && lat >= min_lat && lat <= max_lat) out.push_back(i);
  }
  return out;
}

// Pearson r by the single-pass computational formula in 50-digit decimal
// arithmetic.
inline double PearsonDirect(std::span<const double> x, std::span<const double> y) {
  BigFloat sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  const BigFloat n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const BigFloat a = x[i], b = y[i];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  const BigFloat num = n * sxy - sx * sy;
  const BigFloat den = sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return static_cast<double>(num / den);
}

// Student t density.
inline long double TDensity(long double t, long double dof) {
  const long double c = std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2) -
                        0.5L * std::log(dof * 3.14159265358979323846264338327950288L);
  return std::exp(c - (dof + 1) / 2 * std::log1p(t * t / dof));
}

inline long double AdaptiveSimpson(const std::function<long double(long double)>& f,
                                   long double a, long double b, long double fa,
                                   long double fm, long double fb, long double whole,
                                   long double eps, int depth) {
  const long double m = (a + b) / 2;
  const long double lm = (a + m) / 2, rm = (m + b) / 2;
  const long double flm = f(lm), frm = f(rm);
  const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const long double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * eps) return left + right + delta / 15;
  return AdaptiveSimpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         AdaptiveSimpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

inline long double Integrate(const std::function<long double(long double)>& f, long double a,
                             long double b, long double eps = 1e-15L) {
  const long double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const long double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return AdaptiveSimpson(f, a, b, fa, fm, fb, whole, eps, 50);
}

// CDF by integrating the density from 0 to |t| in unit panels.
inline double TCdfQuadrature(double t, double dof) {
  const auto f = [dof](long double u) { return TDensity(u, dof); };
  const long double at = std::fabs(t);
  long double area = 0;
  long double lo = 0;
  while (lo < at) {
    const long double hi = std::min<long double>(lo + 1, at);
    area += Integrate(f, lo, hi);
    lo = hi;
  }
  const long double half = 0.5L;
  return static_cast<double>(t >= 0 ? half + area : half - area);
}

// OLS coefficients from the normal equations X'X b = X'y solved by
// Gauss-Jordan elimination in 50-digit arithmetic. `x` is row-major n x p;
// an intercept column is prepended when requested.
inline std::vector<double> NormalEquations(const std::vector<std::vector<double>>& x,
                                           std::span<const double> y, bool intercept,
                                           std::span<const double> weights = {}) {
  const std::size_t n = x.size();
  const std::size_t p = (n ? x[0].size() : 0) + (intercept ? 1 : 0);
  std::vector<std::vector<BigFloat>> a(p, std::vector<BigFloat>(p + 1, BigFloat(0)));
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<BigFloat> row;
    if (intercept) row.emplace_back(1);
    for (double v : x[r]) row.emplace_back(v);
    const BigFloat w = weights.empty() ? BigFloat(1) : BigFloat(weights[r]);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) a[i][j] += w * row[i] * row[j];
      a[i][p] += w * row[i] * BigFloat(y[r]);
    }
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r) {
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0) throw std::runtime_error("singular normal equations");
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const BigFloat factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t i = 0; i < p; ++i) beta[i] = static_cast<double>(a[i][p] / a[i][i]);
  return beta;
}

}  // namespace oracle

#endif  // MORALMAP_TESTS_ORACLES_ORACLES_H_

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

#include "moralmap/synthgen/synthgen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"
#include "moralmap/context/context.h"
#include "moralmap/geo/geometry.h"

namespace moralmap {
namespace {

using nlohmann::json;
using Rng = std::mt19937_64;

constexpr double kInteriorMargin = 1e-7;
constexpr int kMaxRejectionTries = 100000;

const std::vector<std::string> kProTags = {"stayhome", "stayhomesavelives",
                                           "flattenthecurve", "staysafe"};
const std::vector<std::string> kAntiTags = {"reopenamerica", "endthelockdown",
                                            "freedomnotfear", "openitup"};
const std::vector<std::string> kNeutralTags = {"covid19", "coronavirus",
                                               "news", "lockdown"};
const std::vector<std::string> kMaskCategories = {"never", "rarely", "sometimes",
                                                  "frequently", "always"};

bool IsSupportedVariable(std::string_view v) {
  return v == "vote_margin" || v == "dem_share" || v == "rep_share" ||
         v == "mask_use";
}

bool IsSupportedFeature(Feature f) {
  return f == Feature::kProShare || f == Feature::kMeanSentiment ||
         f == Feature::kVividShare || f == Feature::kVirtueShare ||
         Index(f) >= Index(Feature::kCareShare);
}

std::int64_t Round64(double v) { return static_cast<std::int64_t>(std::llround(v)); }

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double Normal(Rng& rng, double mean, double sd) {
  return std::normal_distribution<double>(mean, sd)(rng);
}

bool Bernoulli(Rng& rng, double p) {
  return std::bernoulli_distribution(std::clamp(p, 0.0, 1.0))(rng);
}

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

std::array<double, kNumFrames> ArrayFromJson(const json& j, const char* key,
                                             std::array<double, kNumFrames> v) {
  if (!j.contains(key)) return v;
  const auto& a = j.at(key);
  if (a.is_number()) {
    v.fill(a.get<double>());
    return v;
  }
  if (a.is_object()) {
    const Taxonomy taxonomy = Taxonomy::Default();
    for (const auto& [label, value] : a.items()) {
      const auto frame = taxonomy.Resolve(label);
      if (!frame) throw ValidationError(std::string(key) + ": unknown frame " + label);
      v[Index(*frame)] = value.get<double>();
    }
    return v;
  }
  const auto list = a.get<std::vector<double>>();
  if (list.size() != kNumFrames) {
    throw ValidationError(std::string(key) + " needs 12 values");
  }
  std::copy(list.begin(), list.end(), v.begin());
  return v;
}

json ArrayToJson(const std::array<double, kNumFrames>& v) {
  json out = json::object();
  for (int f = 0; f < kNumFrames; ++f) {
    out[std::string(CanonicalFrameName(FrameAt(f)))] = v[f];
  }
  return out;
}

double PointSegmentDistance(const LonLat& p, const LonLat& a, const LonLat& b) {
  const double dx = b.lon - a.lon, dy = b.lat - a.lat;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.lon - (a.lon + t * dx), p.lat - (a.lat + t * dy));
}

double DistanceToBoundary(const CountyGeometry& county, const LonLat& p) {
  double best = std::numeric_limits<double>::infinity();
  auto ring_distance = [&](const Ring& ring) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      best = std::min(best, PointSegmentDistance(p, ring[i], ring[i + 1]));
    }
  };
  for (const auto& poly : county.polygons) {
    ring_distance(poly.outer);
    for (const auto& h : poly.holes) ring_distance(h);
  }
  return best;
}

// Jittered grid of `cols` x `rows` cells over the box. Cell (c, r) is a
// simple octagon: four corners and four edge midpoints, each shared with
// the neighbouring cell.
std::vector<Ring> GridCells(Rng& rng, int cols, int rows, double min_lon,
                            double max_lon, double min_lat, double max_lat,
                            double jitter) {
  const double w = (max_lon - min_lon) / cols;
  const double h = (max_lat - min_lat) / rows;
  auto jit = [&](bool border, double size) {
    return border ? 0.0 : Uniform(rng, -jitter, jitter) * size;
  };
  // Corners (cols+1) x (rows+1).
  std::vector<LonLat> corner((cols + 1) * (rows + 1));
  for (int r = 0; r <= rows; ++r) {
    for (int c = 0; c <= cols; ++c) {
      const bool bx = c == 0 || c == cols;
      const bool by = r == 0 || r == rows;
      corner[r * (cols + 1) + c] = {min_lon + c * w + jit(bx, w),
                                    min_lat + r * h + jit(by, h)};
    }
  }
  // Horizontal edge midpoints cols x (rows+1); vertical (cols+1) x rows.
  std::vector<LonLat> hmid(cols * (rows + 1));
  for (int r = 0; r <= rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const bool by = r == 0 || r == rows;
      const LonLat& a = corner[r * (cols + 1) + c];
      const LonLat& b = corner[r * (cols + 1) + c + 1];
      hmid[r * cols + c] = {(a.lon + b.lon) / 2 + jit(false, w) * 0.5,
                            (a.lat + b.lat) / 2 + jit(by, h)};
    }
  }
  std::vector<LonLat> vmid((cols + 1) * rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c <= cols; ++c) {
      const bool bx = c == 0 || c == cols;
      const LonLat& a = corner[r * (cols + 1) + c];
      const LonLat& b = corner[(r + 1) * (cols + 1) + c];
      vmid[r * (cols + 1) + c] = {(a.lon + b.lon) / 2 + jit(bx, w),
                                  (a.lat + b.lat) / 2 + jit(false, h) * 0.5};
    }
  }
  std::vector<Ring> cells;
  cells.reserve(static_cast<std::size_t>(cols) * rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const LonLat sw = corner[r * (cols + 1) + c];
      const LonLat se = corner[r * (cols + 1) + c + 1];
      const LonLat ne = corner[(r + 1) * (cols + 1) + c + 1];
      const LonLat nw = corner[(r + 1) * (cols + 1) + c];
      const LonLat s = hmid[r * cols + c];
      const LonLat n = hmid[(r + 1) * cols + c];
      const LonLat west = vmid[r * (cols + 1) + c];
      const LonLat east = vmid[r * (cols + 1) + c + 1];
      cells.push_back({sw, s, se, east, ne, n, nw, west, sw});
    }
  }
  return cells;
}

struct County {
  CountyGeometry geometry;
  std::int64_t population = 0;
  double median_age = 0.0;
  double pct_urban = 0.0;
  bool has_election = true;
  std::int64_t dem_votes = 0, rep_votes = 0, total_votes = 0;
  std::array<int, 5> mask_permille{};
  // Values exactly as the loaders will compute them.
  std::map<std::string, double> variables;
};

std::string Permille(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%d.%03d", v / 1000, v % 1000);
  return buf;
}

std::vector<County> MakeUniverse(Rng& rng, const SynthSpec& spec) {
  const UniverseSpec& u = spec.universe;
  std::vector<Ring> cells = GridCells(rng, u.columns, u.rows, u.min_lon,
                                      u.max_lon, u.min_lat, u.max_lat, u.jitter);
  if (u.count > 0 && static_cast<std::size_t>(u.count) < cells.size()) {
    cells.resize(u.count);
  }
  std::vector<std::string> prefixes;
  for (int p = 1; p < 100; ++p) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02d", p);
    if (p != 2 && StateAbbrevForPrefix(buf)) prefixes.emplace_back(buf);
  }
  const std::size_t per_state =
      std::max<std::size_t>(1, (cells.size() + prefixes.size() - 1) / prefixes.size());
  if (per_state > 499) throw ValidationError("synthetic universe too large");

  std::vector<County> counties;
  auto add = [&](const Ring& ring, const std::string& prefix, std::size_t k) {
    char code[32];
    std::snprintf(code, sizeof(code), "%s%03zu", prefix.c_str(), 2 * k + 1);
    County c{CountyGeometry{*Fips::Parse(code), "", "", {}, {}}, 0, 0, 0, true, 0,
             0, 0, {}, {}};
    c.geometry.name = "Synthetic County " + std::string(code);
    c.geometry.state = std::string(*StateAbbrevForPrefix(prefix));
    c.geometry.polygons.push_back({ring, {}});
    c.geometry.bbox = ComputeBBox(c.geometry.polygons);
    counties.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    add(cells[i], prefixes[i / per_state], i % per_state);
  }
  if (u.alaska_counties > 0) {
    const int side = static_cast<int>(std::ceil(std::sqrt(u.alaska_counties)));
    std::vector<Ring> ak = GridCells(rng, side, side, -165.0, -141.0, 57.0,
                                     69.0, u.jitter);
    for (int k = 0; k < u.alaska_counties; ++k) {
      add(ak[k], "02", static_cast<std::size_t>(k));
      counties.back().has_election = false;
    }
  }

  std::map<std::string, double> state_lean;
  for (auto& c : counties) {
    const std::string prefix(c.geometry.fips.state_prefix());
    if (!state_lean.count(prefix)) state_lean[prefix] = Normal(rng, 0.45, 0.08);
    c.population = std::max<std::int64_t>(
        50, Round64(std::exp(Normal(rng, spec.population_log_mean,
                                         spec.population_log_sd))));
    c.median_age = std::round(Normal(rng, 40.0, 5.0) * 10.0) / 10.0;
    c.pct_urban = std::round(std::clamp(Normal(rng, 0.5, 0.2), 0.0, 1.0) * 1000.0) / 1000.0;

    const double dem = std::clamp(state_lean[prefix] + Normal(rng, 0.0, 0.1), 0.08, 0.9);
    const double other = Uniform(rng, 0.02, 0.06);
    c.total_votes = std::max<std::int64_t>(
        20, Round64(static_cast<double>(c.population) * Uniform(rng, 0.35, 0.55)));
    c.dem_votes = Round64(static_cast<double>(c.total_votes) * dem);
    c.rep_votes = std::min(c.total_votes - c.dem_votes,
                           Round64(static_cast<double>(c.total_votes) *
                                        (1.0 - dem - other)));
    const double m =
        std::clamp(0.55 + 0.5 * (dem - 0.45) + Normal(rng, 0.0, 0.08), 0.1, 0.95);
    int used = 0;
    for (int k = 0; k < 4; ++k) {
      const double p = std::tgamma(5.0) / (std::tgamma(k + 1.0) * std::tgamma(5.0 - k)) *
                       std::pow(m, k) * std::pow(1.0 - m, 4 - k);
      c.mask_permille[k] = static_cast<int>(std::lround(p * 1000.0));
      used += c.mask_permille[k];
    }
    c.mask_permille[4] = std::max(0, 1000 - used);
    if (used > 1000) c.mask_permille[3] -= used - 1000;

    if (c.has_election) {
      const double total = static_cast<double>(c.total_votes);
      const double dem_share = static_cast<double>(c.dem_votes) / total;
      const double rep_share = static_cast<double>(c.rep_votes) / total;
      c.variables["dem_share"] = dem_share;
      c.variables["rep_share"] = rep_share;
      c.variables["vote_margin"] = dem_share - rep_share;
    }
    const std::vector<double> weights = DefaultMaskWeights(kMaskCategories.size());
    double use = 0.0;
    for (std::size_t k = 0; k < kMaskCategories.size(); ++k) {
      use += weights[k] * *ParseDouble(Permille(c.mask_permille[k]));
    }
    c.variables["mask_use"] = std::clamp(use, 0.0, 1.0);
  }
  return counties;
}

// Per-county generating parameters after planted effects.
struct CountyModel {
  std::array<double, kNumFrames> frame_p{};
  double stance_shift = 0.0;
  double sentiment_shift = 0.0;
  double vivid_shift = 0.0;
};

std::vector<CountyModel> PlantEffects(const SynthSpec& spec,
                                      const std::vector<County>& counties) {
  const double total_w =
      std::accumulate(spec.frame_weights.begin(), spec.frame_weights.end(), 0.0);
  std::array<double, kNumFrames> base{};
  for (int f = 0; f < kNumFrames; ++f) base[f] = spec.frame_weights[f] / total_w;
  auto mix_mean = [](const std::array<double, kNumFrames>& p,
                     const std::array<double, kNumFrames>& v) {
    double s = 0.0;
    for (int f = 0; f < kNumFrames; ++f) s += p[f] * v[f];
    return s;
  };

  std::map<std::string, double> means;
  for (const auto& e : spec.planted_effects) {
    double sum = 0.0;
    int n = 0;
    for (const auto& c : counties) {
      auto it = c.variables.find(e.variable);
      if (it != c.variables.end()) {
        sum += it->second;
        ++n;
      }
    }
    means[e.variable] = n > 0 ? sum / n : 0.0;
  }

  std::vector<CountyModel> models;
  models.reserve(counties.size());
  for (const auto& c : counties) {
    CountyModel m;
    m.frame_p = base;
    double virtue_shift = 0.0;
    bool stance_effect = false, sentiment_effect = false;
    for (const auto& e : spec.planted_effects) {
      auto it = c.variables.find(e.variable);
      if (it == c.variables.end()) continue;
      const double shift = e.slope * (it->second - means[e.variable]);
      switch (e.feature) {
        case Feature::kProShare:
          m.stance_shift += shift;
          stance_effect = true;
          break;
        case Feature::kMeanSentiment:
          m.sentiment_shift += shift;
          sentiment_effect = true;
          break;
        case Feature::kVividShare:
          m.vivid_shift += shift;
          break;
        case Feature::kVirtueShare:
          virtue_shift += shift;
          break;
        default: {
          const int k = Index(e.feature) - Index(Feature::kCareShare);
          const double old_share = m.frame_p[2 * k] + m.frame_p[2 * k + 1];
          const double new_share = std::clamp(old_share + shift, 0.005, 0.995);
          const double rest = 1.0 - old_share;
          for (int f = 0; f < kNumFrames; ++f) {
            if (f / 2 == k) {
              m.frame_p[f] *= old_share > 0 ? new_share / old_share : 0.0;
            } else {
              m.frame_p[f] *= rest > 0 ? (1.0 - new_share) / rest : 0.0;
            }
          }
          if (old_share == 0.0) {
            m.frame_p[2 * k] = new_share / 2;
            m.frame_p[2 * k + 1] = new_share / 2;
          }
          break;
        }
      }
    }
    if (virtue_shift != 0.0) {
      for (int k = 0; k < kNumFoundations; ++k) {
        const double share = m.frame_p[2 * k] + m.frame_p[2 * k + 1];
        if (share == 0.0) continue;
        const double ratio =
            std::clamp(m.frame_p[2 * k] / share + virtue_shift, 0.005, 0.995);
        m.frame_p[2 * k] = share * ratio;
        m.frame_p[2 * k + 1] = share * (1.0 - ratio);
      }
    }
    // Cancel the frame-mix drift so the planted slope is the only source of
    // between-county variation in the expected county mean.
    if (sentiment_effect) {
      m.sentiment_shift += mix_mean(base, spec.sentiment_mean) -
                           mix_mean(m.frame_p, spec.sentiment_mean);
    }
    if (stance_effect) {
      m.stance_shift += mix_mean(base, spec.pro_probability) -
                        mix_mean(m.frame_p, spec.pro_probability);
    }
    models.push_back(m);
  }
  return models;
}

LonLat InteriorPoint(Rng& rng, const CountyGeometry& county) {
  for (int i = 0; i < kMaxRejectionTries; ++i) {
    const LonLat p{Uniform(rng, county.bbox.min_lon, county.bbox.max_lon),
                   Uniform(rng, county.bbox.min_lat, county.bbox.max_lat)};
    if (CountyContains(county, p.lon, p.lat) &&
        DistanceToBoundary(county, p) >= kInteriorMargin) {
      return p;
    }
  }
  throw DataError("could not place a point inside " + county.fips.str());
}

std::string CovidCsv(Rng& rng, const SynthSpec& spec,
                     const std::vector<County>& counties) {
  std::string out = "fips,date,cases,deaths\n";
  const auto days = spec.date_range.days();
  for (const auto& c : counties) {
    const double k = static_cast<double>(c.population) * Uniform(rng, 0.02, 0.12);
    const double r = Uniform(rng, 0.04, 0.12);
    const double t0 = Uniform(rng, 0.2, 0.8) * static_cast<double>(days);
    const double cfr = Uniform(rng, 0.005, 0.03);
    for (std::int64_t d = 0; d < days; ++d) {
      const bool gap = d > 0 && Bernoulli(rng, 0.02);
      const bool dip = Bernoulli(rng, 0.01);
      if (gap) continue;
      auto cases = Round64(k / (1.0 + std::exp(-r * (static_cast<double>(d) - t0))));
      auto deaths = Round64(static_cast<double>(cases) * cfr);
      if (dip) {
        cases = cases * 9 / 10;
        deaths = deaths * 9 / 10;
      }
      out += c.geometry.fips.str() + "," +
             FormatDate(spec.date_range.from + std::chrono::days{d}) + "," +
             std::to_string(cases) + "," + std::to_string(deaths) + "\n";
    }
  }
  return out;
}

json PipelineConfigFor(const SynthSpec& spec) {
  json paths = {{"corpus", "corpus.csv"},
                {"boundaries", "boundaries.geojson"},
                {"census", "census.csv"},
                {"elections", "elections.csv"},
                {"mask", "mask.csv"},
                {"output_dir", "build"}};
  if (spec.covid) paths["covid"] = "covid.csv";
  json fields = json::object();
  for (const char* f : {"id", "timestamp", "lat", "lon", "frame", "stance",
                        "sentiment", "vivid", "virality", "text", "hashtags"}) {
    if (std::string_view(f) == "stance" && !spec.emit_stance) continue;
    fields[f] = f;
  }
  json config = {
      {"paths", paths},
      {"corpus_schema", {{"format", "csv"}, {"fields", fields}}},
      {"census_schema", {{"demographics", {"median_age", "pct_urban"}}}},
      {"election_schema", {{"mode", "counts"}}},
      {"exclusions", json::array()},
      {"study_window",
       {{"from", FormatDate(spec.date_range.from)},
        {"to", FormatDate(spec.date_range.to)}}},
      {"stance_lexicon", {{"pro", kProTags}, {"anti", kAntiTags}}},
      {"bin_width_days", spec.date_range.days() > 366 ? 7 : 1},
  };
  if (spec.universe.alaska_counties > 0) config["exclusions"].push_back("AK");
  return config;
}

PlantedEffect EffectFromJson(const json& j) {
  PlantedEffect e;
  e.variable = j.at("variable").get<std::string>();
  const auto feature = ParseFeature(j.at("feature").get<std::string>());
  if (!feature) {
    throw ValidationError("planted effect: unknown feature " +
                          j.at("feature").get<std::string>());
  }
  e.feature = *feature;
  e.slope = j.at("slope").get<double>();
  return e;
}

json EffectToJson(const PlantedEffect& e) {
  return {{"variable", e.variable},
          {"feature", std::string(FeatureCode(e.feature))},
          {"slope", e.slope}};
}

}  // namespace

SynthSpec SynthSpec::Default() {
  SynthSpec s;
  s.frame_weights = {0.28, 0.20, 0.06, 0.05, 0.06, 0.04,
                     0.07, 0.05, 0.03, 0.03, 0.08, 0.05};
  s.pro_probability = {0.80, 0.65, 0.60, 0.40, 0.60, 0.40,
                       0.65, 0.30, 0.55, 0.45, 0.15, 0.20};
  for (int f = 0; f < kNumFrames; ++f) {
    const bool virtue = PolarityOf(FrameAt(f)) == Polarity::kVirtue;
    s.sentiment_mean[f] = virtue ? 0.3 : -0.35;
    s.sentiment_spread[f] = 0.4;
  }
  s.planted_effects = {{"vote_margin", Feature::kMeanSentiment, 0.8},
                       {"mask_use", Feature::kCareShare, 0.6},
                       {"rep_share", Feature::kLibertyShare, 0.15}};
  return s;
}

SynthSpec SynthSpec::FromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("synth spec must be an object");
  SynthSpec s = Default();
  try {
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n_tweets")) s.n_tweets = j.at("n_tweets").get<std::size_t>();
    if (j.contains("date_range")) {
      const auto from = ParseDate(j.at("date_range").at("from").get<std::string>());
      const auto to = ParseDate(j.at("date_range").at("to").get<std::string>());
      if (!from || !to) throw ValidationError("date_range needs YYYY-MM-DD dates");
      s.date_range = {*from, *to};
    }
    s.frame_weights = ArrayFromJson(j, "frame_weights", s.frame_weights);
    s.pro_probability = ArrayFromJson(j, "pro_probability", s.pro_probability);
    s.sentiment_mean = ArrayFromJson(j, "sentiment_mean", s.sentiment_mean);
    s.sentiment_spread = ArrayFromJson(j, "sentiment_spread", s.sentiment_spread);
    auto number = [&](const char* key, double& out) {
      if (j.contains(key)) out = j.at(key).get<double>();
    };
    number("unknown_stance_probability", s.unknown_stance_probability);
    number("vivid_probability", s.vivid_probability);
    number("virality_mean", s.virality_mean);
    number("population_log_mean", s.population_log_mean);
    number("population_log_sd", s.population_log_sd);
    number("population_exponent", s.population_exponent);
    if (j.contains("covid")) s.covid = j.at("covid").get<bool>();
    if (j.contains("emit_stance")) s.emit_stance = j.at("emit_stance").get<bool>();
    if (j.contains("planted_effects")) {
      s.planted_effects.clear();
      for (const auto& e : j.at("planted_effects")) {
        s.planted_effects.push_back(EffectFromJson(e));
      }
    }
    if (j.contains("universe")) {
      const json& u = j.at("universe");
      auto integer = [&](const char* key, int& out) {
        if (u.contains(key)) out = u.at(key).get<int>();
      };
      auto real = [&](const char* key, double& out) {
        if (u.contains(key)) out = u.at(key).get<double>();
      };
      integer("columns", s.universe.columns);
      integer("rows", s.universe.rows);
      integer("count", s.universe.count);
      integer("alaska_counties", s.universe.alaska_counties);
      real("min_lon", s.universe.min_lon);
      real("max_lon", s.universe.max_lon);
      real("min_lat", s.universe.min_lat);
      real("max_lat", s.universe.max_lat);
      real("jitter", s.universe.jitter);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed synth spec: ") + e.what());
  }
  s.Validate();
  return s;
}

json SynthSpec::ToJson() const {
  json effects = json::array();
  for (const auto& e : planted_effects) effects.push_back(EffectToJson(e));
  return {
      {"seed", seed},
      {"n_tweets", n_tweets},
      {"date_range",
       {{"from", FormatDate(date_range.from)}, {"to", FormatDate(date_range.to)}}},
      {"frame_weights", ArrayToJson(frame_weights)},
      {"pro_probability", ArrayToJson(pro_probability)},
      {"sentiment_mean", ArrayToJson(sentiment_mean)},
      {"sentiment_spread", ArrayToJson(sentiment_spread)},
      {"unknown_stance_probability", unknown_stance_probability},
      {"vivid_probability", vivid_probability},
      {"virality_mean", virality_mean},
      {"planted_effects", effects},
      {"universe",
       {{"columns", universe.columns},
        {"rows", universe.rows},
        {"count", universe.count},
        {"min_lon", universe.min_lon},
        {"max_lon", universe.max_lon},
        {"min_lat", universe.min_lat},
        {"max_lat", universe.max_lat},
        {"jitter", universe.jitter},
        {"alaska_counties", universe.alaska_counties}}},
      {"population_log_mean", population_log_mean},
      {"population_log_sd", population_log_sd},
      {"population_exponent", population_exponent},
      {"covid", covid},
      {"emit_stance", emit_stance},
  };
}

void SynthSpec::Validate() const {
  double total = 0.0;
  for (int f = 0; f < kNumFrames; ++f) {
    const std::string name(CanonicalFrameName(FrameAt(f)));
    if (!(frame_weights[f] >= 0.0)) {
      throw ValidationError("frame weight for " + name + " is negative");
    }
    total += frame_weights[f];
    if (!(pro_probability[f] >= 0.0 && pro_probability[f] <= 1.0)) {
      throw ValidationError("pro probability for " + name + " outside [0,1]");
    }
    if (!(sentiment_mean[f] >= -1.0 && sentiment_mean[f] <= 1.0)) {
      throw ValidationError("sentiment mean for " + name + " outside [-1,1]");
    }
    if (!(sentiment_spread[f] >= 0.0)) {
      throw ValidationError("sentiment spread for " + name + " is negative");
    }
  }
  if (!(total > 0.0)) throw ValidationError("frame weights are all zero");
  for (double p : {unknown_stance_probability, vivid_probability}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probability outside [0,1]");
  }
  if (!(virality_mean >= 0.0)) throw ValidationError("virality_mean is negative");
  if (!(population_log_sd >= 0.0)) throw ValidationError("population_log_sd is negative");
  if (!date_range.valid()) throw ValidationError("date_range is inverted");
  for (const auto& e : planted_effects) {
    if (!IsSupportedVariable(e.variable)) {
      throw ValidationError("planted effect: unsupported variable " + e.variable);
    }
    if (!IsSupportedFeature(e.feature)) {
      throw ValidationError("planted effect: unsupported feature " +
                            std::string(FeatureCode(e.feature)));
    }
  }
  const UniverseSpec& u = universe;
  if (u.columns <= 0 || u.rows <= 0 || u.count < 0 || u.alaska_counties < 0) {
    throw ValidationError("county universe is empty");
  }
  if (!(u.jitter >= 0.0 && u.jitter <= 0.12)) {
    throw ValidationError("universe jitter must be within [0, 0.12]");
  }
  if (!(u.min_lon < u.max_lon && u.min_lat < u.max_lat)) {
    throw ValidationError("universe box is empty");
  }
}

json GroundTruth::ToJson() const {
  json effects = json::array();
  for (const auto& e : planted_effects) effects.push_back(EffectToJson(e));
  json tweets = json::array();
  for (const auto& [id, fips] : tweet_counties) tweets.push_back({id, fips.str()});
  return {{"seed", seed},
          {"n_counties", n_counties},
          {"planted_effects", effects},
          {"tweet_counties", tweets}};
}

GroundTruth GroundTruth::FromJson(const json& j) {
  GroundTruth t;
  t.seed = j.at("seed").get<std::uint64_t>();
  t.n_counties = j.at("n_counties").get<std::size_t>();
  for (const auto& e : j.at("planted_effects")) {
    t.planted_effects.push_back(EffectFromJson(e));
  }
  for (const auto& pair : j.at("tweet_counties")) {
    const auto fips = Fips::Parse(pair.at(1).get<std::string>());
    if (!fips) throw DataError("ground truth: bad fips");
    t.tweet_counties.emplace_back(pair.at(0).get<std::string>(), *fips);
  }
  return t;
}

SynthDataset Generate(const SynthSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const std::vector<County> counties = MakeUniverse(rng, spec);
  if (counties.empty()) throw ValidationError("county universe is empty");
  const std::vector<CountyModel> models = PlantEffects(spec, counties);

  SynthDataset out;
  out.truth.seed = spec.seed;
  out.truth.n_counties = counties.size();
  out.truth.planted_effects = spec.planted_effects;

  std::vector<CountyGeometry> geometries;
  for (const auto& c : counties) geometries.push_back(c.geometry);
  out.files["boundaries.geojson"] = CountiesToGeoJson(geometries).dump() + "\n";

  std::string census = "fips,population,median_age,pct_urban\n";
  std::string elections = "fips,dem_votes,rep_votes,total_votes\n";
  std::string mask = "fips";
  for (const auto& k : kMaskCategories) mask += "," + k;
  mask += "\n";
  for (const auto& c : counties) {
    const std::string& f = c.geometry.fips.str();
    census += f + "," + std::to_string(c.population) + "," +
              FormatDouble(c.median_age) + "," + FormatDouble(c.pct_urban) + "\n";
    if (c.has_election) {
      elections += f + "," + std::to_string(c.dem_votes) + "," +
                   std::to_string(c.rep_votes) + "," +
                   std::to_string(c.total_votes) + "\n";
    }
    mask += f;
    for (int v : c.mask_permille) mask += "," + Permille(v);
    mask += "\n";
  }
  out.files["census.csv"] = census;
  out.files["elections.csv"] = elections;
  out.files["mask.csv"] = mask;

  // Tweets.
  std::vector<double> alloc;
  for (const auto& c : counties) {
    alloc.push_back(std::pow(static_cast<double>(c.population), spec.population_exponent));
  }
  std::discrete_distribution<std::size_t> pick_county(alloc.begin(), alloc.end());
  const Taxonomy taxonomy = Taxonomy::Default();
  const std::int64_t seconds = spec.date_range.days() * 86400;
  const int id_width = static_cast<int>(std::to_string(spec.n_tweets).size());

  std::string corpus = spec.emit_stance
      ? "id,timestamp,lat,lon,frame,stance,sentiment,vivid,virality,hashtags,text\n"
      : "id,timestamp,lat,lon,frame,sentiment,vivid,virality,hashtags,text\n";
  for (std::size_t i = 0; i < spec.n_tweets; ++i) {
    const std::size_t ci = pick_county(rng);
    const County& c = counties[ci];
    const CountyModel& m = models[ci];
    std::discrete_distribution<int> pick_frame(m.frame_p.begin(), m.frame_p.end());
    const MoralFrame frame = FrameAt(pick_frame(rng));
    const int f = Index(frame);

    Stance stance = Stance::kUnknown;
    if (!Bernoulli(rng, spec.unknown_stance_probability)) {
      stance = Bernoulli(rng, spec.pro_probability[f] + m.stance_shift) ? Stance::kPro
                                                                        : Stance::kAnti;
    }
    const double center =
        std::clamp(spec.sentiment_mean[f] + m.sentiment_shift, -0.95, 0.95);
    const double half = std::min(spec.sentiment_spread[f], 1.0 - std::fabs(center));
    const double sentiment =
        std::round(Uniform(rng, center - half, center + half) * 1e4) / 1e4;
    const bool vivid = Bernoulli(rng, spec.vivid_probability + m.vivid_shift);
    const double virality =
        spec.virality_mean > 0
            ? std::floor(std::exponential_distribution<double>(1.0 / spec.virality_mean)(rng))
            : 0.0;
    const LonLat p = InteriorPoint(rng, c.geometry);
    const Timestamp ts = std::chrono::sys_seconds(spec.date_range.from) +
                         std::chrono::seconds(
                             std::uniform_int_distribution<std::int64_t>(0, seconds - 1)(rng));

    std::vector<std::string> tags;
    if (stance == Stance::kPro) tags.push_back(Pick(rng, kProTags));
    if (stance == Stance::kAnti) tags.push_back(Pick(rng, kAntiTags));
    if (Bernoulli(rng, 0.5)) tags.push_back(Pick(rng, kNeutralTags));

    char id[32];
    std::snprintf(id, sizeof(id), "t%0*zu", id_width, i + 1);
    std::string label = taxonomy.Name(frame);
    if (frame == MoralFrame::kLiberty && Bernoulli(rng, 0.25)) label = "Freedom";

    std::string hashtags, text = "synthetic post " + std::to_string(i + 1);
    for (const auto& t : tags) {
      hashtags += (hashtags.empty() ? "" : ";") + t;
      text += " #" + t;
    }
    std::vector<std::string> row = {id, FormatTimestamp(ts), FormatDouble(p.lat),
                                    FormatDouble(p.lon), label};
    if (spec.emit_stance) row.emplace_back(StanceName(stance));
    row.push_back(FormatDouble(sentiment));
    row.emplace_back(vivid ? "true" : "false");
    row.push_back(FormatDouble(virality));
    row.push_back(hashtags);
    row.push_back(text);
    corpus += JoinRecord(row) + "\n";
    out.truth.tweet_counties.emplace_back(id, c.geometry.fips);
  }
  out.files["corpus.csv"] = corpus;
  if (spec.covid) out.files["covid.csv"] = CovidCsv(rng, spec, counties);
  out.files["config.json"] = PipelineConfigFor(spec).dump(2) + "\n";
  out.files["ground_truth.json"] = out.truth.ToJson().dump() + "\n";
  out.files["synth_spec.json"] = spec.ToJson().dump(2) + "\n";
  return out;
}

GroundTruth GenerateToDirectory(const SynthSpec& spec, const std::string& dir) {
  SynthDataset data = Generate(spec);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  for (const auto& [name, contents] : data.files) {
    WriteFile((std::filesystem::path(dir) / name).string(), contents);
  }
  return std::move(data.truth);
}

}  // namespace moralmap

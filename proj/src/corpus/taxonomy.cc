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

#include "moralmap/corpus/taxonomy.h"

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"

namespace moralmap {
namespace {

constexpr std::array<std::string_view, kNumFoundations> kFoundationNames = {
    "Care", "Fairness", "Loyalty", "Authority", "Purity", "Liberty"};

constexpr std::array<std::string_view, kNumFrames> kFrameNames = {
    "Care",      "Harm",       "Fairness", "Cheating",
    "Loyalty",   "Betrayal",   "Authority", "Subversion",
    "Purity",    "Degradation", "Liberty",  "Oppression"};

struct BuiltinAlias {
  std::string_view alias;
  MoralFrame frame;
};

constexpr std::array<BuiltinAlias, 8> kBuiltinAliases = {{
    {"CareV", MoralFrame::kCare},
    {"FairnessV", MoralFrame::kFairness},
    {"LoyaltyV", MoralFrame::kLoyalty},
    {"AuthorityV", MoralFrame::kAuthority},
    {"PurityV", MoralFrame::kPurity},
    {"LibertyV", MoralFrame::kLiberty},
    {"Freedom", MoralFrame::kLiberty},
    {"Sanctity", MoralFrame::kPurity},
}};

}  // namespace

std::string_view FoundationName(Foundation f) {
  return kFoundationNames[Index(f)];
}

std::optional<Foundation> ParseFoundation(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  for (int i = 0; i < kNumFoundations; ++i) {
    if (ToLower(kFoundationNames[i]) == lower) return FoundationAt(i);
  }
  return std::nullopt;
}

std::string_view PolarityName(Polarity p) {
  return p == Polarity::kVirtue ? "virtue" : "vice";
}

std::string_view CanonicalFrameName(MoralFrame f) {
  return kFrameNames[Index(f)];
}

void Taxonomy::AddLabel(const std::string& label, MoralFrame f) {
  const std::string key = ToLower(Trim(label));
  if (key.empty()) throw ValidationError("empty frame label");
  auto [it, inserted] = lookup_.emplace(key, f);
  if (!inserted) {
    throw ValidationError("duplicate frame name or alias: " + label);
  }
}

Taxonomy Taxonomy::Default() {
  Taxonomy t;
  for (int i = 0; i < kNumFrames; ++i) {
    t.names_[i] = std::string(kFrameNames[i]);
    t.AddLabel(t.names_[i], FrameAt(i));
  }
  for (const auto& a : kBuiltinAliases) {
    t.aliases_[Index(a.frame)].emplace_back(a.alias);
    t.AddLabel(std::string(a.alias), a.frame);
  }
  return t;
}

Taxonomy Taxonomy::FromJson(const nlohmann::json& config) {
  if (!config.is_object() || !config.contains("frames") ||
      !config["frames"].is_array()) {
    throw ValidationError("taxonomy config must contain a 'frames' array");
  }
  Taxonomy t;
  std::array<bool, kNumFrames> seen{};
  for (const auto& entry : config["frames"]) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("foundation") || !entry.contains("polarity")) {
      throw ValidationError(
          "taxonomy frame entries need name, foundation and polarity");
    }
    const std::string name = entry["name"].get<std::string>();
    const std::string foundation_name = entry["foundation"].get<std::string>();
    const auto foundation = ParseFoundation(foundation_name);
    if (!foundation) {
      throw ValidationError("unknown foundation '" + foundation_name +
                            "' for frame " + name);
    }
    const std::string polarity = ToLower(entry["polarity"].get<std::string>());
    Polarity p;
    if (polarity == "virtue") {
      p = Polarity::kVirtue;
    } else if (polarity == "vice") {
      p = Polarity::kVice;
    } else {
      throw ValidationError("polarity must be virtue or vice: " + polarity);
    }
    const MoralFrame frame = FrameOf(*foundation, p);
    t.AddLabel(name, frame);
    if (seen[Index(frame)]) {
      throw ValidationError("foundation " + foundation_name +
                            " has more than one " + polarity + " frame");
    }
    seen[Index(frame)] = true;
    t.names_[Index(frame)] = name;
    if (entry.contains("aliases")) {
      for (const auto& alias : entry["aliases"]) {
        const std::string a = alias.get<std::string>();
        t.AddLabel(a, frame);
        t.aliases_[Index(frame)].push_back(a);
      }
    }
  }
  for (int f = 0; f < kNumFoundations; ++f) {
    const int polarities = seen[2 * f] + seen[2 * f + 1];
    if (polarities != 2) {
      throw ValidationError("foundation " +
                            std::string(kFoundationNames[f]) + " has " +
                            std::to_string(polarities) +
                            " polarities, expected 2");
    }
  }
  return t;
}

Taxonomy Taxonomy::Load(const std::string& path) {
  if (path.empty()) return Default();
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(ReadFile(path), nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("taxonomy file " + path + ": " + e.what());
  }
  return FromJson(config);
}

std::optional<MoralFrame> Taxonomy::Resolve(std::string_view label) const {
  auto it = lookup_.find(ToLower(Trim(label)));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json Taxonomy::ToJson() const {
  nlohmann::json frames = nlohmann::json::array();
  for (int i = 0; i < kNumFrames; ++i) {
    const MoralFrame f = FrameAt(i);
    frames.push_back({{"name", names_[i]},
                      {"foundation", FoundationName(FoundationOf(f))},
                      {"polarity", PolarityName(PolarityOf(f))},
                      {"aliases", aliases_[i]}});
  }
  return {{"frames", frames}};
}

}  // namespace moralmap

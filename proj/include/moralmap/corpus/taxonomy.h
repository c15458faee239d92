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

// Moral foundations taxonomy: six foundations, each expressed as a virtue
// frame and a vice frame.
//
// The twelve frame slots are fixed; a Taxonomy only controls how labels in
// the input map onto those slots (display names and aliases). Frame index is
// `2 * foundation + polarity`, so partner and foundation lookups are
// arithmetic.

#ifndef MORALMAP_CORPUS_TAXONOMY_H_
#define MORALMAP_CORPUS_TAXONOMY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace moralmap {

inline constexpr int kNumFoundations = 6;
inline constexpr int kNumFrames = 12;

enum class Foundation : std::uint8_t {
  kCare = 0,
  kFairness,
  kLoyalty,
  kAuthority,
  kPurity,
  kLiberty,
};

enum class Polarity : std::uint8_t { kVirtue = 0, kVice = 1 };

enum class MoralFrame : std::uint8_t {
  kCare = 0,
  kHarm,
  kFairness,
  kCheating,
  kLoyalty,
  kBetrayal,
  kAuthority,
  kSubversion,
  kPurity,
  kDegradation,
  kLiberty,
  kOppression,
};

constexpr int Index(MoralFrame f) { return static_cast<int>(f); }
constexpr int Index(Foundation f) { return static_cast<int>(f); }

constexpr MoralFrame FrameAt(int index) {
  return static_cast<MoralFrame>(index);
}
constexpr Foundation FoundationAt(int index) {
  return static_cast<Foundation>(index);
}

constexpr Foundation FoundationOf(MoralFrame f) {
  return FoundationAt(Index(f) / 2);
}
constexpr Polarity PolarityOf(MoralFrame f) {
  return static_cast<Polarity>(Index(f) % 2);
}
constexpr MoralFrame FrameOf(Foundation foundation, Polarity polarity) {
  return FrameAt(Index(foundation) * 2 + static_cast<int>(polarity));
}
// The opposite-polarity frame of the same foundation.
constexpr MoralFrame Partner(MoralFrame f) { return FrameAt(Index(f) ^ 1); }

std::string_view FoundationName(Foundation f);
std::optional<Foundation> ParseFoundation(std::string_view name);
std::string_view PolarityName(Polarity p);

// Canonical label used in outputs ("Care", "Harm", ..., "Oppression").
std::string_view CanonicalFrameName(MoralFrame f);

class Taxonomy {
 public:
  // 12 canonical names plus the built-in aliases ("Freedom" -> Liberty).
  static Taxonomy Default();

  // Parses {"frames": [{"name", "foundation", "polarity", "aliases"}...]}.
  // Throws ValidationError on duplicate labels, unknown foundations, or a
  // foundation without exactly one virtue and one vice frame.
  static Taxonomy FromJson(const nlohmann::json& config);

  // Default() when `path` is empty, otherwise FromJson of the file.
  static Taxonomy Load(const std::string& path);

  // Case-insensitive lookup by name or alias.
  std::optional<MoralFrame> Resolve(std::string_view label) const;

  const std::string& Name(MoralFrame f) const { return names_[Index(f)]; }
  const std::vector<std::string>& Aliases(MoralFrame f) const {
    return aliases_[Index(f)];
  }

  nlohmann::json ToJson() const;

 private:
  Taxonomy() = default;
  void AddLabel(const std::string& label, MoralFrame f);

  std::array<std::string, kNumFrames> names_;
  std::array<std::vector<std::string>, kNumFrames> aliases_;
  std::unordered_map<std::string, MoralFrame> lookup_;
};

}  // namespace moralmap

#endif  // MORALMAP_CORPUS_TAXONOMY_H_

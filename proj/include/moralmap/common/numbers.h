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

#ifndef MORALMAP_COMMON_NUMBERS_H_
#define MORALMAP_COMMON_NUMBERS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace moralmap {

// Strict parses: surrounding whitespace allowed, trailing garbage and
// non-finite values rejected.
std::optional<double> ParseDouble(std::string_view text);
std::optional<std::int64_t> ParseInt(std::string_view text);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);

// Rounds to `digits` significant decimal digits. Non-finite values pass
// through unchanged.
double RoundSignificant(double value, int digits);

// "%.<digits>g" rendering.
std::string FormatSignificant(double value, int digits);

}  // namespace moralmap

#endif  // MORALMAP_COMMON_NUMBERS_H_

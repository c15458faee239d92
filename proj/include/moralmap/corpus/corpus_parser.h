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

#ifndef MORALMAP_CORPUS_CORPUS_PARSER_H_
#define MORALMAP_CORPUS_CORPUS_PARSER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "moralmap/common/dates.h"
#include "moralmap/corpus/taxonomy.h"
#include "moralmap/corpus/tweet.h"

namespace moralmap {

// Logical field names. id, timestamp, lat, lon and frame are required.
inline constexpr std::string_view kRequiredCorpusFields[] = {
    "id", "timestamp", "lat", "lon", "frame"};
inline constexpr std::string_view kOptionalCorpusFields[] = {
    "stance", "sentiment", "vivid", "virality", "text", "hashtags"};

struct CorpusSchema {
  enum class Format { kDelimited, kJsonLines };
  // Range of the source sentiment column; [0,1] sources are remapped to
  // [-1,1] as 2s-1.
  enum class SentimentScale { kSigned, kUnit };

  Format format = Format::kDelimited;
  char delimiter = ',';
  // logical field -> source column (or JSON key).
  std::map<std::string, std::string> fields;
  SentimentScale sentiment_scale = SentimentScale::kSigned;
  char hashtag_separator = ';';
  // Records outside the window are rejected.
  std::optional<DateRange> study_window;

  // Identity mapping for every logical field, delimited format.
  static CorpusSchema Default();

  // Unspecified keys keep their Default() value; a provided "fields" object
  // replaces the whole mapping. Throws ValidationError on bad values.
  static CorpusSchema FromJson(const nlohmann::json& config);

  // Throws ValidationError naming the first required field without a column.
  void Validate() const;
};

// Reject reasons written to the audit file.
namespace reject_reason {
inline constexpr std::string_view kMalformed = "malformed-record";
inline constexpr std::string_view kEmpty = "empty-line";
inline constexpr std::string_view kMissingField = "missing-field";
inline constexpr std::string_view kUnknownFrame = "unknown-frame";
inline constexpr std::string_view kOutOfRange = "out-of-range";
inline constexpr std::string_view kBadNumber = "bad-number";
inline constexpr std::string_view kBadTimestamp = "bad-timestamp";
inline constexpr std::string_view kOutsideWindow = "outside-window";
inline constexpr std::string_view kBadStance = "bad-stance";
inline constexpr std::string_view kBadBoolean = "bad-boolean";
inline constexpr std::string_view kDuplicateId = "duplicate-id";
}  // namespace reject_reason

struct Reject {
  std::size_t line_no = 0;
  std::string reason;
  bool operator==(const Reject&) const = default;
};

struct ParsedCorpus {
  std::vector<AnnotatedTweet> tweets;  // input order
  std::vector<Reject> rejects;         // ascending line number
  std::size_t total_records = 0;       // tweets.size() + rejects.size()
};

// Parses every record line. `workers` > 1 splits lines across threads; the
// result is identical for any worker count. Throws ValidationError when the
// schema lacks a required field or the header lacks a mapped column.
ParsedCorpus ParseCorpus(std::string_view text, const CorpusSchema& schema,
                         const Taxonomy& taxonomy, int workers = 1);

// As ParseCorpus; throws IoError when the file is unreadable.
ParsedCorpus ParseCorpusFile(const std::string& path,
                             const CorpusSchema& schema,
                             const Taxonomy& taxonomy, int workers = 1);

// `<line_no>\t<reason>` per reject.
std::string FormatRejectReport(const std::vector<Reject>& rejects);

}  // namespace moralmap

#endif  // MORALMAP_CORPUS_CORPUS_PARSER_H_

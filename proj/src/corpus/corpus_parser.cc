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

#include "moralmap/corpus/corpus_parser.h"

#include <algorithm>
#include <array>
#include <thread>
#include <unordered_set>
#include <variant>

#include "moralmap/common/csv.h"
#include "moralmap/common/error.h"
#include "moralmap/common/numbers.h"

namespace moralmap {
namespace {

enum FieldSlot {
  kId = 0,
  kTimestamp,
  kLat,
  kLon,
  kFrame,
  kStance,
  kSentiment,
  kVivid,
  kVirality,
  kText,
  kHashtags,
  kNumSlots,
};

constexpr std::array<std::string_view, kNumSlots> kSlotNames = {
    "id",        "timestamp", "lat",   "lon",  "frame",   "stance",
    "sentiment", "vivid",     "virality", "text", "hashtags"};

using RecordValues = std::array<std::optional<std::string>, kNumSlots>;
using RecordResult = std::variant<AnnotatedTweet, std::string_view>;

std::optional<bool> ParseBool(std::string_view text) {
  const std::string s = ToLower(Trim(text));
  if (s == "1" || s == "true" || s == "yes" || s == "y" || s == "vivid") {
    return true;
  }
  if (s == "0" || s == "false" || s == "no" || s == "n" || s.empty()) {
    return false;
  }
  return std::nullopt;
}

std::vector<std::string> SplitHashtags(std::string_view text, char sep) {
  std::vector<std::string> tags;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    std::string tag = NormalizeHashtag(text.substr(start, end - start));
    if (!tag.empty()) tags.push_back(std::move(tag));
    start = end + 1;
  }
  return tags;
}

RecordResult BuildTweet(const RecordValues& v, const CorpusSchema& schema,
                        const Taxonomy& taxonomy) {
  namespace rr = reject_reason;
  for (int slot : {kId, kTimestamp, kLat, kLon, kFrame}) {
    if (!v[slot] || Trim(*v[slot]).empty()) return rr::kMissingField;
  }
  AnnotatedTweet t;
  t.id = std::string(Trim(*v[kId]));

  const auto ts = ParseTimestamp(*v[kTimestamp]);
  if (!ts) return rr::kBadTimestamp;
  t.timestamp = *ts;
  if (schema.study_window && !schema.study_window->Contains(DateOf(*ts))) {
    return rr::kOutsideWindow;
  }

  const auto lat = ParseDouble(*v[kLat]);
  const auto lon = ParseDouble(*v[kLon]);
  if (!lat || !lon) return rr::kBadNumber;
  if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
    return rr::kOutOfRange;
  }
  t.latitude = *lat;
  t.longitude = *lon;

  const auto frame = taxonomy.Resolve(*v[kFrame]);
  if (!frame) return rr::kUnknownFrame;
  t.frame = *frame;

  if (v[kStance]) {
    const auto stance = ParseStance(*v[kStance]);
    if (!stance) return rr::kBadStance;
    t.stance = *stance;
  }
  if (v[kSentiment] && !Trim(*v[kSentiment]).empty()) {
    auto s = ParseDouble(*v[kSentiment]);
    if (!s) return rr::kBadNumber;
    double value = *s;
    if (schema.sentiment_scale == CorpusSchema::SentimentScale::kUnit) {
      if (value < 0.0 || value > 1.0) return rr::kOutOfRange;
      value = 2.0 * value - 1.0;
    }
    if (value < -1.0 || value > 1.0) return rr::kOutOfRange;
    t.sentiment = value;
  }
  if (v[kVivid]) {
    const auto vivid = ParseBool(*v[kVivid]);
    if (!vivid) return rr::kBadBoolean;
    t.vivid = *vivid;
  }
  if (v[kVirality] && !Trim(*v[kVirality]).empty()) {
    const auto virality = ParseDouble(*v[kVirality]);
    if (!virality) return rr::kBadNumber;
    if (*virality < 0.0) return rr::kOutOfRange;
    t.virality = *virality;
  }
  if (v[kText] && !v[kText]->empty()) t.text = *v[kText];
  if (v[kHashtags]) {
    t.hashtags = SplitHashtags(*v[kHashtags], schema.hashtag_separator);
  } else if (t.text) {
    t.hashtags = ExtractHashtags(*t.text);
  }
  return t;
}

std::optional<std::string> JsonValueAsString(const nlohmann::json& value,
                                             char hashtag_separator) {
  if (value.is_null()) return std::nullopt;
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) return FormatDouble(value.get<double>());
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!item.is_string()) return std::nullopt;
      if (!joined.empty()) joined.push_back(hashtag_separator);
      joined += item.get<std::string>();
    }
    return joined;
  }
  return std::nullopt;
}

struct RecordSource {
  std::vector<std::string_view> lines;
  std::size_t first_record = 0;  // index into lines
  std::size_t line_offset = 1;   // line_no = index + line_offset
  std::array<std::optional<std::size_t>, kNumSlots> columns;  // delimited
  std::size_t n_columns = 0;
};

RecordResult ParseLine(std::string_view line, const RecordSource& src,
                       const CorpusSchema& schema, const Taxonomy& taxonomy) {
  if (Trim(line).empty()) return reject_reason::kEmpty;
  RecordValues values;
  if (schema.format == CorpusSchema::Format::kDelimited) {
    auto cells = SplitRecord(line, schema.delimiter);
    if (!cells || cells->size() != src.n_columns) {
      return reject_reason::kMalformed;
    }
    for (int slot = 0; slot < kNumSlots; ++slot) {
      if (src.columns[slot]) values[slot] = (*cells)[*src.columns[slot]];
    }
  } else {
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      return reject_reason::kMalformed;
    }
    if (!record.is_object()) return reject_reason::kMalformed;
    for (int slot = 0; slot < kNumSlots; ++slot) {
      auto it = schema.fields.find(std::string(kSlotNames[slot]));
      if (it == schema.fields.end()) continue;
      auto value = record.find(it->second);
      if (value == record.end()) continue;
      values[slot] = JsonValueAsString(*value, schema.hashtag_separator);
      if (!values[slot] && !value->is_null()) return reject_reason::kMalformed;
    }
  }
  return BuildTweet(values, schema, taxonomy);
}

}  // namespace

CorpusSchema CorpusSchema::Default() {
  CorpusSchema schema;
  for (auto name : kSlotNames) schema.fields.emplace(name, name);
  return schema;
}

CorpusSchema CorpusSchema::FromJson(const nlohmann::json& config) {
  CorpusSchema schema = Default();
  if (config.is_null()) return schema;
  if (!config.is_object()) throw ValidationError("corpus schema must be an object");
  if (config.contains("format")) {
    const std::string format = config["format"].get<std::string>();
    if (format == "csv" || format == "delimited") {
      schema.format = Format::kDelimited;
    } else if (format == "jsonl") {
      schema.format = Format::kJsonLines;
    } else {
      throw ValidationError("unknown corpus format: " + format);
    }
  }
  if (config.contains("delimiter")) {
    const std::string d = config["delimiter"].get<std::string>();
    if (d == "\\t" || d == "tab") {
      schema.delimiter = '\t';
    } else if (d.size() == 1) {
      schema.delimiter = d[0];
    } else {
      throw ValidationError("delimiter must be a single character");
    }
  }
  if (config.contains("fields")) {
    schema.fields.clear();
    for (const auto& [logical, column] : config["fields"].items()) {
      const bool known =
          std::find(kSlotNames.begin(), kSlotNames.end(), logical) !=
          kSlotNames.end();
      if (!known) throw ValidationError("unknown corpus field: " + logical);
      schema.fields[logical] = column.get<std::string>();
    }
  }
  if (config.contains("sentiment_range")) {
    const auto range = config["sentiment_range"].get<std::vector<double>>();
    if (range == std::vector<double>{-1.0, 1.0}) {
      schema.sentiment_scale = SentimentScale::kSigned;
    } else if (range == std::vector<double>{0.0, 1.0}) {
      schema.sentiment_scale = SentimentScale::kUnit;
    } else {
      throw ValidationError("sentiment_range must be [-1,1] or [0,1]");
    }
  }
  if (config.contains("hashtag_separator")) {
    const std::string s = config["hashtag_separator"].get<std::string>();
    if (s.size() != 1) throw ValidationError("hashtag_separator must be one character");
    schema.hashtag_separator = s[0];
  }
  return schema;
}

void CorpusSchema::Validate() const {
  for (auto name : kRequiredCorpusFields) {
    auto it = fields.find(std::string(name));
    if (it == fields.end() || it->second.empty()) {
      throw ValidationError("corpus schema missing required field: " +
                            std::string(name));
    }
  }
}

ParsedCorpus ParseCorpus(std::string_view text, const CorpusSchema& schema,
                         const Taxonomy& taxonomy, int workers) {
  schema.Validate();
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  RecordSource src;
  src.lines = SplitLines(text);
  if (schema.format == CorpusSchema::Format::kDelimited) {
    if (src.lines.empty()) throw DataError("corpus has no header row");
    auto header = SplitRecord(src.lines[0], schema.delimiter);
    if (!header) throw DataError("corpus header is malformed");
    for (auto& h : *header) h = std::string(Trim(h));
    src.n_columns = header->size();
    for (int slot = 0; slot < kNumSlots; ++slot) {
      auto it = schema.fields.find(std::string(kSlotNames[slot]));
      if (it == schema.fields.end()) continue;
      auto col = std::find(header->begin(), header->end(), it->second);
      if (col == header->end()) {
        throw ValidationError("corpus header lacks column '" + it->second +
                              "' mapped to field " + it->first);
      }
      src.columns[slot] = static_cast<std::size_t>(col - header->begin());
    }
    src.first_record = 1;
  }

  const std::size_t n = src.lines.size() - src.first_record;
  std::vector<RecordResult> results(n, RecordResult{std::string_view{}});
  auto parse_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = ParseLine(src.lines[i + src.first_record], src, schema,
                             taxonomy);
    }
  };

  const std::size_t n_workers =
      std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1,
                              std::max<std::size_t>(1, n / 256 + 1));
  if (n_workers <= 1) {
    parse_range(0, n);
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (n + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(parse_range, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  // Sequential pass: duplicate ids keep the first occurrence.
  ParsedCorpus out;
  out.total_records = n;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line_no = i + src.first_record + 1;
    if (auto* tweet = std::get_if<AnnotatedTweet>(&results[i])) {
      if (!seen_ids.insert(tweet->id).second) {
        out.rejects.push_back(
            {line_no, std::string(reject_reason::kDuplicateId)});
        continue;
      }
      out.tweets.push_back(std::move(*tweet));
    } else {
      out.rejects.push_back(
          {line_no, std::string(std::get<std::string_view>(results[i]))});
    }
  }
  return out;
}

ParsedCorpus ParseCorpusFile(const std::string& path,
                             const CorpusSchema& schema,
                             const Taxonomy& taxonomy, int workers) {
  schema.Validate();
  const std::string text = ReadFile(path);
  return ParseCorpus(text, schema, taxonomy, workers);
}

std::string FormatRejectReport(const std::vector<Reject>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    out += std::to_string(r.line_no);
    out.push_back('\t');
    out += r.reason;
    out.push_back('\n');
  }
  return out;
}

}  // namespace moralmap

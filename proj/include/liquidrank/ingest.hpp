/*
 * Copyright 2026 The liquidrank Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "liquidrank/csv.hpp"
#include "liquidrank/error.hpp"

namespace liquidrank {

// Lowercase channel handle: 1-15 characters from [a-z0-9_].
using Handle = std::string;
using Timestamp = std::int64_t;  // UTC epoch seconds

inline constexpr std::size_t kMaxHandleLength = 15;

constexpr bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

constexpr char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

// Canonical (already lowercased) handle check.
inline bool is_valid_handle(std::string_view h) {
  if (h.empty() || h.size() > kMaxHandleLength) return false;
  return std::all_of(h.begin(), h.end(), [](char c) {
    return is_handle_char(c) && !(c >= 'A' && c <= 'Z');
  });
}

struct TweetRecord {
  Handle author;
  std::string text;
  Timestamp timestamp = 0;

  friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

// One mention occurrence: `rater` mentioned `ratee` at `timestamp`.
struct InteractionRecord {
  Handle rater;
  Handle ratee;
  Timestamp timestamp = 0;

  friend bool operator==(const InteractionRecord&,
                         const InteractionRecord&) = default;
};

enum class InputFormat { jsonl, csv };
enum class ParseMode { strict, lenient };

struct LineIssue {
  std::size_t line = 0;
  std::string reason;
};

template <typename Record>
struct ParseResult {
  std::vector<Record> records;
  std::vector<LineIssue> malformed;  // only populated in lenient mode
};

// Every "@handle" token in order of appearance, lowercased. The "@" must
// open the string or follow a character outside [A-Za-z0-9_@]; runs longer
// than 15 characters are cut at 15 and the tail is plain text.
inline std::vector<Handle> extract_mentions(std::string_view text) {
  std::vector<Handle> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '@') continue;
    if (i > 0) {
      const char prev = text[i - 1];
      if (is_handle_char(prev) || prev == '@') continue;
    }
    std::size_t end = i + 1;
    while (end < text.size() && is_handle_char(text[end])) ++end;
    const std::size_t len = std::min(end - i - 1, kMaxHandleLength);
    if (len == 0) continue;
    out.push_back(to_lower(text.substr(i + 1, len)));
    i += len;
  }
  return out;
}

inline std::vector<InteractionRecord> to_interactions(
    const std::vector<TweetRecord>& tweets) {
  std::vector<InteractionRecord> out;
  for (const auto& t : tweets) {
    for (auto& m : extract_mentions(t.text)) {
      if (m == t.author) continue;
      out.push_back({t.author, std::move(m), t.timestamp});
    }
  }
  return out;
}

namespace detail {

inline std::optional<Timestamp> parse_timestamp(std::string_view s) {
  if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
  Timestamp value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

template <typename Record>
void report_issue(ParseResult<Record>& result, ParseMode mode,
                  std::size_t line, std::string reason,
                  const std::string& source) {
  if (mode == ParseMode::strict) throw FormatError(line, reason, source);
  result.malformed.push_back({line, std::move(reason)});
}

inline bool is_blank_line(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Splits into lines, dropping a trailing '\r' from each.
template <typename Fn>
void for_each_line(std::string_view data, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    std::string_view line = data.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = nl + 1;
  }
}

// Checks the header row of a CSV file; an empty input yields false (no rows).
inline bool expect_header(csv::Reader& reader, std::string_view expected,
                          const std::string& source) {
  if (reader.done()) return false;
  auto header = reader.next();
  std::string joined;
  if (header.ok()) {
    for (std::size_t i = 0; i < header.row->fields.size(); ++i) {
      if (i) joined.push_back(',');
      joined += header.row->fields[i];
    }
  }
  if (!header.ok() || joined != expected) {
    throw FormatError(1, "expected header \"" + std::string(expected) + "\"",
                      source);
  }
  return true;
}

inline std::optional<TweetRecord> tweet_from_json(std::string_view line,
                                                  std::string& why) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    why = "invalid JSON";
    return std::nullopt;
  }
  if (!obj.is_object()) {
    why = "expected a JSON object";
    return std::nullopt;
  }
  const auto author = obj.find("author");
  const auto text = obj.find("text");
  const auto ts = obj.find("timestamp");
  if (author == obj.end() || !author->is_string()) {
    why = "missing or non-string \"author\"";
    return std::nullopt;
  }
  if (text == obj.end() || !text->is_string()) {
    why = "missing or non-string \"text\"";
    return std::nullopt;
  }
  if (ts == obj.end() || !ts->is_number_integer()) {
    why = "missing or non-integer \"timestamp\"";
    return std::nullopt;
  }
  TweetRecord rec;
  rec.author = to_lower(author->get_ref<const std::string&>());
  rec.text = text->get<std::string>();
  if (ts->is_number_unsigned()) {
    const auto v = ts->get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<Timestamp>::max())) {
      why = "timestamp out of range";
      return std::nullopt;
    }
    rec.timestamp = static_cast<Timestamp>(v);
  } else {
    rec.timestamp = ts->get<Timestamp>();
  }
  if (rec.timestamp < 0) {
    why = "negative timestamp";
    return std::nullopt;
  }
  if (!is_valid_handle(rec.author)) {
    why = "invalid author handle";
    return std::nullopt;
  }
  return rec;
}

}  // namespace detail

// Parses a tweet dataset. Blank lines are ignored. In strict mode the first
// malformed line raises FormatError; in lenient mode it is skipped and
// listed in `malformed`.
inline ParseResult<TweetRecord> parse_tweets(std::string_view input,
                                             InputFormat format,
                                             ParseMode mode = ParseMode::strict,
                                             const std::string& source = {}) {
  ParseResult<TweetRecord> result;
  if (format == InputFormat::jsonl) {
    detail::for_each_line(input, [&](std::size_t line_no, std::string_view line) {
      if (detail::is_blank_line(line)) return;
      std::string why;
      if (auto rec = detail::tweet_from_json(line, why)) {
        result.records.push_back(std::move(*rec));
      } else {
        detail::report_issue(result, mode, line_no, why, source);
      }
    });
    return result;
  }

  csv::Reader reader(input);
  if (!detail::expect_header(reader, "author,text,timestamp", source)) {
    return result;
  }
  while (!reader.done()) {
    auto r = reader.next();
    if (!r.ok()) {
      detail::report_issue(result, mode, r.line, r.error, source);
      continue;
    }
    const auto& f = r.row->fields;
    if (csv::is_blank(*r.row)) continue;
    if (f.size() != 3) {
      detail::report_issue(result, mode, r.line,
                           "expected 3 columns, found " + std::to_string(f.size()),
                           source);
      continue;
    }
    TweetRecord rec{to_lower(f[0]), f[1], 0};
    if (!is_valid_handle(rec.author)) {
      detail::report_issue(result, mode, r.line, "invalid author handle", source);
      continue;
    }
    const auto ts = detail::parse_timestamp(f[2]);
    if (!ts) {
      detail::report_issue(result, mode, r.line, "invalid timestamp", source);
      continue;
    }
    rec.timestamp = *ts;
    result.records.push_back(std::move(rec));
  }
  return result;
}

inline std::string write_tweets(const std::vector<TweetRecord>& tweets,
                                InputFormat format) {
  std::string out;
  if (format == InputFormat::jsonl) {
    for (const auto& t : tweets) {
      nlohmann::json obj = {
          {"author", t.author}, {"text", t.text}, {"timestamp", t.timestamp}};
      out += obj.dump();
      out.push_back('\n');
    }
    return out;
  }
  out = "author,text,timestamp\n";
  for (const auto& t : tweets) {
    csv::append_row(out, {t.author, t.text, std::to_string(t.timestamp)});
  }
  return out;
}

inline std::string write_interactions(
    const std::vector<InteractionRecord>& records) {
  std::string out = "rater,ratee,timestamp\n";
  for (const auto& r : records) {
    out += r.rater;
    out.push_back(',');
    out += r.ratee;
    out.push_back(',');
    out += std::to_string(r.timestamp);
    out.push_back('\n');
  }
  return out;
}

inline ParseResult<InteractionRecord> parse_interactions(
    std::string_view input, ParseMode mode = ParseMode::strict,
    const std::string& source = {}) {
  ParseResult<InteractionRecord> result;
  csv::Reader reader(input);
  if (!detail::expect_header(reader, "rater,ratee,timestamp", source)) {
    return result;
  }
  while (!reader.done()) {
    auto r = reader.next();
    if (!r.ok()) {
      detail::report_issue(result, mode, r.line, r.error, source);
      continue;
    }
    if (csv::is_blank(*r.row)) continue;
    const auto& f = r.row->fields;
    if (f.size() != 3) {
      detail::report_issue(result, mode, r.line, "expected 3 columns", source);
      continue;
    }
    if (!is_valid_handle(f[0]) || !is_valid_handle(f[1])) {
      detail::report_issue(result, mode, r.line, "invalid handle", source);
      continue;
    }
    if (f[0] == f[1]) {
      detail::report_issue(result, mode, r.line, "self-mention", source);
      continue;
    }
    const auto ts = detail::parse_timestamp(f[2]);
    if (!ts) {
      detail::report_issue(result, mode, r.line, "invalid timestamp", source);
      continue;
    }
    result.records.push_back({f[0], f[1], *ts});
  }
  return result;
}

}  // namespace liquidrank

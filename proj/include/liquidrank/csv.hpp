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

// Minimal RFC-4180 reader and writer. Quoted fields may contain commas,
// doubled quotes and line breaks; both LF and CRLF record terminators are
// accepted on input, LF is always written.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liquidrank::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // physical line on which the record starts
};

// Outcome of reading one record: either a row, or a syntax error that has
// already been skipped over so reading can resume with the next record.
struct ReadResult {
  std::optional<Row> row;
  std::string error;
  std::size_t line = 0;

  bool ok() const { return row.has_value(); }
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {
    if (data_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  bool done() const { return pos_ >= data_.size(); }

  // Precondition: !done().
  ReadResult next() {
    ReadResult result;
    result.line = line_;
    Row row;
    row.line = line_;
    std::string field;
    bool in_quotes = false;
    bool quoted = false;     // current field started with a quote
    bool after_quote = false;  // closing quote seen, expecting , or EOL

    auto fail = [&](std::string reason) {
      result.error = std::move(reason);
      skip_line();
      return result;
    };

    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (in_quotes) {
        ++pos_;
        if (c == '"') {
          if (pos_ < data_.size() && data_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            in_quotes = false;
            after_quote = true;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == ',') {
        ++pos_;
        row.fields.push_back(std::move(field));
        field.clear();
        quoted = after_quote = false;
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (c == '\r' && (pos_ + 1 >= data_.size() || data_[pos_ + 1] != '\n')) {
          return fail("bare carriage return");
        }
        pos_ += (c == '\r') ? 2 : 1;
        ++line_;
        row.fields.push_back(std::move(field));
        result.row = std::move(row);
        return result;
      }
      if (after_quote) return fail("unexpected character after closing quote");
      if (c == '"') {
        if (!field.empty() || quoted) return fail("quote inside unquoted field");
        quoted = in_quotes = true;
        ++pos_;
        continue;
      }
      field.push_back(c);
      ++pos_;
    }
    if (in_quotes) {
      result.error = "unterminated quoted field";
      return result;
    }
    row.fields.push_back(std::move(field));
    result.row = std::move(row);
    return result;
  }

 private:
  void skip_line() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_++];
      if (c == '\n') {
        ++line_;
        return;
      }
    }
  }

  std::string_view data_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

inline bool needs_quoting(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void append_field(std::string& out, std::string_view field) {
  if (!needs_quoting(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

inline void append_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    append_field(out, fields[i]);
  }
  out.push_back('\n');
}

// True when the row is a single empty field, i.e. a blank line.
inline bool is_blank(const Row& row) {
  return row.fields.size() == 1 && row.fields.front().empty();
}

}  // namespace liquidrank::csv

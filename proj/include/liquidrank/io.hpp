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

// File formats shared by the pipeline stages: ranking CSV, graph snapshot
// CSV, judgment CSV, reputation snapshot JSON and metric report JSON.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "liquidrank/csv.hpp"
#include "liquidrank/error.hpp"
#include "liquidrank/eval.hpp"
#include "liquidrank/graph.hpp"
#include "liquidrank/rank.hpp"

namespace liquidrank::io {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return std::move(ss).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

// 12 significant digits, locale independent.
inline std::string format_score(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                       std::chars_format::general, 12);
  if (ec != std::errc{}) throw Error("cannot format score");
  return std::string(buf, ptr);
}

namespace detail {

inline std::string header_of(const csv::Row& row) {
  std::string joined;
  for (std::size_t i = 0; i < row.fields.size(); ++i) {
    if (i) joined.push_back(',');
    joined += row.fields[i];
  }
  return joined;
}

// Iterates data rows after checking the header. Any syntax error is fatal.
template <typename Fn>
void for_each_row(std::string_view data, std::string_view header,
                  std::size_t columns, const std::string& source, Fn&& fn) {
  csv::Reader reader(data);
  if (reader.done()) return;
  auto head = reader.next();
  if (!head.ok() || header_of(*head.row) != header) {
    throw FormatError(1, "expected header \"" + std::string(header) + "\"",
                      source);
  }
  while (!reader.done()) {
    auto r = reader.next();
    if (!r.ok()) throw FormatError(r.line, r.error, source);
    if (csv::is_blank(*r.row)) continue;
    if (r.row->fields.size() != columns) {
      throw FormatError(r.line,
                        "expected " + std::to_string(columns) + " columns, found " +
                            std::to_string(r.row->fields.size()),
                        source);
    }
    fn(*r.row);
  }
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty() || s.front() == '+') return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

// ---- ranking CSV: rank,node,score,method --------------------------------

inline std::string write_ranking_csv(const RankedList& list) {
  std::string out = "rank,node,score,method\n";
  const std::string method(to_string(list.method));
  for (const auto& e : list.entries) {
    out += std::to_string(e.rank);
    out.push_back(',');
    csv::append_field(out, e.node);
    out.push_back(',');
    out += format_score(e.score);
    out.push_back(',');
    out += method;
    out.push_back('\n');
  }
  return out;
}

// Rows must be in rank order 1..N with distinct nodes and a single method.
inline RankedList parse_ranking_csv(std::string_view data,
                                    const std::string& source = {}) {
  RankedList list;
  std::optional<RankMethod> method;
  std::set<Handle> seen;
  detail::for_each_row(
      data, "rank,node,score,method", 4, source, [&](const csv::Row& row) {
        const auto& f = row.fields;
        std::size_t rank = 0;
        double score = 0;
        if (!detail::parse_number(f[0], rank) || rank != list.entries.size() + 1) {
          throw FormatError(row.line, "ranks must run 1..N in order", source);
        }
        if (f[1].empty() || !seen.insert(f[1]).second) {
          throw FormatError(row.line, "empty or duplicate node", source);
        }
        if (!detail::parse_number(f[2], score) || !std::isfinite(score)) {
          throw FormatError(row.line, "invalid score", source);
        }
        RankMethod m;
        try {
          m = parse_rank_method(f[3]);
        } catch (const ValidationError& e) {
          throw FormatError(row.line, e.what(), source);
        }
        if (method && *method != m) {
          throw FormatError(row.line, "mixed ranking methods", source);
        }
        method = m;
        list.entries.push_back({f[1], score, rank});
      });
  if (method) list.method = *method;
  return list;
}

// ---- graph snapshot CSV: rater,ratee,weight ------------------------------

inline std::string write_graph_csv(const RatingGraph& graph) {
  std::string out = "rater,ratee,weight\n";
  const auto& nodes = graph.nodes();
  for (const Edge& e : graph.edges()) {
    out += nodes[e.rater];
    out.push_back(',');
    out += nodes[e.ratee];
    out.push_back(',');
    out += std::to_string(e.weight);
    out.push_back('\n');
  }
  return out;
}

inline RatingGraph parse_graph_csv(std::string_view data,
                                   const std::string& source = {}) {
  std::vector<std::pair<std::pair<Handle, Handle>, Weight>> counts;
  std::set<std::pair<Handle, Handle>> seen;
  detail::for_each_row(data, "rater,ratee,weight", 3, source,
                       [&](const csv::Row& row) {
                         const auto& f = row.fields;
                         Weight w = 0;
                         if (!is_valid_handle(f[0]) || !is_valid_handle(f[1])) {
                           throw FormatError(row.line, "invalid handle", source);
                         }
                         if (f[0] == f[1]) {
                           throw FormatError(row.line, "self-loop", source);
                         }
                         if (!detail::parse_number(f[2], w) || w == 0) {
                           throw FormatError(row.line, "weight must be a positive integer",
                                             source);
                         }
                         if (!seen.emplace(f[0], f[1]).second) {
                           throw FormatError(row.line, "duplicate edge", source);
                         }
                         counts.push_back({{f[0], f[1]}, w});
                       });
  return RatingGraph::from_counts(counts);
}

// ---- judgments CSV: node,grade -------------------------------------------

inline JudgmentSet parse_judgments_csv(std::string_view data,
                                       int threshold = JudgmentSet::kDefaultThreshold,
                                       const std::string& source = {}) {
  std::map<Handle, int> grades;
  detail::for_each_row(data, "node,grade", 2, source, [&](const csv::Row& row) {
    const auto& f = row.fields;
    int grade = -1;
    if (f[0].empty()) throw FormatError(row.line, "empty node", source);
    if (!detail::parse_number(f[1], grade) || grade < 0 ||
        grade > JudgmentSet::kMaxGrade) {
      throw FormatError(row.line, "grade must be 0, 1 or 2", source);
    }
    if (!grades.emplace(f[0], grade).second) {
      throw FormatError(row.line, "duplicate node " + f[0], source);
    }
  });
  return JudgmentSet(std::move(grades), threshold);
}

inline std::string write_judgments_csv(const JudgmentSet& judgments) {
  std::string out = "node,grade\n";
  for (const auto& [node, grade] : judgments.grades()) {
    csv::append_field(out, node);
    out += "," + std::to_string(grade) + "\n";
  }
  return out;
}

// ---- JSON -----------------------------------------------------------------

inline nlohmann::json window_json(const TimeWindow& w) {
  nlohmann::json out = {{"start", w.start}};
  if (w.is_unbounded_end()) {
    out["end"] = nullptr;
  } else {
    out["end"] = w.end;
  }
  return out;
}

inline nlohmann::json params_json(const RankParams& p) {
  return {{"epsilon", p.epsilon},
          {"max_iters", p.max_iters},
          {"alpha", p.alpha},
          {"norm_mode", std::string(to_string(p.norm_mode))}};
}

// nlohmann::json keeps object keys sorted, which gives the sorted "scores".
inline std::string reputation_json(const ReputationState& state,
                                   const TimeWindow& window,
                                   const RankParams& params) {
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [node, s] : state.scores) scores[node] = s;
  const nlohmann::json doc = {{"window", window_json(window)},
                              {"params", params_json(params)},
                              {"iterations", state.iterations},
                              {"final_delta", state.final_delta},
                              {"converged", state.converged},
                              {"scores", std::move(scores)}};
  return doc.dump(2) + "\n";
}

inline nlohmann::json report_json(const MetricReport& r) {
  return {{"method", r.method},
          {"k", r.k},
          {"precision", r.precision},
          {"average_precision", r.average_precision},
          {"reciprocal_rank", r.reciprocal_rank},
          {"relevant_found", r.relevant_found},
          {"relevant_total", r.relevant_total}};
}

}  // namespace liquidrank::io

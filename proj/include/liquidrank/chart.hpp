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

// Horizontal bar charts of a ranking, as plain text or SVG. Output depends
// only on the ranking, so repeated runs are byte-identical.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "liquidrank/rank.hpp"

namespace liquidrank::chart {

inline constexpr std::size_t kTextBarWidth = 50;

namespace detail {

inline double max_score(const RankedList& list) {
  double m = 0;
  for (const auto& e : list.entries) m = std::max(m, e.score);
  return m;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string short_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

// Bars are scaled so the top score spans the full width; all-zero rankings
// draw empty bars.
inline std::size_t bar_length(double score, double max, std::size_t width) {
  if (!(max > 0) || !(score > 0)) return 0;
  return static_cast<std::size_t>(std::lround(score / max * static_cast<double>(width)));
}

inline std::string render_text(const RankedList& full, std::size_t k,
                               std::string_view title) {
  const RankedList list = top_k(full, k);
  std::string out = "Ranking: " + std::string(title) + " (" +
                    std::string(to_string(list.method)) + ", top " +
                    std::to_string(list.size()) + " of " +
                    std::to_string(full.size()) + ")\n";
  std::size_t label = 4;
  std::size_t rank_width = 1;
  for (const auto& e : list.entries) {
    label = std::max(label, e.node.size());
    rank_width = std::max(rank_width, std::to_string(e.rank).size());
  }
  const double max = detail::max_score(list);
  for (const auto& e : list.entries) {
    std::string rank = std::to_string(e.rank);
    out += std::string(rank_width - rank.size(), ' ') + rank + "  ";
    out += e.node + std::string(label - e.node.size(), ' ') + " |";
    const std::size_t len = bar_length(e.score, max, kTextBarWidth);
    out += std::string(len, '#') + std::string(kTextBarWidth - len, ' ');
    out += "| " + detail::short_score(e.score) + "\n";
  }
  return out;
}

inline std::string render_svg(const RankedList& full, std::size_t k,
                              std::string_view title) {
  constexpr int kLabelWidth = 160;
  constexpr int kBarArea = 420;
  constexpr int kScoreWidth = 100;
  constexpr int kRowHeight = 22;
  constexpr int kHeader = 40;

  const RankedList list = top_k(full, k);
  const int width = kLabelWidth + kBarArea + kScoreWidth;
  const int height = kHeader + kRowHeight * static_cast<int>(list.size()) + 10;
  const double max = detail::max_score(list);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "  <text x=\"10\" y=\"24\" font-size=\"16\">" +
         detail::xml_escape(title) + " (" + std::string(to_string(list.method)) +
         ")</text>\n";
  int y = kHeader;
  for (const auto& e : list.entries) {
    const double w = max > 0 ? e.score / max * kBarArea : 0.0;
    const std::string label = std::to_string(e.rank) + ". " + e.node;
    out += "  <text x=\"" + std::to_string(kLabelWidth - 6) + "\" y=\"" +
           std::to_string(y + 15) + "\" text-anchor=\"end\">" +
           detail::xml_escape(label) + "</text>\n";
    out += "  <rect x=\"" + std::to_string(kLabelWidth) + "\" y=\"" +
           std::to_string(y + 3) + "\" width=\"" + detail::fixed(w, 2) +
           "\" height=\"" + std::to_string(kRowHeight - 6) +
           "\" fill=\"#4878a8\"/>\n";
    out += "  <text x=\"" + std::to_string(kLabelWidth + kBarArea + 6) +
           "\" y=\"" + std::to_string(y + 15) + "\">" +
           detail::short_score(e.score) + "</text>\n";
    y += kRowHeight;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace liquidrank::chart

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
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liquidrank/error.hpp"
#include "liquidrank/rank.hpp"

namespace liquidrank {

// Graded judgments on a 0-2 scale. A node is relevant when its grade reaches
// the threshold; nodes without a grade are irrelevant.
class JudgmentSet {
 public:
  static constexpr int kMaxGrade = 2;
  static constexpr int kDefaultThreshold = 2;

  JudgmentSet() = default;
  explicit JudgmentSet(std::map<Handle, int> grades,
                       int relevance_threshold = kDefaultThreshold)
      : grades_(std::move(grades)), threshold_(relevance_threshold) {
    for (const auto& [node, g] : grades_) check_grade(node, g);
  }

  void set(const Handle& node, int grade) {
    check_grade(node, grade);
    grades_[node] = grade;
  }

  std::optional<int> grade(const Handle& node) const {
    const auto it = grades_.find(node);
    if (it == grades_.end()) return std::nullopt;
    return it->second;
  }

  bool relevant(const Handle& node) const {
    const auto g = grade(node);
    return g && *g >= threshold_;
  }

  std::size_t relevant_total() const {
    return static_cast<std::size_t>(std::count_if(
        grades_.begin(), grades_.end(),
        [&](const auto& kv) { return kv.second >= threshold_; }));
  }

  int threshold() const { return threshold_; }
  void set_threshold(int t) { threshold_ = t; }
  const std::map<Handle, int>& grades() const { return grades_; }
  std::size_t size() const { return grades_.size(); }

 private:
  static void check_grade(const Handle& node, int g) {
    if (g < 0 || g > kMaxGrade) {
      throw ValidationError("grade for " + node + " must be 0, 1 or 2 (got " +
                            std::to_string(g) + ")");
    }
  }

  std::map<Handle, int> grades_;
  int threshold_ = kDefaultThreshold;
};

struct MetricReport {
  std::string method;
  std::size_t k = 0;
  double precision = 0;
  double average_precision = 0;
  double reciprocal_rank = 0;
  std::size_t relevant_found = 0;
  std::size_t relevant_total = 0;
};

// Relevance booleans in rank order. All metrics are functions of this.
inline std::vector<bool> relevance_pattern(const RankedList& list,
                                           const JudgmentSet& judgments) {
  std::vector<bool> out;
  out.reserve(list.entries.size());
  for (const auto& e : list.entries) out.push_back(judgments.relevant(e.node));
  return out;
}

namespace metrics {

inline double precision_at_k(const std::vector<bool>& rel, std::size_t k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (rel.empty()) throw EmptyRanking();
  const std::size_t cutoff = std::min(k, rel.size());
  const auto hits = std::count(rel.begin(), rel.begin() + cutoff, true);
  return static_cast<double>(hits) / static_cast<double>(cutoff);
}

// Normalised by the relevant entries inside the cutoff, not by all relevant
// judgments, so a list whose cutoff is all-relevant scores 1.
inline double average_precision(const std::vector<bool>& rel, std::size_t k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (rel.empty()) throw EmptyRanking();
  const std::size_t cutoff = std::min(k, rel.size());
  double sum = 0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < cutoff; ++r) {
    if (!rel[r]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

inline double reciprocal_rank(const std::vector<bool>& rel) {
  if (rel.empty()) throw EmptyRanking();
  const auto it = std::find(rel.begin(), rel.end(), true);
  if (it == rel.end()) return 0.0;
  return 1.0 / static_cast<double>(it - rel.begin() + 1);
}

}  // namespace metrics

inline double precision_at_k(const RankedList& list, const JudgmentSet& j,
                             std::size_t k) {
  return metrics::precision_at_k(relevance_pattern(list, j), k);
}

inline double average_precision(const RankedList& list, const JudgmentSet& j,
                                std::size_t k) {
  return metrics::average_precision(relevance_pattern(list, j), k);
}

inline double reciprocal_rank(const RankedList& list, const JudgmentSet& j) {
  return metrics::reciprocal_rank(relevance_pattern(list, j));
}

inline double mean_reciprocal_rank(std::span<const RankedList> lists,
                                   const JudgmentSet& j) {
  if (lists.empty()) throw EmptyInput();
  double sum = 0;
  for (const auto& list : lists) sum += reciprocal_rank(list, j);
  return sum / static_cast<double>(lists.size());
}

inline MetricReport evaluate(const RankedList& list, const JudgmentSet& j,
                             std::size_t k) {
  const auto rel = relevance_pattern(list, j);
  MetricReport report;
  report.method = std::string(to_string(list.method));
  report.k = k;
  report.precision = metrics::precision_at_k(rel, k);
  report.average_precision = metrics::average_precision(rel, k);
  report.reciprocal_rank = metrics::reciprocal_rank(rel);
  const std::size_t cutoff = std::min(k, rel.size());
  report.relevant_found = static_cast<std::size_t>(
      std::count(rel.begin(), rel.begin() + cutoff, true));
  report.relevant_total = j.relevant_total();
  return report;
}

}  // namespace liquidrank

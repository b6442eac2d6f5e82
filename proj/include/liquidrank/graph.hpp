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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liquidrank/error.hpp"
#include "liquidrank/ingest.hpp"

namespace liquidrank {

// Half-open interval [start, end) of epoch seconds.
struct TimeWindow {
  static constexpr Timestamp kUnbounded = std::numeric_limits<Timestamp>::max();

  Timestamp start = 0;
  Timestamp end = kUnbounded;

  static TimeWindow unbounded() { return {}; }

  static TimeWindow make(Timestamp start, Timestamp end) {
    if (!(start < end)) {
      throw ValidationError("time window requires start < end (got [" +
                            std::to_string(start) + ", " + std::to_string(end) +
                            "))");
    }
    return {start, end};
  }

  bool is_unbounded_end() const { return end == kUnbounded; }
  bool contains(Timestamp t) const { return start <= t && t < end; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

using NodeIndex = std::uint32_t;
using Weight = std::uint64_t;

struct Edge {
  NodeIndex rater;
  NodeIndex ratee;
  Weight weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted directed graph of mention counts. Nodes are kept in
// lexicographic order and edges sorted by (rater, ratee); both orders are
// the determinism anchor for everything downstream. Immutable once built.
class RatingGraph {
 public:
  RatingGraph() = default;

  // Builds from pre-aggregated counts. Rejects self-loops, zero weights,
  // invalid handles and duplicate pairs.
  static RatingGraph from_counts(
      const std::vector<std::pair<std::pair<Handle, Handle>, Weight>>& counts,
      TimeWindow window = TimeWindow::unbounded()) {
    std::map<std::pair<Handle, Handle>, Weight> merged;
    for (const auto& [pair, w] : counts) {
      if (pair.first == pair.second) {
        throw ValidationError("self-loop on " + pair.first);
      }
      if (!is_valid_handle(pair.first) || !is_valid_handle(pair.second)) {
        throw ValidationError("invalid handle in edge " + pair.first + "->" +
                              pair.second);
      }
      if (w == 0) {
        throw ValidationError("zero weight on edge " + pair.first + "->" +
                              pair.second);
      }
      if (!merged.emplace(pair, w).second) {
        throw ValidationError("duplicate edge " + pair.first + "->" +
                              pair.second);
      }
    }
    return RatingGraph(merged, window);
  }

  const std::vector<Handle>& nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  const TimeWindow& window() const { return window_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::optional<NodeIndex> index_of(std::string_view node) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end() || *it != node) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
  }

  bool contains(std::string_view node) const { return index_of(node).has_value(); }

  Weight weight(std::string_view rater, std::string_view ratee) const {
    const auto i = index_of(rater);
    const auto j = index_of(ratee);
    if (!i || !j) return 0;
    const Edge probe{*i, *j, 0};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_order);
    return (it != edges_.end() && it->rater == *i && it->ratee == *j) ? it->weight : 0;
  }

  // Sum of inbound weights; throws UnknownNode.
  Weight in_weight(std::string_view node) const {
    const auto idx = index_of(node);
    if (!idx) throw UnknownNode(std::string(node));
    return in_weights_[*idx];
  }

  std::span<const Weight> in_weights() const { return in_weights_; }

  Weight total_weight() const {
    Weight sum = 0;
    for (const auto& e : edges_) sum += e.weight;
    return sum;
  }

 private:
  friend RatingGraph build_graph(std::span<const InteractionRecord>, TimeWindow);

  static bool edge_order(const Edge& a, const Edge& b) {
    return std::pair(a.rater, a.ratee) < std::pair(b.rater, b.ratee);
  }

  RatingGraph(const std::map<std::pair<Handle, Handle>, Weight>& counts,
              TimeWindow window)
      : window_(window) {
    for (const auto& [pair, w] : counts) {
      nodes_.push_back(pair.first);
      nodes_.push_back(pair.second);
    }
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    in_weights_.assign(nodes_.size(), 0);
    edges_.reserve(counts.size());
    // std::map iterates in (rater, ratee) string order, which coincides with
    // index order because node indices are assigned lexicographically.
    for (const auto& [pair, w] : counts) {
      const Edge e{*index_of(pair.first), *index_of(pair.second), w};
      in_weights_[e.ratee] += w;
      edges_.push_back(e);
    }
  }

  std::vector<Handle> nodes_;
  std::vector<Edge> edges_;
  std::vector<Weight> in_weights_;
  TimeWindow window_;
};

// Aggregates the records falling inside `window` into mention counts.
inline RatingGraph build_graph(std::span<const InteractionRecord> records,
                               TimeWindow window = TimeWindow::unbounded()) {
  std::map<std::pair<Handle, Handle>, Weight> counts;
  for (const auto& r : records) {
    if (!window.contains(r.timestamp)) continue;
    if (r.rater == r.ratee) {
      throw ValidationError("self-mention record for " + r.rater);
    }
    ++counts[{r.rater, r.ratee}];
  }
  return RatingGraph(counts, window);
}

inline Weight in_weight(const RatingGraph& graph, std::string_view node) {
  return graph.in_weight(node);
}

}  // namespace liquidrank

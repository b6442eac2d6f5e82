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
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liquidrank/error.hpp"
#include "liquidrank/graph.hpp"

namespace liquidrank {

enum class NormMode { l1, max };

inline std::string_view to_string(NormMode m) {
  return m == NormMode::l1 ? "l1" : "max";
}

inline NormMode parse_norm_mode(std::string_view s) {
  if (s == "l1") return NormMode::l1;
  if (s == "max") return NormMode::max;
  throw ValidationError("unknown norm mode: " + std::string(s));
}

struct RankParams {
  static constexpr double kDefaultEpsilon = 0.0001;

  double epsilon = kDefaultEpsilon;
  std::size_t max_iters = 1000;
  double alpha = 0.5;  // 1 is the undamped update
  NormMode norm_mode = NormMode::l1;

  void validate() const {
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
      throw ValidationError("epsilon must be a positive finite number");
    }
    if (max_iters < 1) throw ValidationError("max_iters must be at least 1");
    if (!(alpha > 0 && alpha <= 1)) {
      throw ValidationError("alpha must lie in (0, 1]");
    }
  }
};

struct ReputationState {
  std::map<Handle, double> scores;
  std::size_t iterations = 0;
  double final_delta = 0;
  bool converged = false;
};

enum class RankMethod { mentions, liquid, product };

inline std::string_view to_string(RankMethod m) {
  switch (m) {
    case RankMethod::mentions: return "mentions";
    case RankMethod::liquid: return "liquid";
    case RankMethod::product: return "product";
  }
  return "unknown";
}

inline RankMethod parse_rank_method(std::string_view s) {
  if (s == "mentions") return RankMethod::mentions;
  if (s == "liquid") return RankMethod::liquid;
  if (s == "product") return RankMethod::product;
  throw ValidationError("unknown ranking method: " + std::string(s));
}

struct RankedEntry {
  Handle node;
  double score = 0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

struct RankedList {
  RankMethod method = RankMethod::mentions;
  std::vector<RankedEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

// Orders by score descending, node ascending, and assigns ranks 1..N.
inline RankedList make_ranked_list(RankMethod method,
                                   std::vector<RankedEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.node < b.node;
            });
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = i + 1;
  return {method, std::move(entries)};
}

// Ranking by raw inbound mention count.
inline RankedList mention_rank(const RatingGraph& graph) {
  if (graph.empty()) throw EmptyGraph("mention_rank needs at least one node");
  std::vector<RankedEntry> entries;
  entries.reserve(graph.node_count());
  const auto in = graph.in_weights();
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    entries.push_back({graph.nodes()[i], static_cast<double>(in[i]), 0});
  }
  return make_ranked_list(RankMethod::mentions, std::move(entries));
}

namespace detail {

inline double sum_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace detail

// Observer invoked after every iteration with the 1-based iteration number
// and the scores in the chosen norm (index order of graph.nodes()).
using IterationObserver =
    std::function<void(std::size_t, const std::vector<double>&)>;

// Damped fixed point of R_j = sum_i R_i * V_ij with renormalisation after
// every cycle:
//
//   R' = (1 - alpha) * R + alpha * U / |U|_1,   U_j = sum_i R_i * V_ij
//
// The recurrence runs on the sum-to-one vector. Under NormMode::max every
// iterate is that vector rescaled so its largest entry is 1, so the two
// modes differ only by a positive scalar per step and always rank alike.
// Convergence is max_j |R'_j - R_j| < epsilon, measured in the chosen mode.
inline ReputationState liquid_rank(
    const RatingGraph& graph, const RankParams& params = {},
    const std::optional<std::map<Handle, double>>& initial = std::nullopt,
    const IterationObserver& observer = {}) {
  params.validate();
  if (graph.edge_count() == 0) {
    throw EmptyGraph("liquid_rank needs at least one edge");
  }
  const std::size_t n = graph.node_count();
  const auto& nodes = graph.nodes();

  std::vector<double> share(n, 1.0 / static_cast<double>(n));
  if (initial) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto it = initial->find(nodes[i]);
      if (it == initial->end()) {
        throw ValidationError("initial reputation missing node " + nodes[i]);
      }
      if (!(it->second >= 0) || !std::isfinite(it->second)) {
        throw ValidationError("initial reputation must be finite and >= 0");
      }
      share[i] = it->second;
    }
    const double total = detail::sum_of(share);
    if (!(total > 0)) {
      throw ValidationError("initial reputation must not be all zero");
    }
    for (double& x : share) x /= total;
  }

  auto in_mode = [&](const std::vector<double>& s, std::vector<double>& out) {
    const double scale =
        params.norm_mode == NormMode::max ? detail::max_of(s) : detail::sum_of(s);
    out.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] / scale;
  };

  std::vector<double> current;
  in_mode(share, current);
  std::vector<double> inflow(n);
  std::vector<double> next_share(n);
  std::vector<double> next;

  const double keep = 1.0 - params.alpha;
  ReputationState state;
  for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
    std::fill(inflow.begin(), inflow.end(), 0.0);
    for (const Edge& e : graph.edges()) {
      inflow[e.ratee] += share[e.rater] * static_cast<double>(e.weight);
    }
    const double inflow_total = detail::sum_of(inflow);
    if (!(inflow_total > 0)) {
      throw DegenerateUpdate("reputation inflow vanished at iteration " +
                             std::to_string(iter));
    }
    for (std::size_t j = 0; j < n; ++j) {
      next_share[j] = keep * share[j] + params.alpha * (inflow[j] / inflow_total);
    }
    const double total = detail::sum_of(next_share);
    for (double& x : next_share) x /= total;
    in_mode(next_share, next);

    double delta = 0;
    for (std::size_t j = 0; j < n; ++j) {
      delta = std::max(delta, std::abs(next[j] - current[j]));
    }
    share.swap(next_share);
    current.swap(next);
    state.iterations = iter;
    state.final_delta = delta;
    if (observer) observer(iter, current);
    if (delta < params.epsilon) {
      state.converged = true;
      break;
    }
  }

  for (std::size_t i = 0; i < n; ++i) state.scores.emplace(nodes[i], current[i]);
  return state;
}

inline RankedList to_ranked_list(const ReputationState& state) {
  std::vector<RankedEntry> entries;
  entries.reserve(state.scores.size());
  for (const auto& [node, score] : state.scores) entries.push_back({node, score, 0});
  return make_ranked_list(RankMethod::liquid, std::move(entries));
}

// Score product of the L1-normalised mention counts and the liquid scores.
inline RankedList product_rank(const RankedList& mentions,
                               const RankedList& liquid) {
  std::map<Handle, double> mention_scores;
  std::map<Handle, double> liquid_scores;
  for (const auto& e : mentions.entries) mention_scores.emplace(e.node, e.score);
  for (const auto& e : liquid.entries) liquid_scores.emplace(e.node, e.score);

  std::vector<Handle> only_mentions;
  std::vector<Handle> only_liquid;
  for (const auto& [node, _] : mention_scores) {
    if (!liquid_scores.contains(node)) only_mentions.push_back(node);
  }
  for (const auto& [node, _] : liquid_scores) {
    if (!mention_scores.contains(node)) only_liquid.push_back(node);
  }
  if (!only_mentions.empty() || !only_liquid.empty()) {
    std::string msg = "ranking node sets differ; only in mentions: [";
    for (std::size_t i = 0; i < only_mentions.size(); ++i) {
      msg += (i ? "," : "") + only_mentions[i];
    }
    msg += "]; only in liquid: [";
    for (std::size_t i = 0; i < only_liquid.size(); ++i) {
      msg += (i ? "," : "") + only_liquid[i];
    }
    throw NodeSetMismatch(msg + "]");
  }

  double mention_total = 0;
  for (const auto& [_, s] : mention_scores) mention_total += s;

  std::vector<RankedEntry> entries;
  entries.reserve(mention_scores.size());
  for (const auto& [node, s] : mention_scores) {
    const double share = mention_total > 0 ? s / mention_total : 0.0;
    entries.push_back({node, share * liquid_scores.at(node), 0});
  }
  return make_ranked_list(RankMethod::product, std::move(entries));
}

inline RankedList top_k(const RankedList& list, std::size_t k) {
  if (k < 1) throw ValidationError("k must be at least 1");
  RankedList out{list.method, {}};
  const std::size_t n = std::min(k, list.entries.size());
  out.entries.assign(list.entries.begin(), list.entries.begin() + n);
  return out;
}

}  // namespace liquidrank

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

// Test-only reference implementations. These deliberately share no code
// with the library: dense matrices instead of the sparse edge list, and
// prefix recounting instead of running sums.

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "liquidrank/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;  // m[i][j] = V_ij

struct DenseResult {
  std::vector<double> scores;  // sum to one
  std::size_t iterations = 0;
  bool converged = false;
};

// Damped update R' = (1-a) R + a * (V^T R) / sum(V^T R), from uniform, until
// the largest componentwise change drops below tol.
inline DenseResult damped_iteration(const Matrix& v, double alpha, double tol,
                                    std::size_t max_iters) {
  const std::size_t n = v.size();
  DenseResult out;
  std::vector<double> r(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 1; it <= max_iters; ++it) {
    std::vector<double> u(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) u[j] += r[i] * v[i][j];
    }
    double total = 0;
    for (double x : u) total += x;
    std::vector<double> next(n);
    double delta = 0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = (1 - alpha) * r[j] + alpha * u[j] / total;
      delta = std::max(delta, std::abs(next[j] - r[j]));
    }
    r = std::move(next);
    out.iterations = it;
    if (delta < tol) {
      out.converged = true;
      break;
    }
  }
  out.scores = r;
  return out;
}

// AP by recounting the relevant prefix at every relevant position.
inline double average_precision(const std::vector<bool>& rel, std::size_t k) {
  const std::size_t cutoff = std::min(k, rel.size());
  std::vector<double> precisions;
  for (std::size_t r = 1; r <= cutoff; ++r) {
    if (!rel[r - 1]) continue;
    std::size_t count = 0;
    for (std::size_t q = 0; q < r; ++q) count += rel[q] ? 1 : 0;
    precisions.push_back(static_cast<double>(count) / static_cast<double>(r));
  }
  if (precisions.empty()) return 0.0;
  double sum = 0;
  for (double p : precisions) sum += p;
  return sum / static_cast<double>(precisions.size());
}

inline std::string node_name(std::size_t i) { return "n" + std::to_string(i); }

// Random dense weights in [0, max_weight] on up to max_nodes nodes, no
// self-loops, at least one positive entry.
inline Matrix random_matrix(std::mt19937_64& rng, std::size_t max_nodes,
                            int max_weight) {
  std::uniform_int_distribution<std::size_t> size_dist(2, max_nodes);
  std::uniform_int_distribution<int> w_dist(0, max_weight);
  std::bernoulli_distribution sparse(0.5);
  for (;;) {
    const std::size_t n = size_dist(rng);
    Matrix m(n, std::vector<double>(n, 0.0));
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || sparse(rng)) continue;
        m[i][j] = w_dist(rng);
        any = any || m[i][j] > 0;
      }
    }
    if (any) return m;
  }
}

// Graph whose node i is named names[i]. Isolated nodes are dropped, as in
// any graph built from interaction records.
inline liquidrank::RatingGraph to_graph(const Matrix& m,
                                        const std::vector<std::string>& names,
                                        double scale = 1.0) {
  std::vector<std::pair<std::pair<std::string, std::string>, liquidrank::Weight>> counts;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[i][j] > 0) {
        counts.push_back({{names[i], names[j]},
                          static_cast<liquidrank::Weight>(m[i][j] * scale)});
      }
    }
  }
  return liquidrank::RatingGraph::from_counts(counts);
}

inline liquidrank::RatingGraph to_graph(const Matrix& m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m.size(); ++i) names.push_back(node_name(i));
  return to_graph(m, names);
}

// Matrix restricted to nodes that carry at least one edge; returns the kept
// original indices.
inline std::pair<Matrix, std::vector<std::size_t>> drop_isolated(const Matrix& m) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool touched = false;
    for (std::size_t j = 0; j < m.size(); ++j) touched = touched || m[i][j] > 0 || m[j][i] > 0;
    if (touched) keep.push_back(i);
  }
  Matrix out(keep.size(), std::vector<double>(keep.size(), 0.0));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) out[a][b] = m[keep[a]][keep[b]];
  }
  return {out, keep};
}

}  // namespace oracle

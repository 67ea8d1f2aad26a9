// Copyright 2026 The TIFA-GCL Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tifa/common.hpp"
#include "tifa/graph.hpp"

namespace tifa {

/// Weights of the relative-distance terms.
struct DistanceConfig {
  double lambda1 = 0.5;   // local topology (hop) distance
  double lambda2 = 0.75;  // feature cosine distance
  int hop_cap = 4;        // hops beyond the cap count as hop_cap + 1
};

/// Index window into the per-anchor ranked candidate list. Negative
/// negt_beg/negt_end mean "derive from the candidate count m":
/// negt_beg = max(post_end, m / 4), negt_end = min(m, negt_beg + 128).
struct PairWindow {
  int post_end = 2;
  int negt_beg = -1;
  int negt_end = -1;
};

struct PairSamplingConfig {
  PairWindow window;
  /// Graphs with more nodes than this rank a per-anchor candidate pool of
  /// pool_size uniformly drawn nodes instead of all n - 1 others.
  NodeId full_candidate_limit = 20000;
  std::size_t pool_size = 4096;
  std::uint64_t seed = 0;
};

struct PairSets {
  std::vector<std::vector<NodeId>> positives;
  std::vector<std::vector<NodeId>> negatives;
  int post_end = 0;
  int negt_beg = 0;
  int negt_end = 0;
};

/// Per-graph quantities shared by every distance row.
struct DistanceInputs {
  Matrix probs;       // row softmax of Z*
  Matrix log_probs;   // log of probs, computed stably
  Vector neg_entropy; // sum_c p log p per row
  Vector feature_norms;
};

DistanceInputs prepare_distance_inputs(const Graph& graph, const Matrix& z_star);

/// Numerically stable row-wise softmax.
Matrix softmax_rows(const Matrix& m);
Matrix log_softmax_rows(const Matrix& m);

/// KL(p || q) in nats. Both must be strictly positive distributions.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// KL(softmax(Z*_i) || softmax(Z*_j)).
double global_topology_distance(const Matrix& z_star, NodeId i, NodeId j);
/// Same quantity from precomputed inputs.
double global_topology_distance(const DistanceInputs& in, NodeId i, NodeId j);

/// Hop count, with hop_cap + 1 for pairs farther apart or disconnected.
double local_topology_distance(const Graph& graph, NodeId i, NodeId j, int hop_cap);

/// 1 - cos(X_i, X_j); a zero-norm row counts as cosine 0.
double embedding_distance(const Matrix& features, NodeId i, NodeId j);

/// Per-candidate relative distance S(Dg) + lambda1 S(Dl) + lambda2 S(De),
/// with S min-max scaling each term over the candidate set (a constant term
/// scales to zero).
std::vector<double> relative_distance_row(const Graph& graph, const DistanceInputs& in,
                                          NodeId anchor, std::span<const NodeId> candidates,
                                          const DistanceConfig& config);

/// Positive and semi-difficult negative sets from each anchor's candidate
/// list ranked by relative distance (ties by node id).
PairSets sample_pairs(const Graph& graph, const DistanceInputs& in,
                      const DistanceConfig& config, const PairSamplingConfig& sampling);

/// Uniform pair policy: the same window sizes filled with uniformly drawn
/// distinct non-anchor nodes.
PairSets sample_pairs_uniform(NodeId num_nodes, const PairSamplingConfig& sampling);

/// Resolves the default window for m candidates and validates
/// 0 < post_end <= negt_beg < negt_end <= m.
PairWindow resolve_window(const PairWindow& window, std::size_t candidates);

enum class PairScope { kNeighbors, kAll };

struct RatioBin {
  std::size_t pairs = 0;
  std::size_t same_class = 0;
  double ratio() const;  // NaN when empty
};

/// Ordered labeled node pairs (edge endpoints or all pairs) sorted by global
/// topology distance and cut into equal-count bins (last bin absorbs the
/// remainder); reports the same-class fraction per bin.
std::vector<RatioBin> intra_class_ratio_bins(const Graph& graph, const DistanceInputs& in,
                                             int bins, PairScope scope);

}  // namespace tifa

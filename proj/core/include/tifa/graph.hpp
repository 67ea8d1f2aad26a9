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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "tifa/common.hpp"

namespace tifa {

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Symmetric, unweighted CSR adjacency without self-loops or duplicate
/// edges. Neighbor lists are sorted ascending.
class Adjacency {
 public:
  Adjacency() = default;

  /// Builds from an arbitrary edge list: each pair is read as undirected,
  /// self-loops are dropped and duplicates collapsed.
  static Adjacency from_edges(NodeId num_nodes, std::span<const Edge> edges);

  /// Builds from per-node neighbor lists that must already be symmetric.
  /// Lists are sorted and deduplicated; self-loops are rejected.
  static Adjacency from_lists(const std::vector<std::vector<NodeId>>& lists);

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size()) - 1; }
  /// Undirected edge count.
  std::size_t num_edges() const { return indices_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {indices_.data() + offsets_[v], indices_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Undirected edges as (u, v) with u < v, in ascending order.
  std::vector<Edge> edge_list() const;

  friend bool operator==(const Adjacency&, const Adjacency&) = default;

 private:
  Adjacency(std::vector<std::size_t> offsets, std::vector<NodeId> indices)
      : offsets_(std::move(offsets)), indices_(std::move(indices)) {}

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> indices_;
};

enum class SplitRole : std::uint8_t { kNone, kTrain, kVal, kTest };

struct Split {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

/// Immutable attributed graph for semi-supervised node classification.
///
/// Invariants (checked on construction, DataError otherwise):
///   - feature row count equals the node count;
///   - labels are kUnlabeled or in [0, num_classes);
///   - train/val/test id lists are in range and pairwise disjoint;
///   - every train node carries a label.
class Graph {
 public:
  Graph() = default;
  Graph(Adjacency adjacency, Matrix features, std::vector<int> labels,
        int num_classes, Split split);

  NodeId num_nodes() const { return adjacency_.num_nodes(); }
  std::size_t num_edges() const { return adjacency_.num_edges(); }
  Eigen::Index feature_dim() const { return features_.cols(); }
  int num_classes() const { return num_classes_; }

  const Adjacency& adjacency() const { return adjacency_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.neighbors(v); }
  std::size_t degree(NodeId v) const { return adjacency_.degree(v); }

  const Matrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(NodeId v) const { return labels_[static_cast<std::size_t>(v)]; }
  bool is_labeled(NodeId v) const { return label(v) != kUnlabeled; }

  /// Split lists, each sorted ascending.
  const Split& split() const { return split_; }
  SplitRole role(NodeId v) const { return roles_[static_cast<std::size_t>(v)]; }

 private:
  Adjacency adjacency_;
  Matrix features_;
  std::vector<int> labels_;
  int num_classes_ = 0;
  Split split_;
  std::vector<SplitRole> roles_;
};

// ---------------------------------------------------------------------------
// Normalization

enum class NormalizationKind {
  kColumn,     // A D^-1; zero-degree columns stay zero
  kSymmetric,  // D~^-1/2 (A + I) D~^-1/2
};

struct NormalizedAdjacency {
  NormalizationKind kind = NormalizationKind::kColumn;
  SparseMatrix values;
};

NormalizedAdjacency normalize(const Adjacency& adjacency, NormalizationKind kind);
inline NormalizedAdjacency normalize(const Graph& graph, NormalizationKind kind) {
  return normalize(graph.adjacency(), kind);
}

// ---------------------------------------------------------------------------
// Traversal and subgraphs

/// Hop distance used for nodes farther than `max_hop` or disconnected.
constexpr int unreachable_hop(int max_hop) { return max_hop + 1; }

/// Shortest-path hop counts from `source`, with unreachable_hop(max_hop) for
/// nodes beyond the cap or in another component.
std::vector<int> bfs_hops(const Adjacency& adjacency, NodeId source, int max_hop);
inline std::vector<int> bfs_hops(const Graph& graph, NodeId source, int max_hop) {
  return bfs_hops(graph.adjacency(), source, max_hop);
}

struct InducedSubgraph {
  Graph graph;
  /// new id -> original id (ascending).
  std::vector<NodeId> to_original;
  /// original id -> new id, or -1 when not kept.
  std::vector<NodeId> from_original;
};

/// Node-induced subgraph; duplicates in `nodes` are ignored. New ids follow
/// ascending original id. Throws DataError for an empty set or bad ids.
InducedSubgraph induced_subgraph(const Graph& graph, std::span<const NodeId> nodes);

/// Copy of `graph` whose feature rows are scaled to unit L1 norm (zero rows
/// are left untouched).
Graph row_normalize_features(const Graph& graph);

// ---------------------------------------------------------------------------
// Synthetic data

struct SbmParams {
  int classes = 2;
  int per_class = 50;
  double p_in = 0.1;
  double p_out = 0.01;
  double feature_noise = 0.5;
  int labels_per_class = 20;
  /// Validation nodes per class, capped at half of the non-train nodes.
  int val_per_class = 30;
};

/// Stochastic block model with `classes` equal blocks (node i belongs to
/// block i / per_class). Features are the one-hot block prototype plus
/// i.i.d. Gaussian noise of standard deviation feature_noise.
Graph synth_sbm(const SbmParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Dataset directory I/O (meta.json, edges.tsv, features.tsv, labels.tsv,
// split.json)

Graph load_graph(const std::filesystem::path& dir);
void save_graph(const Graph& graph, const std::filesystem::path& dir);

}  // namespace tifa

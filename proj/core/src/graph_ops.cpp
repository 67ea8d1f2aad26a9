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

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "tifa/graph.hpp"

namespace tifa {

NormalizedAdjacency normalize(const Adjacency& adjacency, NormalizationKind kind) {
  const NodeId n = adjacency.num_nodes();
  std::vector<Eigen::Triplet<double>> triplets;
  NormalizedAdjacency out;
  out.kind = kind;

  if (kind == NormalizationKind::kColumn) {
    triplets.reserve(adjacency.num_edges() * 2);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j : adjacency.neighbors(i)) {
        // entry (i, j) = A_ij / deg(j); deg(j) >= 1 since j has neighbor i.
        triplets.emplace_back(i, j, 1.0 / static_cast<double>(adjacency.degree(j)));
      }
    }
  } else {
    triplets.reserve(adjacency.num_edges() * 2 + static_cast<std::size_t>(n));
    std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
      inv_sqrt[static_cast<std::size_t>(i)] =
          1.0 / std::sqrt(static_cast<double>(adjacency.degree(i) + 1));
    }
    for (NodeId i = 0; i < n; ++i) {
      const double di = inv_sqrt[static_cast<std::size_t>(i)];
      triplets.emplace_back(i, i, di * di);
      for (NodeId j : adjacency.neighbors(i)) {
        triplets.emplace_back(i, j, di * inv_sqrt[static_cast<std::size_t>(j)]);
      }
    }
  }
  out.values.resize(n, n);
  out.values.setFromTriplets(triplets.begin(), triplets.end());
  out.values.makeCompressed();
  return out;
}

std::vector<int> bfs_hops(const Adjacency& adjacency, NodeId source, int max_hop) {
  const NodeId n = adjacency.num_nodes();
  if (source < 0 || source >= n) {
    throw ConfigError("bfs source " + std::to_string(source) + " out of range [0, " +
                      std::to_string(n) + ")");
  }
  if (max_hop < 0) throw ConfigError("max_hop must be non-negative");
  const int far = unreachable_hop(max_hop);
  std::vector<int> hops(static_cast<std::size_t>(n), far);
  hops[static_cast<std::size_t>(source)] = 0;
  std::deque<NodeId> frontier{source};
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    const int next = hops[static_cast<std::size_t>(u)] + 1;
    if (next > max_hop) continue;
    for (NodeId v : adjacency.neighbors(u)) {
      auto& h = hops[static_cast<std::size_t>(v)];
      if (h == far) {
        h = next;
        frontier.push_back(v);
      }
    }
  }
  return hops;
}

InducedSubgraph induced_subgraph(const Graph& graph, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw DataError("induced_subgraph: empty node set");
  const NodeId n = graph.num_nodes();
  InducedSubgraph out;
  out.from_original.assign(static_cast<std::size_t>(n), -1);
  for (NodeId v : nodes) {
    if (v < 0 || v >= n) {
      throw DataError("induced_subgraph: node " + std::to_string(v) + " out of range");
    }
    out.from_original[static_cast<std::size_t>(v)] = 0;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (out.from_original[static_cast<std::size_t>(v)] == 0) {
      out.from_original[static_cast<std::size_t>(v)] = static_cast<NodeId>(out.to_original.size());
      out.to_original.push_back(v);
    } else {
      out.from_original[static_cast<std::size_t>(v)] = -1;
    }
  }

  const auto m = static_cast<NodeId>(out.to_original.size());
  std::vector<std::vector<NodeId>> lists(static_cast<std::size_t>(m));
  Matrix features(m, graph.feature_dim());
  std::vector<int> labels(static_cast<std::size_t>(m));
  Split split;
  for (NodeId s = 0; s < m; ++s) {
    const NodeId v = out.to_original[static_cast<std::size_t>(s)];
    for (NodeId u : graph.neighbors(v)) {
      const NodeId su = out.from_original[static_cast<std::size_t>(u)];
      if (su >= 0) lists[static_cast<std::size_t>(s)].push_back(su);
    }
    features.row(s) = graph.features().row(v);
    labels[static_cast<std::size_t>(s)] = graph.label(v);
    switch (graph.role(v)) {
      case SplitRole::kTrain: split.train.push_back(s); break;
      case SplitRole::kVal: split.val.push_back(s); break;
      case SplitRole::kTest: split.test.push_back(s); break;
      case SplitRole::kNone: break;
    }
  }
  out.graph = Graph(Adjacency::from_lists(lists), std::move(features), std::move(labels),
                    graph.num_classes(), std::move(split));
  return out;
}

Graph row_normalize_features(const Graph& graph) {
  Matrix x = graph.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double s = x.row(i).cwiseAbs().sum();
    if (s > 0.0) x.row(i) /= s;
  }
  return Graph(graph.adjacency(), std::move(x), graph.labels(), graph.num_classes(),
               graph.split());
}

}  // namespace tifa

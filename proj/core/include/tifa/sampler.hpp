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
#include <functional>
#include <span>
#include <vector>

#include "tifa/distance.hpp"
#include "tifa/graph.hpp"
#include "tifa/rng.hpp"

namespace tifa {

/// Distance-weighted random-walk subgraph sampling. sharpen_t = 0 gives
/// uniform neighbor choice.
struct SamplerConfig {
  int n_roots = 200;
  int walk_len = 3;
  double sharpen_t = 0.25;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
};

void validate(const SamplerConfig& config);

/// Next-step distributions aligned with the graph's CSR neighbor lists.
class TransitionTable {
 public:
  TransitionTable() = default;
  TransitionTable(std::vector<std::size_t> offsets, std::vector<double> probs)
      : offsets_(std::move(offsets)), probs_(std::move(probs)) {}

  std::span<const double> of(NodeId v) const {
    return {probs_.data() + offsets_[static_cast<std::size_t>(v)],
            probs_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }
  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size()) - 1; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<double> probs_;
};

using EdgeDistance = std::function<double(NodeId, NodeId)>;

/// Per node, softmax over neighbors j of t / (Dg(i, j) + epsilon).
TransitionTable transition_probs(const Graph& graph, const EdgeDistance& distance,
                                 double sharpen_t, double epsilon);
/// Same, with Dg the global topology distance from `inputs`.
TransitionTable transition_probs(const Graph& graph, const DistanceInputs& inputs,
                                 double sharpen_t, double epsilon);

/// One walk step from `current`; isolated nodes stay put.
NodeId walk_step(const Graph& graph, const TransitionTable& probs, NodeId current, Rng& rng);

struct SampledSubgraph {
  std::vector<NodeId> roots;
  std::vector<NodeId> nodes;  // ascending original ids
  InducedSubgraph induced;
};

/// Draws n_roots roots (without replacement when n_roots <= n), walks
/// walk_len steps from each, and returns the subgraph induced by every
/// visited node.
SampledSubgraph sample_subgraph(const Graph& graph, const TransitionTable& probs,
                                const SamplerConfig& config);

/// Walks from the given roots; walk r uses the RNG stream (seed, r).
SampledSubgraph sample_subgraph_from_roots(const Graph& graph, const TransitionTable& probs,
                                           std::span<const NodeId> roots, int walk_len,
                                           std::uint64_t seed);

/// Fraction of edges whose endpoints are both labeled with the same class,
/// among edges with both endpoints labeled. NaN when there are none.
double intra_class_edge_fraction(const Graph& graph);

}  // namespace tifa

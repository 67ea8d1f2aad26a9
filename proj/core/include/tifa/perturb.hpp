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
#include <optional>
#include <span>
#include <vector>

#include "tifa/common.hpp"
#include "tifa/graph.hpp"

namespace tifa {

struct PerturbConfig {
  double sharpen_t = 1.0;
  /// Frobenius-gap threshold. Unset means sqrt(2 * ceil(0.05 * |E|)), i.e.
  /// roughly 5% of the undirected edges changed.
  std::optional<double> sigma;
  int n_add = 1;
  int n_rmv = 1;
  double mask_rate = 0.1;
  int decay_hops = 1;
  double decay_ratio = 0.5;
  std::uint64_t seed = 0;
};

struct PerturbedGraph {
  Matrix features;
  Adjacency adjacency;
  std::vector<NodeId> touched;  // selection order
  // Net difference to the input adjacency, (u, v) with u < v, ascending.
  std::vector<Edge> added;
  std::vector<Edge> removed;
  double gap = 0.0;
  double sigma = 0.0;
  bool exhausted = false;  // stopped because no selectable mass remained
};

void validate(const PerturbConfig& config);

double default_sigma(std::size_t num_edges);

/// softmax(t * w).
std::vector<double> selection_probabilities(std::span<const double> weights, double sharpen_t);

/// Zeroes p[i], multiplies every other node within `decay_hops` hops of i by
/// `decay_ratio`, and rescales to unit sum. Returns false, leaving p all
/// zero, when no probability mass remains.
[[nodiscard]] bool probability_decay(std::span<double> p, NodeId i, const Graph& graph,
                                     int decay_hops, double decay_ratio);

/// Sequential node-level perturbation with negative feedback: nodes are
/// drawn by their sharpened weights, get edges added and removed and feature
/// columns masked, and their neighborhood's selection probability decays.
/// Stops once the Frobenius gap to the input adjacency reaches sigma or no
/// node can be selected. The input graph is not modified.
PerturbedGraph perturb(const Graph& graph, std::span<const double> weights,
                       const PerturbConfig& config);

}  // namespace tifa

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

#include "tifa/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tifa {

void validate(const SamplerConfig& c) {
  if (c.n_roots < 1) throw ConfigError("sampler: n_roots must be >= 1");
  if (c.walk_len < 1) throw ConfigError("sampler: walk_len must be >= 1");
  if (!(c.sharpen_t >= 0.0)) throw ConfigError("sampler: sharpen_t must be >= 0");
  if (!(c.epsilon > 0.0)) throw ConfigError("sampler: epsilon must be > 0");
}

TransitionTable transition_probs(const Graph& graph, const EdgeDistance& distance,
                                 double sharpen_t, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("sampler: epsilon must be > 0");
  const NodeId n = graph.num_nodes();
  std::vector<std::size_t> offsets{0};
  offsets.reserve(static_cast<std::size_t>(n) + 1);
  std::vector<double> probs;
  probs.reserve(graph.num_edges() * 2);
  for (NodeId i = 0; i < n; ++i) {
    const auto nb = graph.neighbors(i);
    const std::size_t start = probs.size();
    double mx = -std::numeric_limits<double>::infinity();
    for (NodeId j : nb) {
      const double logit = sharpen_t / (distance(i, j) + epsilon);
      probs.push_back(logit);
      mx = std::max(mx, logit);
    }
    double sum = 0.0;
    for (std::size_t e = start; e < probs.size(); ++e) {
      probs[e] = std::exp(probs[e] - mx);
      sum += probs[e];
    }
    for (std::size_t e = start; e < probs.size(); ++e) probs[e] /= sum;
    offsets.push_back(probs.size());
  }
  return TransitionTable(std::move(offsets), std::move(probs));
}

TransitionTable transition_probs(const Graph& graph, const DistanceInputs& inputs,
                                 double sharpen_t, double epsilon) {
  return transition_probs(
      graph, [&](NodeId i, NodeId j) { return global_topology_distance(inputs, i, j); },
      sharpen_t, epsilon);
}

NodeId walk_step(const Graph& graph, const TransitionTable& probs, NodeId current, Rng& rng) {
  const auto nb = graph.neighbors(current);
  if (nb.empty()) return current;
  const auto p = probs.of(current);
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t e = 0; e < nb.size(); ++e) {
    acc += p[e];
    if (u < acc) return nb[e];
  }
  return nb.back();
}

SampledSubgraph sample_subgraph_from_roots(const Graph& graph, const TransitionTable& probs,
                                           std::span<const NodeId> roots, int walk_len,
                                           std::uint64_t seed) {
  if (roots.empty()) throw ConfigError("sampler: no roots");
  if (probs.num_nodes() != graph.num_nodes()) throw ConfigError("sampler: transition table size mismatch");
  std::vector<char> visited(static_cast<std::size_t>(graph.num_nodes()), 0);
  for (std::size_t r = 0; r < roots.size(); ++r) {
    NodeId u = roots[r];
    visited[static_cast<std::size_t>(u)] = 1;
    Rng rng = make_rng(seed, "walk", r);
    for (int step = 0; step < walk_len; ++step) {
      u = walk_step(graph, probs, u, rng);
      visited[static_cast<std::size_t>(u)] = 1;
    }
  }
  SampledSubgraph out;
  out.roots.assign(roots.begin(), roots.end());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (visited[static_cast<std::size_t>(v)]) out.nodes.push_back(v);
  }
  out.induced = induced_subgraph(graph, out.nodes);
  return out;
}

SampledSubgraph sample_subgraph(const Graph& graph, const TransitionTable& probs,
                                const SamplerConfig& config) {
  validate(config);
  const NodeId n = graph.num_nodes();
  if (n == 0) throw ConfigError("sampler: empty graph");
  Rng rng = make_rng(config.seed, "roots");
  std::vector<NodeId> roots;
  const auto want = static_cast<std::size_t>(config.n_roots);
  if (config.n_roots <= n) {
    std::vector<NodeId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t r = 0; r < want; ++r) {
      const std::size_t pick = r + uniform_index(rng, all.size() - r);
      std::swap(all[r], all[pick]);
    }
    roots.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(want));
  } else {
    for (std::size_t r = 0; r < want; ++r) {
      roots.push_back(static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n))));
    }
  }
  return sample_subgraph_from_roots(graph, probs, roots, config.walk_len, config.seed);
}

double intra_class_edge_fraction(const Graph& graph) {
  std::size_t labeled = 0, same = 0;
  for (const Edge& e : graph.adjacency().edge_list()) {
    if (!graph.is_labeled(e.u) || !graph.is_labeled(e.v)) continue;
    ++labeled;
    if (graph.label(e.u) == graph.label(e.v)) ++same;
  }
  return labeled == 0 ? std::numeric_limits<double>::quiet_NaN()
                      : static_cast<double>(same) / static_cast<double>(labeled);
}

}  // namespace tifa

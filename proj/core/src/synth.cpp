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
#include <numeric>
#include <random>
#include <string>

#include "tifa/graph.hpp"
#include "tifa/rng.hpp"

namespace tifa {

Graph synth_sbm(const SbmParams& p, std::uint64_t seed) {
  if (p.classes < 1) throw ConfigError("synth_sbm: classes must be >= 1");
  if (p.per_class < 1) throw ConfigError("synth_sbm: per_class must be >= 1");
  if (!(p.p_in >= 0.0 && p.p_in <= 1.0) || !(p.p_out >= 0.0 && p.p_out <= 1.0)) {
    throw ConfigError("synth_sbm: probabilities must lie in [0, 1]");
  }
  if (!(p.p_in > p.p_out)) throw ConfigError("synth_sbm: requires p_in > p_out");
  if (!(p.feature_noise >= 0.0)) throw ConfigError("synth_sbm: feature_noise must be >= 0");
  if (p.labels_per_class < 0 || p.labels_per_class > p.per_class) {
    throw ConfigError("synth_sbm: labels_per_class must lie in [0, per_class]");
  }
  if (p.val_per_class < 0) throw ConfigError("synth_sbm: val_per_class must be >= 0");

  const NodeId n = static_cast<NodeId>(p.classes) * p.per_class;
  auto block = [&](NodeId v) { return static_cast<int>(v / p.per_class); };

  Rng edge_rng = make_rng(seed, "sbm_edges");
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double prob = block(u) == block(v) ? p.p_in : p.p_out;
      if (uniform01(edge_rng) < prob) edges.push_back({u, v});
    }
  }

  Rng feat_rng = make_rng(seed, "sbm_features");
  std::normal_distribution<double> noise(0.0, 1.0);
  Matrix x(n, p.classes);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    labels[static_cast<std::size_t>(v)] = block(v);
    for (int c = 0; c < p.classes; ++c) {
      x(v, c) = (c == block(v) ? 1.0 : 0.0) + p.feature_noise * noise(feat_rng);
    }
  }

  Rng split_rng = make_rng(seed, "sbm_split");
  Split split;
  const int rest = p.per_class - p.labels_per_class;
  const int n_val = std::min(p.val_per_class, rest / 2);
  for (int c = 0; c < p.classes; ++c) {
    std::vector<NodeId> members(static_cast<std::size_t>(p.per_class));
    std::iota(members.begin(), members.end(), static_cast<NodeId>(c) * p.per_class);
    std::shuffle(members.begin(), members.end(), split_rng);
    auto it = members.begin();
    split.train.insert(split.train.end(), it, it + p.labels_per_class);
    it += p.labels_per_class;
    split.val.insert(split.val.end(), it, it + n_val);
    it += n_val;
    split.test.insert(split.test.end(), it, members.end());
  }

  return Graph(Adjacency::from_edges(n, edges), std::move(x), std::move(labels),
               p.classes, std::move(split));
}

}  // namespace tifa

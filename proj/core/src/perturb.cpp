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

#include "tifa/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iterator>
#include <numeric>
#include <string>

#include "tifa/rng.hpp"

namespace tifa {
namespace {

// Working copy of the adjacency with sorted neighbor lists.
class MutableAdjacency {
 public:
  explicit MutableAdjacency(const Adjacency& base) : lists_(static_cast<std::size_t>(base.num_nodes())) {
    for (NodeId v = 0; v < base.num_nodes(); ++v) {
      const auto nb = base.neighbors(v);
      lists_[static_cast<std::size_t>(v)].assign(nb.begin(), nb.end());
    }
  }

  const std::vector<NodeId>& neighbors(NodeId v) const { return lists_[static_cast<std::size_t>(v)]; }
  bool has(NodeId u, NodeId v) const {
    const auto& l = neighbors(u);
    return std::binary_search(l.begin(), l.end(), v);
  }
  void add(NodeId u, NodeId v) {
    insert(u, v);
    insert(v, u);
  }
  void remove(NodeId u, NodeId v) {
    erase(u, v);
    erase(v, u);
  }
  Adjacency freeze() const { return Adjacency::from_lists(lists_); }

 private:
  void insert(NodeId u, NodeId v) {
    auto& l = lists_[static_cast<std::size_t>(u)];
    l.insert(std::lower_bound(l.begin(), l.end(), v), v);
  }
  void erase(NodeId u, NodeId v) {
    auto& l = lists_[static_cast<std::size_t>(u)];
    l.erase(std::lower_bound(l.begin(), l.end(), v));
  }

  std::vector<std::vector<NodeId>> lists_;
};

std::size_t sample_from(std::span<const double> p, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;  // rounding slack
}

}  // namespace

void validate(const PerturbConfig& c) {
  if (!(c.sharpen_t >= 0.0)) throw ConfigError("perturb: sharpen_t must be >= 0");
  if (c.sigma && !(*c.sigma > 0.0)) throw ConfigError("perturb: sigma must be > 0");
  if (c.n_add < 0 || c.n_rmv < 0) throw ConfigError("perturb: n_add and n_rmv must be >= 0");
  if (!(c.mask_rate >= 0.0 && c.mask_rate <= 1.0)) throw ConfigError("perturb: mask_rate must lie in [0, 1]");
  if (c.decay_hops < 0) throw ConfigError("perturb: decay_hops must be >= 0");
  if (!(c.decay_ratio >= 0.0 && c.decay_ratio <= 1.0)) throw ConfigError("perturb: decay_ratio must lie in [0, 1]");
  if (c.n_add + c.n_rmv < 1 && !(c.mask_rate > 0.0)) {
    throw ConfigError("perturb: n_add + n_rmv >= 1 or mask_rate > 0 is required");
  }
}

double default_sigma(std::size_t num_edges) {
  return std::sqrt(2.0 * std::ceil(0.05 * static_cast<double>(num_edges)));
}

std::vector<double> selection_probabilities(std::span<const double> weights, double sharpen_t) {
  std::vector<double> p(weights.size());
  if (p.empty()) return p;
  double mx = -std::numeric_limits<double>::infinity();
  for (double w : weights) mx = std::max(mx, w * sharpen_t);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(weights[i] * sharpen_t - mx);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

bool probability_decay(std::span<double> p, NodeId i, const Graph& graph, int decay_hops,
                       double decay_ratio) {
  p[static_cast<std::size_t>(i)] = 0.0;
  if (decay_hops > 0 && decay_ratio != 1.0) {
    const std::vector<int> hops = bfs_hops(graph, i, decay_hops);
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (hops[x] >= 1 && hops[x] <= decay_hops) p[x] *= decay_ratio;
    }
  }
  double sum = 0.0;
  for (double x : p) sum += x;
  if (!(sum > 0.0)) {
    std::fill(p.begin(), p.end(), 0.0);
    return false;
  }
  for (double& x : p) x /= sum;
  return true;
}

PerturbedGraph perturb(const Graph& graph, std::span<const double> weights,
                       const PerturbConfig& config) {
  validate(config);
  const NodeId n = graph.num_nodes();
  if (weights.size() != static_cast<std::size_t>(n)) {
    throw ConfigError("perturb: need one weight per node");
  }

  PerturbedGraph out;
  out.sigma = config.sigma.value_or(default_sigma(graph.num_edges()));
  out.features = graph.features();
  if (n == 0) {
    out.adjacency = graph.adjacency();
    out.exhausted = true;
    return out;
  }

  Rng rng = make_rng(config.seed, "perturb");
  MutableAdjacency work(graph.adjacency());
  const Adjacency& base = graph.adjacency();
  std::vector<double> p = selection_probabilities(weights, config.sharpen_t);
  const auto h = static_cast<std::size_t>(graph.feature_dim());
  const auto n_mask = static_cast<std::size_t>(std::floor(config.mask_rate * static_cast<double>(h)));
  std::vector<std::size_t> columns(h);
  std::vector<NodeId> scratch;
  // Number of undirected edges on which A_p and A differ.
  std::size_t delta = 0;

  while (std::sqrt(2.0 * static_cast<double>(delta)) < out.sigma) {
    const auto i = static_cast<NodeId>(sample_from(p, rng));
    out.touched.push_back(i);

    // Add edges to uniformly drawn current non-neighbors.
    for (int a = 0; a < config.n_add; ++a) {
      const std::size_t free_slots =
          static_cast<std::size_t>(n - 1) - work.neighbors(i).size();
      if (free_slots == 0) break;
      NodeId x = -1;
      for (int attempt = 0; attempt < 32 && x < 0; ++attempt) {
        const auto cand = static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n)));
        if (cand != i && !work.has(i, cand)) x = cand;
      }
      if (x < 0) {
        scratch.clear();
        for (NodeId v = 0; v < n; ++v) {
          if (v != i && !work.has(i, v)) scratch.push_back(v);
        }
        x = scratch[uniform_index(rng, scratch.size())];
      }
      work.add(i, x);
      delta = base.has_edge(i, x) ? delta - 1 : delta + 1;
    }

    // Remove edges to uniformly drawn current neighbors; fewer when the
    // degree is below n_rmv.
    scratch = work.neighbors(i);
    const std::size_t n_rmv = std::min(scratch.size(), static_cast<std::size_t>(config.n_rmv));
    for (std::size_t r = 0; r < n_rmv; ++r) {
      const std::size_t pick = r + uniform_index(rng, scratch.size() - r);
      std::swap(scratch[r], scratch[pick]);
      const NodeId x = scratch[r];
      work.remove(i, x);
      delta = base.has_edge(i, x) ? delta + 1 : delta - 1;
    }

    // Mask floor(m * h) distinct feature columns of row i.
    if (n_mask > 0) {
      std::iota(columns.begin(), columns.end(), std::size_t{0});
      for (std::size_t r = 0; r < n_mask; ++r) {
        const std::size_t pick = r + uniform_index(rng, h - r);
        std::swap(columns[r], columns[pick]);
        out.features(i, static_cast<Eigen::Index>(columns[r])) = 0.0;
      }
    }

    if (!probability_decay(p, i, graph, config.decay_hops, config.decay_ratio)) {
      out.exhausted = std::sqrt(2.0 * static_cast<double>(delta)) < out.sigma;
      break;
    }
  }

  out.gap = std::sqrt(2.0 * static_cast<double>(delta));
  out.adjacency = work.freeze();
  const std::vector<Edge> before = base.edge_list();
  const std::vector<Edge> after = out.adjacency.edge_list();
  auto less = [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); };
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                      std::back_inserter(out.added), less);
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::back_inserter(out.removed), less);
  return out;
}

}  // namespace tifa

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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "test_graphs.hpp"
#include "tifa/common.hpp"
#include "tifa/distance.hpp"
#include "tifa/label_prop.hpp"

namespace tifa {
namespace {

std::vector<double> softmax(std::vector<double> v) {
  double sum = 0.0;
  for (double& x : v) sum += (x = std::exp(x));
  for (double& x : v) x /= sum;
  return v;
}

double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double out = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) out += p[c] * std::log(p[c] / q[c]);
  return out;
}

std::vector<double> row(const Matrix& m, NodeId i) {
  return {m.row(i).data(), m.row(i).data() + m.cols()};
}

void scale(std::vector<double>& v) {
  const double lo = *std::min_element(v.begin(), v.end());
  const double hi = *std::max_element(v.begin(), v.end());
  for (double& x : v) x = hi > lo ? (x - lo) / (hi - lo) : 0.0;
}

// Relative distances of `anchor` to `cands`, from first principles.
std::vector<double> oracle_row(const Graph& g, const Matrix& z_star, NodeId anchor,
                               const std::vector<NodeId>& cands, const DistanceConfig& cfg) {
  std::vector<double> dg, dl, de;
  const auto hops = bfs_hops(g, anchor, cfg.hop_cap);
  for (NodeId j : cands) {
    dg.push_back(kl(softmax(row(z_star, anchor)), softmax(row(z_star, j))));
    dl.push_back(hops[static_cast<std::size_t>(j)]);
    const auto xi = g.features().row(anchor), xj = g.features().row(j);
    de.push_back(1.0 - xi.dot(xj) / (xi.norm() * xj.norm()));
  }
  scale(dg);
  scale(dl);
  scale(de);
  std::vector<double> out;
  for (std::size_t t = 0; t < cands.size(); ++t) {
    out.push_back(dg[t] + cfg.lambda1 * dl[t] + cfg.lambda2 * de[t]);
  }
  return out;
}

struct Fixture {
  Graph graph = testing::random_graph(40, 0.1, 3, 6, 21);
  Matrix z_star = run_label_propagation(graph, LPConfig{}).z_star;
  DistanceInputs inputs = prepare_distance_inputs(graph, z_star);
};

TEST(Distance, KlMatchesScalarFormula) {
  const std::vector<double> p{0.5, 0.5}, q{0.9, 0.1};
  EXPECT_NEAR(kl_divergence(p, q), 0.5 * std::log(0.5 / 0.9) + 0.5 * std::log(5.0), 1e-15);
  const std::vector<double> zero{1.0, 0.0};
  EXPECT_NEAR(kl_divergence(zero, q), std::log(1 / 0.9), 1e-15);
  EXPECT_EQ(kl_divergence(p, p), 0.0);
}

TEST(Distance, GlobalTopologyIsKlOfSoftmaxRows) {
  Fixture f;
  for (NodeId i : {0, 5, 33}) {
    for (NodeId j : {1, 5, 39}) {
      const double expected = kl(softmax(row(f.z_star, i)), softmax(row(f.z_star, j)));
      EXPECT_NEAR(global_topology_distance(f.z_star, i, j), expected, 1e-12);
      EXPECT_NEAR(global_topology_distance(f.inputs, i, j), expected, 1e-12);
      EXPECT_GE(global_topology_distance(f.inputs, i, j), 0.0);
    }
  }
}

TEST(Distance, LocalAndEmbeddingDistances) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  Matrix x(4, 2);
  x << 1, 0, 0, 1, 2, 0, 0, 0;
  const Graph g(Adjacency::from_edges(4, edges), x, {0, 0, 0, 0}, 1, Split{{0}, {}, {}});
  EXPECT_EQ(local_topology_distance(g, 0, 2, 4), 2.0);
  EXPECT_EQ(local_topology_distance(g, 0, 2, 1), 2.0);  // capped: hop_cap + 1
  EXPECT_EQ(local_topology_distance(g, 0, 3, 4), 5.0);
  EXPECT_NEAR(embedding_distance(x, 0, 2), 0.0, 1e-15);
  EXPECT_NEAR(embedding_distance(x, 0, 1), 1.0, 1e-15);
  EXPECT_NEAR(embedding_distance(x, 0, 3), 1.0, 1e-15);
}

TEST(Distance, RelativeRowMatchesOracle) {
  Fixture f;
  const DistanceConfig cfg;
  for (NodeId i : {0, 7, 20}) {
    std::vector<NodeId> cands;
    for (NodeId j = 0; j < f.graph.num_nodes(); ++j) {
      if (j != i) cands.push_back(j);
    }
    const auto got = relative_distance_row(f.graph, f.inputs, i, cands, cfg);
    const auto want = oracle_row(f.graph, f.z_star, i, cands, cfg);
    for (std::size_t t = 0; t < cands.size(); ++t) EXPECT_NEAR(got[t], want[t], 1e-9);
  }
}

TEST(Distance, WindowDefaults) {
  const PairWindow w = resolve_window(PairWindow{}, 100);
  EXPECT_EQ(w.post_end, 2);
  EXPECT_EQ(w.negt_beg, 25);
  EXPECT_EQ(w.negt_end, 100);
  const PairWindow big = resolve_window(PairWindow{}, 4096);
  EXPECT_EQ(big.negt_beg, 1024);
  EXPECT_EQ(big.negt_end, 1152);
  const PairWindow tiny = resolve_window(PairWindow{}, 5);
  EXPECT_EQ(tiny.negt_beg, 2);
  EXPECT_EQ(tiny.negt_end, 5);
  EXPECT_THROW(resolve_window(PairWindow{0, -1, -1}, 100), ConfigError);
  EXPECT_THROW(resolve_window(PairWindow{2, 10, 200}, 100), ConfigError);
  EXPECT_THROW(resolve_window(PairWindow{2, -1, -1}, 2), ConfigError);
}

TEST(Distance, PairsMatchSortedOracle) {
  Fixture f;
  const DistanceConfig cfg;
  const PairSets pairs = sample_pairs(f.graph, f.inputs, cfg, PairSamplingConfig{});
  ASSERT_EQ(pairs.post_end, 2);
  ASSERT_EQ(pairs.negt_beg, 9);  // 39 / 4
  ASSERT_EQ(pairs.negt_end, 39);
  for (NodeId i = 0; i < f.graph.num_nodes(); ++i) {
    std::vector<NodeId> cands;
    for (NodeId j = 0; j < f.graph.num_nodes(); ++j) {
      if (j != i) cands.push_back(j);
    }
    const auto d = oracle_row(f.graph, f.z_star, i, cands, cfg);
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
    const auto& pos = pairs.positives[static_cast<std::size_t>(i)];
    const auto& neg = pairs.negatives[static_cast<std::size_t>(i)];
    ASSERT_EQ(pos.size(), 2u);
    ASSERT_EQ(neg.size(), 30u);
    // Compare distances rather than ids so floating ties cannot flip the check.
    for (std::size_t r = 0; r < 2; ++r) {
      const auto at = std::find(cands.begin(), cands.end(), pos[r]) - cands.begin();
      EXPECT_NEAR(d[static_cast<std::size_t>(at)], d[order[r]], 1e-9);
    }
    for (std::size_t r = 0; r < neg.size(); ++r) {
      const auto at = std::find(cands.begin(), cands.end(), neg[r]) - cands.begin();
      EXPECT_NEAR(d[static_cast<std::size_t>(at)], d[order[9 + r]], 1e-9);
    }
  }
}

TEST(Distance, PooledCandidatesOnLargeGraphs) {
  Fixture f;
  PairSamplingConfig s;
  s.full_candidate_limit = 10;
  s.pool_size = 12;
  s.seed = 4;
  const PairSets a = sample_pairs(f.graph, f.inputs, DistanceConfig{}, s);
  const PairSets b = sample_pairs(f.graph, f.inputs, DistanceConfig{}, s);
  EXPECT_EQ(a.positives, b.positives);
  EXPECT_EQ(a.negatives, b.negatives);
  EXPECT_EQ(a.negt_beg, 3);
  EXPECT_EQ(a.negt_end, 12);
  for (NodeId i = 0; i < f.graph.num_nodes(); ++i) {
    std::set<NodeId> all(a.positives[static_cast<std::size_t>(i)].begin(),
                         a.positives[static_cast<std::size_t>(i)].end());
    all.insert(a.negatives[static_cast<std::size_t>(i)].begin(),
               a.negatives[static_cast<std::size_t>(i)].end());
    EXPECT_EQ(all.size(), 11u);
    EXPECT_EQ(all.count(i), 0u);
  }
}

TEST(Distance, UniformPairsAreDistinctAndSelfFree) {
  PairSamplingConfig s;
  s.seed = 9;
  const PairSets p = sample_pairs_uniform(50, s);
  EXPECT_EQ(p.negt_beg, 12);
  EXPECT_EQ(p.negt_end, 49);
  for (NodeId i = 0; i < 50; ++i) {
    const auto& pos = p.positives[static_cast<std::size_t>(i)];
    const auto& neg = p.negatives[static_cast<std::size_t>(i)];
    std::set<NodeId> all(pos.begin(), pos.end());
    all.insert(neg.begin(), neg.end());
    EXPECT_EQ(all.size(), pos.size() + neg.size());
    EXPECT_EQ(all.count(i), 0u);
  }
  EXPECT_EQ(sample_pairs_uniform(50, s).positives, p.positives);
}

TEST(Distance, IntraRatioBinsCoverAllOrderedPairs) {
  Fixture f;
  const auto all = intra_class_ratio_bins(f.graph, f.inputs, 4, PairScope::kAll);
  std::size_t pairs = 0, same = 0;
  for (const auto& b : all) {
    pairs += b.pairs;
    same += b.same_class;
  }
  EXPECT_EQ(pairs, 40u * 39u);
  // Labels are v mod 3: 14, 13, 13 nodes per class.
  EXPECT_EQ(same, 14u * 13u + 2u * 13u * 12u);
  const auto nb = intra_class_ratio_bins(f.graph, f.inputs, 4, PairScope::kNeighbors);
  std::size_t nb_pairs = 0;
  for (const auto& b : nb) nb_pairs += b.pairs;
  EXPECT_EQ(nb_pairs, 2 * f.graph.num_edges());
}

}  // namespace
}  // namespace tifa

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

#include <cmath>
#include <set>

#include "test_graphs.hpp"
#include "tifa/common.hpp"
#include "tifa/perturb.hpp"

namespace tifa {
namespace {

TEST(Perturb, SelectionIsSoftmaxOfSharpenedWeights) {
  const std::vector<double> w{1.0, 2.0, 1.5};
  const auto p = selection_probabilities(w, 2.0);
  const double z = std::exp(2.0) + std::exp(4.0) + std::exp(3.0);
  EXPECT_NEAR(p[0], std::exp(2.0) / z, 1e-15);
  EXPECT_NEAR(p[1], std::exp(4.0) / z, 1e-15);
  const auto flat = selection_probabilities(w, 0.0);
  for (double x : flat) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
}

TEST(Perturb, DecayZeroesSelfScalesNeighborsAndRenormalizes) {
  // Path 0-1-2-3-4.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  const Graph g(Adjacency::from_edges(5, edges), Matrix::Ones(5, 1), {0, 0, 0, 0, 0}, 1,
                Split{{0}, {}, {}});
  std::vector<double> p(5, 0.2);
  ASSERT_TRUE(probability_decay(p, 2, g, 1, 0.5));
  // Raw: {0.2, 0.1, 0, 0.1, 0.2}, sum 0.6.
  EXPECT_NEAR(p[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0 / 6.0, 1e-15);
  EXPECT_EQ(p[2], 0.0);
  std::vector<double> q(5, 0.2);
  ASSERT_TRUE(probability_decay(q, 0, g, 2, 0.5));
  // Raw: {0, 0.1, 0.1, 0.2, 0.2}, sum 0.6.
  EXPECT_NEAR(q[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(q[2], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(q[4], 1.0 / 3.0, 1e-15);
  std::vector<double> last{0.0, 0.0, 1.0, 0.0, 0.0};
  EXPECT_FALSE(probability_decay(last, 2, g, 1, 0.5));
}

TEST(Perturb, SingleEdgeAdditionHasGapSqrtTwo) {
  const Graph g = testing::random_graph(20, 0.1, 2, 3, 1);
  PerturbConfig c;
  c.sigma = std::sqrt(2.0);
  c.n_add = 1;
  c.n_rmv = 0;
  c.mask_rate = 0.0;
  const PerturbedGraph p = perturb(g, std::vector<double>(20, 1.0), c);
  EXPECT_EQ(p.gap, std::sqrt(2.0));
  EXPECT_EQ(p.added.size(), 1u);
  EXPECT_TRUE(p.removed.empty());
  EXPECT_EQ(p.touched.size(), 1u);
  EXPECT_FALSE(p.exhausted);
  EXPECT_EQ(p.adjacency.num_edges(), g.num_edges() + 1);
}

TEST(Perturb, ContractHoldsOverSeeds) {
  const Graph g = testing::random_graph(60, 0.08, 3, 10, 2);
  std::vector<double> w(60);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + static_cast<double>(i % 7) / 7.0;
  const Matrix a = testing::dense_adjacency(g.adjacency());
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    PerturbConfig c;
    c.seed = seed;
    const PerturbedGraph p = perturb(g, w, c);
    const Matrix ap = testing::dense_adjacency(p.adjacency);
    EXPECT_EQ(ap, ap.transpose());
    EXPECT_EQ(ap.diagonal().sum(), 0.0);
    EXPECT_NEAR(p.gap, (ap - a).norm(), 1e-12);
    EXPECT_NEAR(p.sigma, default_sigma(g.num_edges()), 0.0);
    if (!p.exhausted) {
      EXPECT_GE(p.gap, p.sigma);
    }
    // Added and removed are the exact symmetric difference.
    std::size_t diff = 0;
    for (NodeId u = 0; u < 60; ++u) {
      for (NodeId v = u + 1; v < 60; ++v) diff += ap(u, v) != a(u, v);
    }
    EXPECT_EQ(diff, p.added.size() + p.removed.size());
    for (const Edge& e : p.added) EXPECT_TRUE(ap(e.u, e.v) == 1.0 && a(e.u, e.v) == 0.0);
    for (const Edge& e : p.removed) EXPECT_TRUE(ap(e.u, e.v) == 0.0 && a(e.u, e.v) == 1.0);
    // Nodes are selected at most once, and each loses floor(0.1 * 10) feature.
    std::set<NodeId> unique(p.touched.begin(), p.touched.end());
    EXPECT_EQ(unique.size(), p.touched.size());
    for (NodeId v = 0; v < 60; ++v) {
      const auto zeros = (p.features.row(v).array() == 0.0).count();
      EXPECT_EQ(zeros, unique.count(v) ? 1 : 0);
    }
    const PerturbedGraph again = perturb(g, w, c);
    EXPECT_EQ(again.adjacency, p.adjacency);
    EXPECT_EQ(again.features, p.features);
    EXPECT_EQ(again.touched, p.touched);
  }
}

TEST(Perturb, ExhaustionIsReported) {
  const Graph g = testing::random_graph(6, 0.4, 2, 2, 3);
  PerturbConfig c;
  c.sigma = 100.0;
  const PerturbedGraph p = perturb(g, std::vector<double>(6, 1.0), c);
  EXPECT_TRUE(p.exhausted);
  EXPECT_EQ(p.touched.size(), 6u);
  EXPECT_LT(p.gap, 100.0);
}

TEST(Perturb, SharpSelectionPrefersLargestWeight) {
  const Graph g = testing::random_graph(30, 0.2, 2, 2, 4);
  std::vector<double> w(30, 1.0);
  w[17] = 2.0;
  PerturbConfig c;
  c.sharpen_t = 50.0;
  c.sigma = std::sqrt(2.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    c.seed = seed;
    EXPECT_EQ(perturb(g, w, c).touched.front(), 17);
  }
}

TEST(Perturb, RejectsBadConfig) {
  const Graph g = testing::random_graph(6, 0.4, 2, 2, 3);
  const std::vector<double> w(6, 1.0);
  PerturbConfig c;
  c.mask_rate = 1.5;
  EXPECT_THROW(perturb(g, w, c), ConfigError);
  c = PerturbConfig{};
  c.sigma = -1.0;
  EXPECT_THROW(perturb(g, w, c), ConfigError);
  EXPECT_THROW(perturb(g, std::vector<double>(5, 1.0), PerturbConfig{}), ConfigError);
}

}  // namespace
}  // namespace tifa

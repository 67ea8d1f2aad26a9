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
#include <string>

#include "objective_setup.hpp"
#include "test_graphs.hpp"
#include "tifa/adam.hpp"
#include "tifa/common.hpp"
#include "tifa/objective.hpp"

namespace tifa {
namespace {

double kl(const Eigen::RowVectorXd& log_p, const Eigen::RowVectorXd& log_q) {
  double out = 0.0;
  for (Eigen::Index c = 0; c < log_p.size(); ++c) {
    out += std::exp(log_p(c)) * (log_p(c) - log_q(c));
  }
  return out;
}

TEST(Objective, CrossEntropyAveragesOverTrainNodes) {
  Matrix lp(3, 2);
  lp << std::log(0.9), std::log(0.1), std::log(0.4), std::log(0.6), std::log(0.5), std::log(0.5);
  const std::vector<int> labels{0, 0, 1};
  const std::vector<NodeId> train{0, 1};
  EXPECT_NEAR(ce_loss(lp, labels, train), -(std::log(0.9) + std::log(0.4)) / 2, 1e-15);
  EXPECT_THROW(ce_loss(lp, labels, std::vector<NodeId>{}), ConfigError);
}

TEST(Objective, PairwiseLossIsPositiveMeanMinusWeightedNegativeMean) {
  Matrix pert(3, 2), frozen(3, 2);
  pert << std::log(0.7), std::log(0.3), std::log(0.5), std::log(0.5), std::log(0.2), std::log(0.8);
  frozen << std::log(0.6), std::log(0.4), std::log(0.9), std::log(0.1), std::log(0.3), std::log(0.7);
  PairSets pairs;
  pairs.positives = {{1}, {}, {}};
  pairs.negatives = {{1, 2}, {}, {}};
  const double pos = kl(pert.row(0), frozen.row(1));
  const double neg = (kl(pert.row(0), frozen.row(1)) + kl(pert.row(0), frozen.row(2))) / 2;
  EXPECT_NEAR(pairwise_loss(0, pairs, pert, frozen, 0.33), pos - 0.33 * neg, 1e-15);
  EXPECT_NEAR(self_consistency_loss(pert, frozen, 2), kl(pert.row(2), frozen.row(2)), 1e-15);
  EXPECT_EQ(pairwise_loss(1, pairs, pert, frozen, 0.33), 0.0);
}

TEST(Objective, TotalLossWeightsPerNodeTerms) {
  const std::vector<double> unsup{1.0, 2.0, 3.0}, w{2.0, 1.0, 0.5};
  EXPECT_DOUBLE_EQ(total_loss(0.5, unsup, w), 0.5 + (2.0 + 2.0 + 1.5) / 3.0);
  EXPECT_THROW(total_loss(0.5, unsup, std::vector<double>{1.0}), ConfigError);
}

TEST(Objective, ValueMatchesIndependentRecomputation) {
  const Graph g = testing::random_graph(12, 0.3, 2, 3, 3);
  testing::ObjectiveSetup s;
  testing::build_objective(s, g, TrainMode::kTifaGcl, 4);
  const ObjectiveValue v = evaluate_objective(s.live, s.frozen, s.inputs);
  const ForwardCache clean = forward(s.clean, s.live, &s.clean_mask);
  const ForwardCache pert = forward(s.perturbed, s.live, &s.pert_mask);
  const ForwardCache frozen = forward(s.clean, s.frozen);
  double ce = 0.0;
  for (NodeId v2 : g.split().train) ce -= clean.log_probs(v2, g.label(v2));
  ce /= static_cast<double>(g.split().train.size());
  double unsup = 0.0;
  for (NodeId i = 0; i < 12; ++i) {
    const double ls = kl(pert.log_probs.row(i), frozen.log_probs.row(i));
    double pos = 0.0, neg = 0.0;
    for (NodeId j : s.analysis.pairs.positives[static_cast<std::size_t>(i)]) {
      pos += kl(pert.log_probs.row(i), frozen.log_probs.row(j));
    }
    for (NodeId j : s.analysis.pairs.negatives[static_cast<std::size_t>(i)]) {
      neg += kl(pert.log_probs.row(i), frozen.log_probs.row(j));
    }
    pos /= static_cast<double>(s.analysis.pairs.positives[static_cast<std::size_t>(i)].size());
    neg /= static_cast<double>(s.analysis.pairs.negatives[static_cast<std::size_t>(i)].size());
    unsup += s.weights[static_cast<std::size_t>(i)] * (ls + 0.1 * (pos - 0.33 * neg));
  }
  EXPECT_NEAR(v.ce, ce, 1e-12);
  EXPECT_NEAR(v.total, ce + unsup / 12.0, 1e-12);
}

class ObjectiveGradient : public ::testing::TestWithParam<TrainMode> {};

TEST_P(ObjectiveGradient, MatchesCentralDifferences) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph g = testing::random_graph(10, 0.3, 3, 4, 40 + seed);
    testing::ObjectiveSetup s;
    testing::build_objective(s, g, GetParam(), seed);
    EXPECT_LT(testing::gradient_relative_error(s), 1e-6) << "seed " << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, ObjectiveGradient,
                         ::testing::Values(TrainMode::kBaseline, TrainMode::kUniformGcl,
                                           TrainMode::kTifaGcl),
                         [](const auto& info) {
                           std::string name(to_string(info.param));
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(Adam, MatchesScalarRecurrence) {
  Matrix p(1, 1);
  p << 1.0;
  const Matrix g1 = Matrix::Constant(1, 1, 0.5);
  const Matrix g2 = Matrix::Constant(1, 1, -0.2);
  AdamState state;
  Matrix* params[] = {&p};
  const double lr = 0.1, wd = 0.01, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  double x = 1.0, m = 0.0, v = 0.0;
  for (int t = 1; t <= 2; ++t) {
    const Matrix& g = t == 1 ? g1 : g2;
    const Matrix* grads[] = {&g};
    adam_step(params, grads, state, lr, wd);
    const double gt = g(0, 0) + wd * x;
    m = b1 * m + (1 - b1) * gt;
    v = b2 * v + (1 - b2) * gt * gt;
    x -= lr * (m / (1 - std::pow(b1, t))) / (std::sqrt(v / (1 - std::pow(b2, t))) + eps);
    EXPECT_NEAR(p(0, 0), x, 1e-15);
  }
  EXPECT_EQ(state.t, 2);
}

}  // namespace
}  // namespace tifa

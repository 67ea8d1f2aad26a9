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

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "tifa/objective.hpp"
#include "tifa/perturb.hpp"
#include "tifa/rng.hpp"
#include "tifa/trainer.hpp"

namespace tifa::testing {

/// Everything the combined objective needs for one mode on one graph.
struct ObjectiveSetup {
  Analysis analysis;
  GraphInput clean;
  GraphInput perturbed;
  GcnParams live;
  GcnParams frozen;
  Matrix clean_mask;
  Matrix pert_mask;
  std::vector<double> weights;
  ContrastiveTerms terms;
  ObjectiveInputs inputs;
};

/// Built in place because `inputs` and `terms` point into the struct.
inline void build_objective(ObjectiveSetup& s, const Graph& g, TrainMode mode,
                            std::uint64_t seed, int hidden = 4) {
  TrainConfig tc;
  tc.mode = mode;
  AnalysisConfig ac;
  ac.pairs.seed = seed;
  s.analysis = analyze(g, ac, effective_pair_policy(tc));
  s.clean = make_graph_input(g.adjacency(), g.features());
  Rng rng = make_rng(seed, "objective_setup");
  s.live = init_gcn(g.feature_dim(), hidden, g.num_classes(), rng);
  s.frozen = init_gcn(g.feature_dim(), hidden, g.num_classes(), rng);
  s.clean_mask = make_dropout_mask(g.num_nodes(), hidden, 0.5, rng);
  s.pert_mask = make_dropout_mask(g.num_nodes(), hidden, 0.5, rng);
  s.inputs = ObjectiveInputs{};
  s.inputs.clean = &s.clean;
  s.inputs.labels = g.labels();
  s.inputs.train_nodes = g.split().train;
  s.inputs.clean_mask = &s.clean_mask;
  if (mode == TrainMode::kBaseline) return;
  PerturbConfig pc;
  pc.seed = seed;
  const PerturbedGraph pg = perturb(g, s.analysis.tig.weight, pc);
  s.perturbed = make_graph_input(pg.adjacency, pg.features);
  s.weights = loss_weights(s.analysis, mode);
  s.terms = ContrastiveTerms{&s.perturbed, &s.analysis.pairs, s.weights, 0.33, 0.1};
  s.inputs.perturbed_mask = &s.pert_mask;
  s.inputs.contrastive = &s.terms;
}

/// max |analytic - central difference| over all live parameters, divided by
/// the largest finite-difference magnitude.
inline double gradient_relative_error(ObjectiveSetup& s, double h = 1e-5) {
  const ObjectiveValue v = evaluate_objective(s.live, s.frozen, s.inputs);
  double worst = 0.0, scale = 0.0;
  for (Matrix* w : {&s.live.w0, &s.live.w1}) {
    const Matrix& g = w == &s.live.w0 ? v.grad.w0 : v.grad.w1;
    for (Eigen::Index k = 0; k < w->size(); ++k) {
      const double orig = w->data()[k];
      w->data()[k] = orig + h;
      const double up = evaluate_objective(s.live, s.frozen, s.inputs).total;
      w->data()[k] = orig - h;
      const double down = evaluate_objective(s.live, s.frozen, s.inputs).total;
      w->data()[k] = orig;
      const double fd = (up - down) / (2 * h);
      worst = std::max(worst, std::abs(g.data()[k] - fd));
      scale = std::max(scale, std::abs(fd));
    }
  }
  return worst / std::max(scale, 1e-12);
}

}  // namespace tifa::testing

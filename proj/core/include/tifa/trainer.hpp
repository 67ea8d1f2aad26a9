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
#include <string>
#include <string_view>
#include <vector>

#include "tifa/distance.hpp"
#include "tifa/gcn.hpp"
#include "tifa/graph.hpp"
#include "tifa/label_prop.hpp"
#include "tifa/perturb.hpp"
#include "tifa/tig.hpp"

namespace tifa {

enum class TrainMode { kBaseline, kUniformGcl, kTifaGcl };
enum class PairPolicy { kNone, kTifa, kUniform };
enum class PerturbWeighting { kTig, kUniform };

std::string_view to_string(TrainMode mode);
std::string_view to_string(PairPolicy policy);
std::string_view to_string(PerturbWeighting weighting);
/// Accepts "baseline", "uniform-gcl", "tifa-gcl".
TrainMode parse_train_mode(std::string_view text);

struct AnalysisConfig {
  LPConfig lp;
  TigConfig tig;
  DistanceConfig distance;
  PairSamplingConfig pairs;
};

/// Training-static artifacts derived from the clean graph.
struct Analysis {
  AnalysisConfig config;
  LPResult lp;
  TigProfile tig;
  PairPolicy pair_policy = PairPolicy::kNone;
  PairSets pairs;  // empty when pair_policy is kNone
};

Analysis analyze(const Graph& graph, const AnalysisConfig& config, PairPolicy policy);

struct TrainConfig {
  TrainMode mode = TrainMode::kTifaGcl;
  int hidden_dim = 64;
  double lr = 0.0075;
  double dropout = 0.5;
  double weight_decay = 0.005;
  int max_epochs = 200;
  int min_epochs = 30;
  int patience = 20;
  int lr_decay_start = 30;  // lr *= lr_decay every epoch after this one
  double lr_decay = 0.95;
  double mu1 = 0.33;
  double mu2 = 0.1;
  /// Mode defaults when unset: tifa-gcl uses TIG weighting and TIFA pairs,
  /// uniform-gcl uses uniform weighting and uniform pairs.
  std::optional<PerturbWeighting> perturb_weighting;
  std::optional<PairPolicy> pair_policy;
  /// Rebuild LP/TIG/pairs from each epoch's perturbed graph.
  bool recompute_analysis_per_epoch = false;
  std::uint64_t seed = 0;
};

void validate(const TrainConfig& config);
PairPolicy effective_pair_policy(const TrainConfig& config);
PerturbWeighting effective_perturb_weighting(const TrainConfig& config);

/// Per-node contrastive-loss weights: the TIG schedule in tifa-gcl mode, the
/// constant (w_min + w_max) / 2 in uniform-gcl mode, empty in baseline mode.
std::vector<double> loss_weights(const Analysis& analysis, TrainMode mode);

struct EpochMetrics {
  int epoch = 0;
  double lr = 0.0;
  double loss_ce = 0.0;
  double loss_unsup_mean = 0.0;
  double val_acc = 0.0;
  double test_acc = 0.0;
};

struct Evaluation {
  double accuracy = 0.0;
  std::vector<int> predictions;  // argmax per node, ties to the smallest class
};

/// Accuracy over the labeled nodes of `mask`. Throws ConfigError when the
/// mask has no labeled node.
Evaluation evaluate(const GcnParams& params, const GraphInput& input, const Graph& graph,
                    std::span<const NodeId> mask);

/// Row argmax with ties broken toward the smallest column.
std::vector<int> argmax_rows(const Matrix& m);

struct TrainResult {
  GcnParams params;  // from the best validation epoch
  int best_epoch = 0;
  int epochs_run = 0;
  double best_val_acc = 0.0;
  double test_acc = 0.0;
  std::vector<int> predictions;
  std::vector<EpochMetrics> log;
};

/// Full-batch training: per epoch refresh the frozen copy, draw a fresh
/// perturbation, take one Adam step on the combined objective, and track the
/// best validation epoch with early stopping.
TrainResult train(const Graph& graph, const Analysis& analysis, const PerturbConfig& perturb,
                  const TrainConfig& config);

}  // namespace tifa

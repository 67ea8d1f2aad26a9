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

#include <span>
#include <vector>

#include "tifa/common.hpp"
#include "tifa/distance.hpp"
#include "tifa/gcn.hpp"

namespace tifa {

// ---------------------------------------------------------------------------
// Scalar loss terms. Probability rows are passed as log-probabilities so the
// terms stay finite when an entry underflows.

/// -(1/|L|) sum_{i in L} log g_i[y_i].
double ce_loss(const Matrix& log_probs, std::span<const int> labels,
               std::span<const NodeId> train_nodes);

/// KL(p || q) = sum p (log p - log q) from log-probability rows.
double kl_row(std::span<const double> log_p, std::span<const double> log_q);

/// KL(g_perturbed_i || g_frozen_i).
double self_consistency_loss(const Matrix& log_perturbed, const Matrix& log_frozen, NodeId i);

/// mean_{j in P_i} KL(g_p_i || g_f_j) - mu1 * mean_{j in N_i} KL(g_p_i || g_f_j).
/// An empty set contributes 0.
double pairwise_loss(NodeId i, const PairSets& pairs, const Matrix& log_perturbed,
                     const Matrix& log_frozen, double mu1);

inline double unsupervised_loss(double self_consistency, double pairwise, double mu2) {
  return self_consistency + mu2 * pairwise;
}

/// ce + (1/n) sum_i w_i unsup_i.
double total_loss(double ce, std::span<const double> unsup, std::span<const double> weights);

// ---------------------------------------------------------------------------
// Full objective with exact gradients

struct ContrastiveTerms {
  const GraphInput* perturbed = nullptr;
  const PairSets* pairs = nullptr;  // null: self-consistency only
  std::span<const double> weights;  // one per node
  double mu1 = 0.33;
  double mu2 = 0.1;
};

struct ObjectiveInputs {
  const GraphInput* clean = nullptr;
  std::span<const int> labels;
  std::span<const NodeId> train_nodes;
  /// Dropout masks for the two live branches; null disables dropout there.
  const Matrix* clean_mask = nullptr;
  const Matrix* perturbed_mask = nullptr;
  /// Absent for the plain cross-entropy objective.
  const ContrastiveTerms* contrastive = nullptr;
};

struct ObjectiveValue {
  double total = 0.0;
  double ce = 0.0;
  double unsup_mean = 0.0;      // (1/n) sum_i L_U^i
  double weighted_unsup = 0.0;  // (1/n) sum_i w_i L_U^i
  std::vector<double> unsup;    // L_U^i per node
  GcnParams grad;               // w.r.t. the live parameters only
};

/// Evaluates the combined objective: cross-entropy on the clean live branch
/// plus, when contrastive terms are given, the weighted self-consistency and
/// pairwise KL terms between the perturbed live branch and the clean branch
/// under `frozen` (evaluation mode, treated as a constant target).
ObjectiveValue evaluate_objective(const GcnParams& live, const GcnParams& frozen,
                                  const ObjectiveInputs& inputs);

}  // namespace tifa

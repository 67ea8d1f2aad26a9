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

#include "tifa/common.hpp"
#include "tifa/graph.hpp"
#include "tifa/rng.hpp"

namespace tifa {

/// Two-layer GCN weights (no biases).
struct GcnParams {
  Matrix w0;  // h x d
  Matrix w1;  // d x k
};

/// Live parameters plus the frozen copy used as the contrastive target.
struct GcnModel {
  GcnParams params;
  GcnParams frozen;
  void refresh_frozen() { frozen = params; }
};

/// Glorot-uniform initialization, bound sqrt(6 / (fan_in + fan_out)).
GcnParams init_gcn(Eigen::Index in_dim, Eigen::Index hidden_dim, Eigen::Index classes, Rng& rng);

/// Symmetric-normalized adjacency together with its product with the
/// features, which is all the first layer needs.
struct GraphInput {
  SparseMatrix adj;
  Matrix ax;
};

GraphInput make_graph_input(const Adjacency& adjacency, const Matrix& features);

struct ForwardCache {
  Matrix h1_pre;       // A X W0
  Matrix h1;           // relu(h1_pre), with dropout applied when training
  Matrix dropout_mask; // 0 or 1/(1-rate); empty in evaluation mode
  Matrix ah1;          // A h1
  Matrix logits;       // A h1 W1
  Matrix log_probs;    // row log-softmax
  Matrix probs;        // row softmax
};

/// Inverted-dropout mask of the given shape: entries 0 with probability
/// `rate`, else 1 / (1 - rate).
Matrix make_dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng);

/// g = softmax(A relu(A X W0) W1). `dropout_mask`, when non-null, multiplies
/// the hidden activations.
ForwardCache forward(const GraphInput& input, const GcnParams& params,
                     const Matrix* dropout_mask = nullptr);

/// Parameter gradients given dLoss/dLogits.
GcnParams backward(const GraphInput& input, const GcnParams& params, const ForwardCache& cache,
                   const Matrix& d_logits);

}  // namespace tifa

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

#include "tifa/gcn.hpp"

#include <cmath>
#include <string>

#include "tifa/distance.hpp"

namespace tifa {

GcnParams init_gcn(Eigen::Index in_dim, Eigen::Index hidden_dim, Eigen::Index classes, Rng& rng) {
  if (in_dim < 1 || hidden_dim < 1 || classes < 1) throw ConfigError("init_gcn: dimensions must be positive");
  auto glorot = [&](Eigen::Index rows, Eigen::Index cols) {
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix w(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = bound * (2.0 * uniform01(rng) - 1.0);
    }
    return w;
  };
  GcnParams p;
  p.w0 = glorot(in_dim, hidden_dim);
  p.w1 = glorot(hidden_dim, classes);
  return p;
}

GraphInput make_graph_input(const Adjacency& adjacency, const Matrix& features) {
  if (features.rows() != adjacency.num_nodes()) throw ConfigError("graph input: feature rows != node count");
  GraphInput in;
  in.adj = normalize(adjacency, NormalizationKind::kSymmetric).values;
  in.ax = in.adj * features;
  return in;
}

Matrix make_dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw ConfigError("dropout rate must lie in [0, 1)");
  const double keep_scale = 1.0 / (1.0 - rate);
  Matrix mask(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) mask(i, j) = uniform01(rng) < rate ? 0.0 : keep_scale;
  }
  return mask;
}

ForwardCache forward(const GraphInput& input, const GcnParams& params, const Matrix* dropout_mask) {
  if (input.ax.cols() != params.w0.rows() || params.w0.cols() != params.w1.rows()) {
    throw ConfigError("gcn forward: dimension mismatch (features " + std::to_string(input.ax.cols()) +
                      ", W0 " + std::to_string(params.w0.rows()) + "x" +
                      std::to_string(params.w0.cols()) + ", W1 " + std::to_string(params.w1.rows()) +
                      "x" + std::to_string(params.w1.cols()) + ")");
  }
  ForwardCache c;
  c.h1_pre.noalias() = input.ax * params.w0;
  c.h1 = c.h1_pre.cwiseMax(0.0);
  if (dropout_mask) {
    if (dropout_mask->rows() != c.h1.rows() || dropout_mask->cols() != c.h1.cols()) {
      throw ConfigError("gcn forward: dropout mask shape mismatch");
    }
    c.dropout_mask = *dropout_mask;
    c.h1.array() *= dropout_mask->array();
  }
  c.ah1 = input.adj * c.h1;
  c.logits.noalias() = c.ah1 * params.w1;
  c.log_probs = log_softmax_rows(c.logits);
  c.probs = c.log_probs.array().exp().matrix();
  return c;
}

GcnParams backward(const GraphInput& input, const GcnParams& params, const ForwardCache& cache,
                   const Matrix& d_logits) {
  GcnParams g;
  g.w1.noalias() = cache.ah1.transpose() * d_logits;
  const Matrix d_ah1 = d_logits * params.w1.transpose();
  Matrix d_h1 = input.adj.transpose() * d_ah1;
  if (cache.dropout_mask.size() > 0) d_h1.array() *= cache.dropout_mask.array();
  d_h1.array() *= (cache.h1_pre.array() > 0.0).cast<double>();
  g.w0.noalias() = input.ax.transpose() * d_h1;
  return g;
}

}  // namespace tifa

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

#include "tifa/objective.hpp"

#include <cmath>

namespace tifa {
namespace {

std::span<const double> row_of(const Matrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

}  // namespace

double ce_loss(const Matrix& log_probs, std::span<const int> labels,
               std::span<const NodeId> train_nodes) {
  if (train_nodes.empty()) throw ConfigError("ce_loss: empty train set");
  double sum = 0.0;
  for (NodeId v : train_nodes) sum -= log_probs(v, labels[static_cast<std::size_t>(v)]);
  return sum / static_cast<double>(train_nodes.size());
}

double kl_row(std::span<const double> log_p, std::span<const double> log_q) {
  double kl = 0.0;
  for (std::size_t c = 0; c < log_p.size(); ++c) kl += std::exp(log_p[c]) * (log_p[c] - log_q[c]);
  return kl;
}

double self_consistency_loss(const Matrix& log_perturbed, const Matrix& log_frozen, NodeId i) {
  return kl_row(row_of(log_perturbed, i), row_of(log_frozen, i));
}

double pairwise_loss(NodeId i, const PairSets& pairs, const Matrix& log_perturbed,
                     const Matrix& log_frozen, double mu1) {
  const auto p = row_of(log_perturbed, i);
  const auto& pos = pairs.positives[static_cast<std::size_t>(i)];
  const auto& neg = pairs.negatives[static_cast<std::size_t>(i)];
  double pos_term = 0.0, neg_term = 0.0;
  for (NodeId j : pos) pos_term += kl_row(p, row_of(log_frozen, j));
  for (NodeId j : neg) neg_term += kl_row(p, row_of(log_frozen, j));
  if (!pos.empty()) pos_term /= static_cast<double>(pos.size());
  if (!neg.empty()) neg_term /= static_cast<double>(neg.size());
  return pos_term - mu1 * neg_term;
}

double total_loss(double ce, std::span<const double> unsup, std::span<const double> weights) {
  if (unsup.size() != weights.size()) throw ConfigError("total_loss: length mismatch");
  if (unsup.empty()) return ce;
  double acc = 0.0;
  for (std::size_t i = 0; i < unsup.size(); ++i) acc += weights[i] * unsup[i];
  return ce + acc / static_cast<double>(unsup.size());
}

ObjectiveValue evaluate_objective(const GcnParams& live, const GcnParams& frozen,
                                  const ObjectiveInputs& inputs) {
  if (!inputs.clean) throw ConfigError("objective: missing clean graph input");
  const GraphInput& clean = *inputs.clean;
  const Eigen::Index n = clean.ax.rows();

  ObjectiveValue out;
  const ForwardCache live_clean = forward(clean, live, inputs.clean_mask);
  out.ce = ce_loss(live_clean.log_probs, inputs.labels, inputs.train_nodes);

  const double ce_scale = 1.0 / static_cast<double>(inputs.train_nodes.size());
  Matrix d_clean = Matrix::Zero(n, live_clean.probs.cols());
  for (NodeId v : inputs.train_nodes) {
    d_clean.row(v) = ce_scale * live_clean.probs.row(v);
    d_clean(v, inputs.labels[static_cast<std::size_t>(v)]) -= ce_scale;
  }
  out.grad = backward(clean, live, live_clean, d_clean);
  out.total = out.ce;

  const ContrastiveTerms* ct = inputs.contrastive;
  if (!ct) return out;
  if (!ct->perturbed) throw ConfigError("objective: contrastive terms need a perturbed graph input");
  if (ct->weights.size() != static_cast<std::size_t>(n)) throw ConfigError("objective: need one weight per node");
  if (ct->perturbed->ax.rows() != n) throw ConfigError("objective: perturbed graph size mismatch");

  const ForwardCache target = forward(clean, frozen, nullptr);
  const ForwardCache live_pert = forward(*ct->perturbed, live, inputs.perturbed_mask);
  const Matrix& log_p = live_pert.log_probs;
  const Matrix& log_q = target.log_probs;
  const Eigen::Index k = log_p.cols();

  out.unsup.resize(static_cast<std::size_t>(n));
  Matrix d_pert(n, k);
  Eigen::RowVectorXd acc(k), g(k);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto node = static_cast<NodeId>(i);
    const double ls = self_consistency_loss(log_p, log_q, node);
    const double lp = ct->pairs ? pairwise_loss(node, *ct->pairs, log_p, log_q, ct->mu1) : 0.0;
    out.unsup[static_cast<std::size_t>(i)] = unsupervised_loss(ls, lp, ct->mu2);

    // dL/dp = sum_t c_t (log p + 1 - log q_t); the constant drops out of
    // the softmax Jacobian.
    const double w = ct->weights[static_cast<std::size_t>(i)] * inv_n;
    double c_total = w;
    acc = w * log_q.row(i);
    if (ct->pairs) {
      const auto& pos = ct->pairs->positives[static_cast<std::size_t>(i)];
      const auto& neg = ct->pairs->negatives[static_cast<std::size_t>(i)];
      if (!pos.empty()) {
        const double c = w * ct->mu2 / static_cast<double>(pos.size());
        for (NodeId j : pos) acc += c * log_q.row(j);
        c_total += c * static_cast<double>(pos.size());
      }
      if (!neg.empty()) {
        const double c = -w * ct->mu2 * ct->mu1 / static_cast<double>(neg.size());
        for (NodeId j : neg) acc += c * log_q.row(j);
        c_total += c * static_cast<double>(neg.size());
      }
    }
    g = c_total * log_p.row(i) - acc;
    const auto p = live_pert.probs.row(i);
    d_pert.row(i) = p.cwiseProduct(g - Eigen::RowVectorXd::Constant(k, p.dot(g)));
  }

  double unsup_sum = 0.0;
  for (double u : out.unsup) unsup_sum += u;
  out.unsup_mean = unsup_sum * inv_n;
  out.weighted_unsup = total_loss(0.0, out.unsup, ct->weights);
  out.total = out.ce + out.weighted_unsup;

  const GcnParams g_pert = backward(*ct->perturbed, live, live_pert, d_pert);
  out.grad.w0 += g_pert.w0;
  out.grad.w1 += g_pert.w1;
  return out;
}

}  // namespace tifa

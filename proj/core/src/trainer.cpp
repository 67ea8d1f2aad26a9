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

#include "tifa/trainer.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tifa/adam.hpp"
#include "tifa/objective.hpp"
#include "tifa/rng.hpp"

namespace tifa {

std::string_view to_string(TrainMode mode) {
  switch (mode) {
    case TrainMode::kBaseline: return "baseline";
    case TrainMode::kUniformGcl: return "uniform-gcl";
    case TrainMode::kTifaGcl: return "tifa-gcl";
  }
  return "?";
}

std::string_view to_string(PairPolicy policy) {
  switch (policy) {
    case PairPolicy::kNone: return "none";
    case PairPolicy::kTifa: return "tifa";
    case PairPolicy::kUniform: return "uniform";
  }
  return "?";
}

std::string_view to_string(PerturbWeighting weighting) {
  return weighting == PerturbWeighting::kTig ? "tig" : "uniform";
}

TrainMode parse_train_mode(std::string_view text) {
  if (text == "baseline") return TrainMode::kBaseline;
  if (text == "uniform-gcl") return TrainMode::kUniformGcl;
  if (text == "tifa-gcl") return TrainMode::kTifaGcl;
  throw ConfigError("unknown mode '" + std::string(text) +
                    "' (expected baseline, uniform-gcl or tifa-gcl)");
}

Analysis analyze(const Graph& graph, const AnalysisConfig& config, PairPolicy policy) {
  Analysis a;
  a.config = config;
  a.lp = run_label_propagation(graph, config.lp);
  a.tig = build_tig_profile(a.lp.z_star, config.tig);
  a.pair_policy = policy;
  if (policy == PairPolicy::kTifa) {
    const DistanceInputs in = prepare_distance_inputs(graph, a.lp.z_star);
    a.pairs = sample_pairs(graph, in, config.distance, config.pairs);
  } else if (policy == PairPolicy::kUniform) {
    a.pairs = sample_pairs_uniform(graph.num_nodes(), config.pairs);
  }
  return a;
}

void validate(const TrainConfig& c) {
  if (c.hidden_dim < 1) throw ConfigError("hidden_dim must be >= 1");
  if (!(c.lr > 0.0)) throw ConfigError("lr must be > 0");
  if (!(c.dropout >= 0.0 && c.dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  if (!(c.weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
  if (c.max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (c.min_epochs < 0 || c.patience < 1) throw ConfigError("min_epochs must be >= 0 and patience >= 1");
  if (!(c.lr_decay > 0.0 && c.lr_decay <= 1.0)) throw ConfigError("lr_decay must lie in (0, 1]");
  if (!(c.mu1 >= 0.0) || !(c.mu2 >= 0.0)) throw ConfigError("mu1 and mu2 must be >= 0");
}

PairPolicy effective_pair_policy(const TrainConfig& c) {
  if (c.mode == TrainMode::kBaseline) return PairPolicy::kNone;
  if (c.pair_policy) return *c.pair_policy;
  return c.mode == TrainMode::kTifaGcl ? PairPolicy::kTifa : PairPolicy::kUniform;
}

PerturbWeighting effective_perturb_weighting(const TrainConfig& c) {
  if (c.perturb_weighting) return *c.perturb_weighting;
  return c.mode == TrainMode::kTifaGcl ? PerturbWeighting::kTig : PerturbWeighting::kUniform;
}

std::vector<double> loss_weights(const Analysis& analysis, TrainMode mode) {
  switch (mode) {
    case TrainMode::kBaseline: return {};
    case TrainMode::kUniformGcl: {
      const double w = 0.5 * (analysis.config.tig.w_min + analysis.config.tig.w_max);
      return std::vector<double>(analysis.tig.weight.size(), w);
    }
    case TrainMode::kTifaGcl: return analysis.tig.weight;
  }
  return {};
}

std::vector<int> argmax_rows(const Matrix& m) {
  std::vector<int> out(static_cast<std::size_t>(m.rows()), 0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < m.cols(); ++c) {
      if (m(i, c) > m(i, best)) best = static_cast<int>(c);
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

Evaluation evaluate(const GcnParams& params, const GraphInput& input, const Graph& graph,
                    std::span<const NodeId> mask) {
  if (mask.empty()) throw ConfigError("evaluate: empty mask");
  Evaluation out;
  out.predictions = argmax_rows(forward(input, params).logits);
  std::size_t total = 0, correct = 0;
  for (NodeId v : mask) {
    if (!graph.is_labeled(v)) continue;
    ++total;
    if (out.predictions[static_cast<std::size_t>(v)] == graph.label(v)) ++correct;
  }
  if (total == 0) throw ConfigError("evaluate: mask has no labeled nodes");
  out.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return out;
}

namespace {

struct SplitScore {
  double acc = std::numeric_limits<double>::quiet_NaN();
  double loss = std::numeric_limits<double>::quiet_NaN();
};

SplitScore score(const ForwardCache& cache, const Graph& graph, std::span<const NodeId> nodes) {
  SplitScore s;
  std::size_t total = 0, correct = 0;
  double loss = 0.0;
  const std::vector<int> pred = argmax_rows(cache.logits);
  for (NodeId v : nodes) {
    if (!graph.is_labeled(v)) continue;
    ++total;
    if (pred[static_cast<std::size_t>(v)] == graph.label(v)) ++correct;
    loss -= cache.log_probs(v, graph.label(v));
  }
  if (total > 0) {
    s.acc = static_cast<double>(correct) / static_cast<double>(total);
    s.loss = loss / static_cast<double>(total);
  }
  return s;
}

}  // namespace

TrainResult train(const Graph& graph, const Analysis& analysis, const PerturbConfig& perturb_config,
                  const TrainConfig& config) {
  validate(config);
  const NodeId n = graph.num_nodes();
  if (graph.split().train.empty()) throw ConfigError("train: empty train set");
  if (graph.num_classes() < 2) throw ConfigError("train: need at least two classes");

  const bool contrastive = config.mode != TrainMode::kBaseline;
  const PairPolicy policy = effective_pair_policy(config);
  if (contrastive) {
    validate(perturb_config);
    if (analysis.pair_policy != policy) {
      throw ConfigError("train: analysis pairs were built with policy '" +
                        std::string(to_string(analysis.pair_policy)) + "' but mode " +
                        std::string(to_string(config.mode)) + " needs '" +
                        std::string(to_string(policy)) + "'");
    }
    if (analysis.tig.weight.size() != static_cast<std::size_t>(n)) {
      throw ConfigError("train: analysis does not match the graph");
    }
  }

  const GraphInput clean = make_graph_input(graph.adjacency(), graph.features());
  Rng init_rng = make_rng(config.seed, "init");
  GcnModel model;
  model.params = init_gcn(graph.feature_dim(), config.hidden_dim, graph.num_classes(), init_rng);
  AdamState adam;

  const bool uniform_selection = effective_perturb_weighting(config) == PerturbWeighting::kUniform;
  std::vector<double> weights = loss_weights(analysis, config.mode);
  std::vector<double> selection =
      uniform_selection ? std::vector<double>(static_cast<std::size_t>(n), 1.0) : analysis.tig.weight;
  const PairSets* pairs = &analysis.pairs;
  Analysis epoch_analysis;

  TrainResult result;
  SplitScore best{-1.0, std::numeric_limits<double>::infinity()};
  result.params = model.params;
  double lr = config.lr;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (epoch > config.lr_decay_start) lr *= config.lr_decay;
    model.refresh_frozen();

    Rng drop_rng = make_rng(config.seed, "dropout", static_cast<std::uint64_t>(epoch));
    std::optional<Matrix> clean_mask, pert_mask;
    if (config.dropout > 0.0) {
      clean_mask = make_dropout_mask(n, config.hidden_dim, config.dropout, drop_rng);
    }

    ObjectiveInputs inputs;
    inputs.clean = &clean;
    inputs.labels = graph.labels();
    inputs.train_nodes = graph.split().train;
    inputs.clean_mask = clean_mask ? &*clean_mask : nullptr;

    GraphInput perturbed;
    ContrastiveTerms terms;
    if (contrastive) {
      PerturbConfig pc = perturb_config;
      pc.seed = derive_seed(config.seed, "perturb", static_cast<std::uint64_t>(epoch));
      PerturbedGraph pg = perturb(graph, selection, pc);
      perturbed = make_graph_input(pg.adjacency, pg.features);
      if (config.recompute_analysis_per_epoch) {
        const Graph view(pg.adjacency, pg.features, graph.labels(), graph.num_classes(), graph.split());
        epoch_analysis = analyze(view, analysis.config, policy);
        weights = loss_weights(epoch_analysis, config.mode);
        pairs = &epoch_analysis.pairs;
        if (!uniform_selection) selection = epoch_analysis.tig.weight;
      }
      if (config.dropout > 0.0) {
        pert_mask = make_dropout_mask(n, config.hidden_dim, config.dropout, drop_rng);
      }
      terms.perturbed = &perturbed;
      terms.pairs = policy == PairPolicy::kNone ? nullptr : pairs;
      terms.weights = weights;
      terms.mu1 = config.mu1;
      terms.mu2 = config.mu2;
      inputs.perturbed_mask = pert_mask ? &*pert_mask : nullptr;
      inputs.contrastive = &terms;
    }

    ObjectiveValue obj = evaluate_objective(model.params, model.frozen, inputs);
    if (!std::isfinite(obj.total)) {
      std::ostringstream msg;
      msg << "training diverged at epoch " << epoch << " (ce " << obj.ce << ", unsup "
          << obj.unsup_mean << ", lr " << lr << ")";
      throw NumericError(msg.str());
    }
    Matrix* params[] = {&model.params.w0, &model.params.w1};
    const Matrix* grads[] = {&obj.grad.w0, &obj.grad.w1};
    adam_step(params, grads, adam, lr, config.weight_decay);

    const ForwardCache eval = forward(clean, model.params);
    const SplitScore val = score(eval, graph, graph.split().val);
    const SplitScore test = score(eval, graph, graph.split().test);
    result.log.push_back({epoch, lr, obj.ce, obj.unsup_mean, val.acc, test.acc});
    result.epochs_run = epoch;

    const bool improved = std::isnan(val.acc) || val.acc > best.acc ||
                          (val.acc == best.acc && val.loss < best.loss);
    if (improved) {
      best = val;
      result.best_epoch = epoch;
      result.params = model.params;
    }
    if (epoch >= config.min_epochs && epoch - result.best_epoch >= config.patience) break;
  }

  const ForwardCache final_pass = forward(clean, result.params);
  result.predictions = argmax_rows(final_pass.logits);
  result.best_val_acc = best.acc;
  result.test_acc = score(final_pass, graph, graph.split().test).acc;
  return result;
}

}  // namespace tifa

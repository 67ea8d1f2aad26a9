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

#include "tifa/label_prop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tifa {

void validate(const LPConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw ConfigError("LP alpha must lie in (0, 1]");
  }
  if (config.max_iter < 1) throw ConfigError("LP max_iter must be positive");
  if (!(config.tol > 0.0)) throw ConfigError("LP tol must be positive");
}

Matrix initial_labels(const Graph& graph) {
  Matrix z0 = Matrix::Zero(graph.num_nodes(), graph.num_classes());
  for (NodeId v : graph.split().train) z0(v, graph.label(v)) = 1.0;
  return z0;
}

Propagation propagate(const Graph& graph, const LPConfig& config) {
  validate(config);
  if (graph.split().train.empty()) throw ConfigError("label propagation needs a non-empty train set");

  const SparseMatrix a = normalize(graph, NormalizationKind::kColumn).values;
  const Matrix z0 = initial_labels(graph);
  const double damp = 1.0 - config.alpha;

  Propagation out;
  out.z = z0;
  Matrix next(z0.rows(), z0.cols());
  for (int it = 1; it <= config.max_iter; ++it) {
    next.noalias() = damp * (a * out.z);
    next += config.alpha * z0;
    out.residual = (next - out.z).cwiseAbs().maxCoeff();
    out.z.swap(next);
    out.iterations = it;
    if (out.residual < config.tol) return out;
  }
  std::ostringstream msg;
  msg << "label propagation did not converge in " << config.max_iter
      << " iterations (residual " << out.residual << ", tol " << config.tol << ")";
  throw NumericError(msg.str());
}

Prototypes class_prototypes(const Graph& graph) {
  const int k = graph.num_classes();
  Prototypes out;
  out.values = Matrix::Zero(k, graph.feature_dim());
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (NodeId v : graph.split().train) {
    out.values.row(graph.label(v)) += graph.features().row(v);
    ++counts[static_cast<std::size_t>(graph.label(v))];
  }
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) {
      out.values.row(c) /= counts[static_cast<std::size_t>(c)];
    } else {
      out.empty_classes.push_back(c);
      out.warnings.push_back("class " + std::to_string(c) +
                             " has no labeled train nodes; its prototype is zero");
    }
  }
  return out;
}

Matrix adjust_with_prototypes(const Matrix& z, const Matrix& features,
                              const Matrix& prototypes) {
  if (z.rows() != features.rows() || z.cols() != prototypes.rows() ||
      features.cols() != prototypes.cols()) {
    throw ConfigError("adjust_with_prototypes: shape mismatch");
  }
  const Vector x_norm = features.rowwise().norm();
  const Vector p_norm = prototypes.rowwise().norm();
  const Matrix dots = features * prototypes.transpose();
  Matrix out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      const double denom = x_norm(i) * p_norm(c);
      const double cosine = denom > 0.0 ? std::clamp(dots(i, c) / denom, -1.0, 1.0) : 0.0;
      out(i, c) = 0.5 * z(i, c) * (1.0 + cosine);
    }
  }
  return out;
}

LPResult run_label_propagation(const Graph& graph, const LPConfig& config) {
  Propagation prop = propagate(graph, config);
  Prototypes protos = class_prototypes(graph);
  LPResult out;
  out.z_star = adjust_with_prototypes(prop.z, graph.features(), protos.values);
  out.z = std::move(prop.z);
  out.prototypes = std::move(protos.values);
  out.iterations_used = prop.iterations;
  out.warnings = std::move(protos.warnings);
  return out;
}

}  // namespace tifa

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

#include <string>
#include <vector>

#include "tifa/common.hpp"
#include "tifa/graph.hpp"

namespace tifa {

/// Label propagation with restart.
struct LPConfig {
  double alpha = 0.15;  // restart probability, in (0, 1]
  int max_iter = 1000;
  double tol = 1e-8;  // stop when the max-abs update falls below this
};

struct Propagation {
  Matrix z;  // n x k
  int iterations = 0;
  double residual = 0.0;  // max-abs change of the last sweep
};

struct Prototypes {
  Matrix values;  // k x h, row c = mean train feature of class c
  std::vector<int> empty_classes;
  std::vector<std::string> warnings;
};

struct LPResult {
  Matrix z;
  Matrix z_star;
  Matrix prototypes;
  int iterations_used = 0;
  std::vector<std::string> warnings;
};

void validate(const LPConfig& config);

/// One-hot rows for train nodes, zero rows elsewhere (n x k).
Matrix initial_labels(const Graph& graph);

/// Fixed point of Z <- (1 - alpha) A D^-1 Z + alpha Z0, iterated from Z0.
/// Throws ConfigError on an empty train set and NumericError when max_iter
/// sweeps do not bring the update below tol.
Propagation propagate(const Graph& graph, const LPConfig& config);

Prototypes class_prototypes(const Graph& graph);

/// Z*[i,c] = Z[i,c] * (1 + cos(X_i, P_c)) / 2, with cos = 0 when either
/// vector has zero norm.
Matrix adjust_with_prototypes(const Matrix& z, const Matrix& features,
                              const Matrix& prototypes);

/// propagate + class_prototypes + adjust_with_prototypes.
LPResult run_label_propagation(const Graph& graph, const LPConfig& config);

}  // namespace tifa

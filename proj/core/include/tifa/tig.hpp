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

namespace tifa {

struct TigConfig {
  double lambda = 0.1;  // clarity weight
  double w_min = 1.0;
  double w_max = 2.0;
};

/// Per-node topology information gain profile.
struct TigProfile {
  std::vector<double> intensity;
  std::vector<double> clarity;
  std::vector<double> tig;
  std::vector<int> rank;  // ascending TIG, ties by node id
  std::vector<double> weight;
  double lambda = 0.0;
  int k = 0;
};

/// Row maxima of Z*.
std::vector<double> intensity(const Matrix& z_star);

/// max(row) - sum(row). Non-positive for non-negative rows.
std::vector<double> clarity(const Matrix& z_star);

/// T = intensity + lambda / (k - 1) * clarity. Requires k >= 2.
std::vector<double> tig_scores(std::span<const double> intensity,
                               std::span<const double> clarity, double lambda, int k);

/// Position of each value in an ascending stable sort (ties by index).
std::vector<int> rank_ascending(std::span<const double> values);

/// Cosine schedule: w = w_min + (w_max - w_min) * (1 + cos(pi * rank / n)) / 2.
std::vector<double> cl_weights(std::span<const int> rank, int n, double w_min, double w_max);

TigProfile build_tig_profile(const Matrix& z_star, const TigConfig& config);

// ---------------------------------------------------------------------------
// Reports

struct GridCell {
  int intensity_bin = 0;
  int clarity_bin = 0;
  int count = 0;
  int errors = 0;
  bool empty() const { return count == 0; }
  /// NaN for empty cells.
  double error_rate() const;
};

struct GridReport {
  int grid = 0;
  std::vector<GridCell> cells;  // row-major over (intensity_bin, clarity_bin)
  const GridCell& at(int intensity_bin, int clarity_bin) const {
    return cells[static_cast<std::size_t>(intensity_bin * grid + clarity_bin)];
  }
};

/// Error rates over a grid x grid partition of the (intensity, clarity)
/// plane. Both axes are min-max scaled over all nodes of the profile; a
/// constant axis maps to bin 0. Nodes with a kUnlabeled label are skipped.
GridReport grid_report(const TigProfile& profile, std::span<const int> predictions,
                       std::span<const int> labels, int grid);

struct BinAccuracy {
  int count = 0;
  int correct = 0;
  double accuracy() const;  // NaN when empty
};

/// Accuracy per TIG bin, bin 0 holding the highest-TIG nodes. The nodes in
/// `subset` (all labeled nodes when empty) are ordered by descending TIG rank
/// and cut into `bins` equal groups; the last bin absorbs the remainder.
std::vector<BinAccuracy> tig_bin_accuracy(const TigProfile& profile,
                                          std::span<const int> predictions,
                                          std::span<const int> labels, int bins,
                                          std::span<const NodeId> subset = {});

}  // namespace tifa

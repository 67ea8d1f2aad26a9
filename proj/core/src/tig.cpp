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

#include "tifa/tig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace tifa {

std::vector<double> intensity(const Matrix& z_star) {
  std::vector<double> out(static_cast<std::size_t>(z_star.rows()), 0.0);
  if (z_star.cols() == 0) return out;
  for (Eigen::Index i = 0; i < z_star.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = z_star.row(i).maxCoeff();
  }
  return out;
}

std::vector<double> clarity(const Matrix& z_star) {
  std::vector<double> out(static_cast<std::size_t>(z_star.rows()), 0.0);
  if (z_star.cols() == 0) return out;
  for (Eigen::Index i = 0; i < z_star.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = z_star.row(i).maxCoeff() - z_star.row(i).sum();
  }
  return out;
}

std::vector<double> tig_scores(std::span<const double> intensity,
                               std::span<const double> clarity, double lambda, int k) {
  if (k < 2) throw ConfigError("TIG needs at least two classes");
  if (intensity.size() != clarity.size()) throw ConfigError("tig_scores: length mismatch");
  if (!(lambda >= 0.0)) throw ConfigError("TIG lambda must be non-negative");
  const double scale = lambda / static_cast<double>(k - 1);
  std::vector<double> out(intensity.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = intensity[i] + scale * clarity[i];
  return out;
}

std::vector<int> rank_ascending(std::span<const double> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  }
  return rank;
}

std::vector<double> cl_weights(std::span<const int> rank, int n, double w_min, double w_max) {
  if (n <= 0) throw ConfigError("cl_weights: n must be positive");
  if (!(w_max >= w_min)) throw ConfigError("cl_weights: requires w_max >= w_min");
  std::vector<double> out(rank.size());
  const double half_span = 0.5 * (w_max - w_min);
  for (std::size_t i = 0; i < rank.size(); ++i) {
    const double phase = static_cast<double>(rank[i]) / static_cast<double>(n) * std::numbers::pi;
    out[i] = std::clamp(w_min + half_span * (1.0 + std::cos(phase)), w_min, w_max);
  }
  return out;
}

TigProfile build_tig_profile(const Matrix& z_star, const TigConfig& config) {
  TigProfile p;
  p.lambda = config.lambda;
  p.k = static_cast<int>(z_star.cols());
  p.intensity = intensity(z_star);
  p.clarity = clarity(z_star);
  p.tig = tig_scores(p.intensity, p.clarity, config.lambda, p.k);
  p.rank = rank_ascending(p.tig);
  p.weight = cl_weights(p.rank, static_cast<int>(z_star.rows()), config.w_min, config.w_max);
  return p;
}

double GridCell::error_rate() const {
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(errors) / static_cast<double>(count);
}

namespace {

std::vector<int> bin_axis(std::span<const double> values, int bins) {
  std::vector<int> out(values.size(), 0);
  if (values.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, range = *hi_it - *lo_it;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scaled = (values[i] - lo) / range;
    out[i] = std::min(bins - 1, static_cast<int>(scaled * bins));
  }
  return out;
}

void check_lengths(const TigProfile& profile, std::span<const int> predictions,
                   std::span<const int> labels) {
  if (predictions.size() != profile.tig.size() || labels.size() != profile.tig.size()) {
    throw ConfigError("report: predictions/labels must have one entry per node");
  }
}

}  // namespace

GridReport grid_report(const TigProfile& profile, std::span<const int> predictions,
                       std::span<const int> labels, int grid) {
  if (grid < 1) throw ConfigError("grid_report: grid must be >= 1");
  check_lengths(profile, predictions, labels);
  GridReport report;
  report.grid = grid;
  report.cells.resize(static_cast<std::size_t>(grid * grid));
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      auto& cell = report.cells[static_cast<std::size_t>(a * grid + b)];
      cell.intensity_bin = a;
      cell.clarity_bin = b;
    }
  }
  const auto ib = bin_axis(profile.intensity, grid);
  const auto cb = bin_axis(profile.clarity, grid);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kUnlabeled) continue;
    auto& cell = report.cells[static_cast<std::size_t>(ib[i] * grid + cb[i])];
    ++cell.count;
    if (predictions[i] != labels[i]) ++cell.errors;
  }
  return report;
}

double BinAccuracy::accuracy() const {
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(correct) / static_cast<double>(count);
}

std::vector<BinAccuracy> tig_bin_accuracy(const TigProfile& profile,
                                          std::span<const int> predictions,
                                          std::span<const int> labels, int bins,
                                          std::span<const NodeId> subset) {
  if (bins < 1) throw ConfigError("tig_bin_accuracy: bins must be >= 1");
  check_lengths(profile, predictions, labels);
  std::vector<NodeId> nodes;
  if (subset.empty()) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != kUnlabeled) nodes.push_back(static_cast<NodeId>(i));
    }
  } else {
    for (NodeId v : subset) {
      if (labels[static_cast<std::size_t>(v)] != kUnlabeled) nodes.push_back(v);
    }
  }
  std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    return profile.rank[static_cast<std::size_t>(a)] > profile.rank[static_cast<std::size_t>(b)];
  });
  std::vector<BinAccuracy> out(static_cast<std::size_t>(bins));
  const std::size_t per_bin = nodes.size() / static_cast<std::size_t>(bins);
  for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
    const std::size_t b =
        per_bin == 0 ? static_cast<std::size_t>(bins) - 1
                     : std::min(pos / per_bin, static_cast<std::size_t>(bins) - 1);
    const auto v = static_cast<std::size_t>(nodes[pos]);
    ++out[b].count;
    if (predictions[v] == labels[v]) ++out[b].correct;
  }
  return out;
}

}  // namespace tifa

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

#include "tifa/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "tifa/rng.hpp"

namespace tifa {
namespace {

void min_max_scale(std::vector<double>& v) {
  if (v.empty()) return;
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it, range = *hi_it - *lo_it;
  if (!(range > 0.0)) {
    std::fill(v.begin(), v.end(), 0.0);
    return;
  }
  for (double& x : v) x = (x - lo) / range;
}

// k distinct values from [0, n) excluding `skip`, ascending (Floyd's method).
std::vector<NodeId> distinct_sample(NodeId n, NodeId skip, std::size_t k, Rng& rng) {
  // Sample from [0, n - 1) and shift values >= skip up by one.
  const auto m = static_cast<std::size_t>(n - 1);
  std::unordered_set<std::size_t> chosen;
  std::vector<NodeId> out;
  out.reserve(k);
  for (std::size_t j = m - k; j < m; ++j) {
    std::size_t t = uniform_index(rng, j + 1);
    if (!chosen.insert(t).second) {
      chosen.insert(j);
      t = j;
    }
    out.push_back(static_cast<NodeId>(t) >= skip ? static_cast<NodeId>(t) + 1 : static_cast<NodeId>(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t candidate_count(NodeId n, const PairSamplingConfig& s) {
  const auto others = static_cast<std::size_t>(std::max<NodeId>(n - 1, 0));
  if (n > s.full_candidate_limit) return std::min(others, s.pool_size);
  return others;
}

}  // namespace

Matrix softmax_rows(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    if (out.cols() == 0) break;
    auto row = out.row(i);
    row.array() -= row.maxCoeff();
    row = row.array().exp().matrix();
    row /= row.sum();
  }
  return out;
}

Matrix log_softmax_rows(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    if (out.cols() == 0) break;
    auto row = out.row(i);
    const double mx = row.maxCoeff();
    const double lse = mx + std::log((row.array() - mx).exp().sum());
    row.array() -= lse;
  }
  return out;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ConfigError("kl_divergence: length mismatch");
  double kl = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c] > 0.0) kl += p[c] * std::log(p[c] / q[c]);
  }
  return kl;
}

DistanceInputs prepare_distance_inputs(const Graph& graph, const Matrix& z_star) {
  if (z_star.rows() != graph.num_nodes()) {
    throw ConfigError("distance inputs: Z* row count differs from node count");
  }
  DistanceInputs in;
  in.log_probs = log_softmax_rows(z_star);
  in.probs = in.log_probs.array().exp().matrix();
  in.neg_entropy = (in.probs.array() * in.log_probs.array()).rowwise().sum().matrix();
  in.feature_norms = graph.features().rowwise().norm();
  return in;
}

double global_topology_distance(const Matrix& z_star, NodeId i, NodeId j) {
  const Matrix lp = log_softmax_rows(Matrix(z_star.row(i)));
  const Matrix lq = log_softmax_rows(Matrix(z_star.row(j)));
  const double kl = (lp.array().exp() * (lp.array() - lq.array())).sum();
  return std::max(0.0, kl);
}

double global_topology_distance(const DistanceInputs& in, NodeId i, NodeId j) {
  const double kl = in.neg_entropy(i) - in.probs.row(i).dot(in.log_probs.row(j));
  return std::max(0.0, kl);
}

double local_topology_distance(const Graph& graph, NodeId i, NodeId j, int hop_cap) {
  if (j < 0 || j >= graph.num_nodes()) throw ConfigError("local_topology_distance: bad node id");
  return static_cast<double>(bfs_hops(graph, i, hop_cap)[static_cast<std::size_t>(j)]);
}

double embedding_distance(const Matrix& features, NodeId i, NodeId j) {
  const double denom = features.row(i).norm() * features.row(j).norm();
  const double cosine = denom > 0.0 ? features.row(i).dot(features.row(j)) / denom : 0.0;
  return 1.0 - std::clamp(cosine, -1.0, 1.0);
}

std::vector<double> relative_distance_row(const Graph& graph, const DistanceInputs& in,
                                          NodeId anchor, std::span<const NodeId> candidates,
                                          const DistanceConfig& config) {
  if (candidates.empty()) throw ConfigError("relative_distance_row: empty candidate set");
  if (config.hop_cap < 1) throw ConfigError("hop_cap must be >= 1");
  if (config.lambda1 < 0.0 || config.lambda2 < 0.0) throw ConfigError("lambda1/lambda2 must be >= 0");

  const std::size_t m = candidates.size();
  std::vector<double> dg(m), dl(m), de(m);
  const std::vector<int> hops = bfs_hops(graph, anchor, config.hop_cap);
  const auto x_anchor = graph.features().row(anchor);
  const double anchor_norm = in.feature_norms(anchor);
  const auto p_anchor = in.probs.row(anchor);
  const double h_anchor = in.neg_entropy(anchor);
  for (std::size_t t = 0; t < m; ++t) {
    const NodeId j = candidates[t];
    dg[t] = std::max(0.0, h_anchor - p_anchor.dot(in.log_probs.row(j)));
    dl[t] = static_cast<double>(hops[static_cast<std::size_t>(j)]);
    const double denom = anchor_norm * in.feature_norms(j);
    const double cosine =
        denom > 0.0 ? std::clamp(x_anchor.dot(graph.features().row(j)) / denom, -1.0, 1.0) : 0.0;
    de[t] = 1.0 - cosine;
  }
  min_max_scale(dg);
  min_max_scale(dl);
  min_max_scale(de);
  std::vector<double> out(m);
  for (std::size_t t = 0; t < m; ++t) {
    out[t] = dg[t] + config.lambda1 * dl[t] + config.lambda2 * de[t];
  }
  return out;
}

PairWindow resolve_window(const PairWindow& window, std::size_t candidates) {
  PairWindow w = window;
  const auto m = static_cast<long long>(candidates);
  if (w.negt_beg < 0) w.negt_beg = static_cast<int>(std::max<long long>(w.post_end, m / 4));
  if (w.negt_end < 0) w.negt_end = static_cast<int>(std::min<long long>(m, w.negt_beg + 128LL));
  if (!(w.post_end > 0 && w.post_end <= w.negt_beg && w.negt_beg < w.negt_end &&
        w.negt_end <= m)) {
    throw ConfigError("pair window must satisfy 0 < post_end <= negt_beg < negt_end <= " +
                      std::to_string(m) + " (got " + std::to_string(w.post_end) + ", " +
                      std::to_string(w.negt_beg) + ", " + std::to_string(w.negt_end) + ")");
  }
  return w;
}

PairSets sample_pairs(const Graph& graph, const DistanceInputs& in,
                      const DistanceConfig& config, const PairSamplingConfig& sampling) {
  const NodeId n = graph.num_nodes();
  const std::size_t m = candidate_count(n, sampling);
  const PairWindow w = resolve_window(sampling.window, m);
  const bool pooled = m < static_cast<std::size_t>(n - 1);

  PairSets out;
  out.post_end = w.post_end;
  out.negt_beg = w.negt_beg;
  out.negt_end = w.negt_end;
  out.positives.resize(static_cast<std::size_t>(n));
  out.negatives.resize(static_cast<std::size_t>(n));

  std::vector<NodeId> candidates;
  std::vector<std::size_t> order;
  for (NodeId i = 0; i < n; ++i) {
    if (pooled) {
      Rng rng = make_rng(sampling.seed, "pairs_pool", static_cast<std::uint64_t>(i));
      candidates = distinct_sample(n, i, m, rng);
    } else {
      candidates.clear();
      for (NodeId j = 0; j < n; ++j) {
        if (j != i) candidates.push_back(j);
      }
    }
    const std::vector<double> d = relative_distance_row(graph, in, i, candidates, config);
    order.resize(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // candidates are ascending, so index order doubles as node-id order.
    std::partial_sort(order.begin(), order.begin() + w.negt_end, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return d[a] < d[b] || (d[a] == d[b] && a < b);
                      });
    auto& pos = out.positives[static_cast<std::size_t>(i)];
    auto& neg = out.negatives[static_cast<std::size_t>(i)];
    for (int r = 0; r < w.post_end; ++r) pos.push_back(candidates[order[static_cast<std::size_t>(r)]]);
    for (int r = w.negt_beg; r < w.negt_end; ++r) neg.push_back(candidates[order[static_cast<std::size_t>(r)]]);
  }
  return out;
}

PairSets sample_pairs_uniform(NodeId n, const PairSamplingConfig& sampling) {
  const std::size_t m = candidate_count(n, sampling);
  const PairWindow w = resolve_window(sampling.window, m);
  PairSets out;
  out.post_end = w.post_end;
  out.negt_beg = w.negt_beg;
  out.negt_end = w.negt_end;
  out.positives.resize(static_cast<std::size_t>(n));
  out.negatives.resize(static_cast<std::size_t>(n));
  const auto n_pos = static_cast<std::size_t>(w.post_end);
  const auto n_neg = static_cast<std::size_t>(w.negt_end - w.negt_beg);
  for (NodeId i = 0; i < n; ++i) {
    Rng rng = make_rng(sampling.seed, "pairs_uniform", static_cast<std::uint64_t>(i));
    std::vector<NodeId> drawn = distinct_sample(n, i, n_pos + n_neg, rng);
    std::shuffle(drawn.begin(), drawn.end(), rng);
    auto& pos = out.positives[static_cast<std::size_t>(i)];
    auto& neg = out.negatives[static_cast<std::size_t>(i)];
    pos.assign(drawn.begin(), drawn.begin() + static_cast<std::ptrdiff_t>(n_pos));
    neg.assign(drawn.begin() + static_cast<std::ptrdiff_t>(n_pos), drawn.end());
  }
  return out;
}

double RatioBin::ratio() const {
  return pairs == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(same_class) / static_cast<double>(pairs);
}

std::vector<RatioBin> intra_class_ratio_bins(const Graph& graph, const DistanceInputs& in,
                                             int bins, PairScope scope) {
  if (bins < 1) throw ConfigError("intra_class_ratio_bins: bins must be >= 1");
  struct PairEntry {
    float distance;
    bool same;
  };
  std::vector<PairEntry> pairs;
  const NodeId n = graph.num_nodes();
  auto add = [&](NodeId i, NodeId j) {
    if (!graph.is_labeled(i) || !graph.is_labeled(j)) return;
    pairs.push_back({static_cast<float>(global_topology_distance(in, i, j)),
                     graph.label(i) == graph.label(j)});
  };
  for (NodeId i = 0; i < n; ++i) {
    if (scope == PairScope::kNeighbors) {
      for (NodeId j : graph.neighbors(i)) add(i, j);
    } else {
      for (NodeId j = 0; j < n; ++j) {
        if (j != i) add(i, j);
      }
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const PairEntry& a, const PairEntry& b) { return a.distance < b.distance; });
  std::vector<RatioBin> out(static_cast<std::size_t>(bins));
  const std::size_t per_bin = pairs.size() / static_cast<std::size_t>(bins);
  for (std::size_t pos = 0; pos < pairs.size(); ++pos) {
    const std::size_t b =
        per_bin == 0 ? static_cast<std::size_t>(bins) - 1
                     : std::min(pos / per_bin, static_cast<std::size_t>(bins) - 1);
    ++out[b].pairs;
    if (pairs[pos].same) ++out[b].same_class;
  }
  return out;
}

}  // namespace tifa

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

#include <algorithm>
#include <string>

#include "tifa/graph.hpp"

namespace tifa {

Adjacency Adjacency::from_edges(NodeId num_nodes, std::span<const Edge> edges) {
  if (num_nodes < 0) throw DataError("negative node count");
  std::vector<std::vector<NodeId>> lists(static_cast<std::size_t>(num_nodes));
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes) {
      throw DataError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") references a node outside [0, " + std::to_string(num_nodes) + ")");
    }
    if (e.u == e.v) continue;
    lists[static_cast<std::size_t>(e.u)].push_back(e.v);
    lists[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<std::size_t> offsets{0};
  offsets.reserve(lists.size() + 1);
  std::vector<NodeId> indices;
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    indices.insert(indices.end(), list.begin(), list.end());
    offsets.push_back(indices.size());
  }
  return Adjacency(std::move(offsets), std::move(indices));
}

Adjacency Adjacency::from_lists(const std::vector<std::vector<NodeId>>& lists) {
  const auto n = static_cast<NodeId>(lists.size());
  std::vector<std::size_t> offsets{0};
  offsets.reserve(lists.size() + 1);
  std::vector<NodeId> indices;
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> list = lists[static_cast<std::size_t>(v)];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (NodeId u : list) {
      if (u < 0 || u >= n) throw DataError("neighbor id out of range");
      if (u == v) throw DataError("self-loop at node " + std::to_string(v));
    }
    indices.insert(indices.end(), list.begin(), list.end());
    offsets.push_back(indices.size());
  }
  Adjacency adj(std::move(offsets), std::move(indices));
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : adj.neighbors(v)) {
      if (!adj.has_edge(u, v)) {
        throw DataError("adjacency lists are not symmetric at (" + std::to_string(v) +
                        ", " + std::to_string(u) + ")");
      }
    }
  }
  return adj;
}

bool Adjacency::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Adjacency::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph::Graph(Adjacency adjacency, Matrix features, std::vector<int> labels,
             int num_classes, Split split)
    : adjacency_(std::move(adjacency)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      split_(std::move(split)) {
  const NodeId n = adjacency_.num_nodes();
  const auto un = static_cast<std::size_t>(n);
  if (features_.rows() != n) {
    throw DataError("feature matrix has " + std::to_string(features_.rows()) +
                    " rows but the graph has " + std::to_string(n) + " nodes");
  }
  if (labels_.empty()) labels_.assign(un, kUnlabeled);
  if (labels_.size() != un) {
    throw DataError("label vector length " + std::to_string(labels_.size()) +
                    " does not match node count " + std::to_string(n));
  }
  if (num_classes_ < 0) throw DataError("negative class count");
  for (std::size_t i = 0; i < un; ++i) {
    const int y = labels_[i];
    if (y != kUnlabeled && (y < 0 || y >= num_classes_)) {
      throw DataError("label out of range: node " + std::to_string(i) + " has label " +
                      std::to_string(y) + " but k = " + std::to_string(num_classes_));
    }
  }

  roles_.assign(un, SplitRole::kNone);
  auto assign = [&](std::vector<NodeId>& ids, SplitRole role, const char* name) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      throw DataError(std::string("duplicate node id in ") + name + " split");
    }
    for (NodeId v : ids) {
      if (v < 0 || v >= n) {
        throw DataError(std::string(name) + " split references node " + std::to_string(v) +
                        " outside [0, " + std::to_string(n) + ")");
      }
      auto& slot = roles_[static_cast<std::size_t>(v)];
      if (slot != SplitRole::kNone) {
        throw DataError("overlapping masks: node " + std::to_string(v) +
                        " appears in more than one split");
      }
      slot = role;
    }
  };
  assign(split_.train, SplitRole::kTrain, "train");
  assign(split_.val, SplitRole::kVal, "val");
  assign(split_.test, SplitRole::kTest, "test");
  for (NodeId v : split_.train) {
    if (!is_labeled(v)) {
      throw DataError("train node " + std::to_string(v) + " has no label");
    }
  }
}

}  // namespace tifa

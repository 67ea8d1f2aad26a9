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

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "tifa/graph.hpp"

namespace tifa {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing file: " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  return out;
}

std::string where(const fs::path& path, std::size_t line) {
  return path.filename().string() + ":" + std::to_string(line);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

// Splits on tabs, returning parsed values via `parse` per field.
template <typename T>
std::vector<T> parse_fields(std::string_view line, const fs::path& path, std::size_t lineno) {
  std::vector<T> out;
  while (true) {
    const auto tab = line.find('\t');
    const std::string_view field = trim(line.substr(0, tab));
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw DataError(where(path, lineno) + ": cannot parse '" + std::string(field) + "'");
    }
    out.push_back(value);
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return out;
}

json read_json(const fs::path& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.filename().string() + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

Graph load_graph(const fs::path& dir) {
  const json meta = read_json(dir / "meta.json");
  long long n = 0, h = 0, k = 0;
  try {
    n = meta.at("n").get<long long>();
    h = meta.at("h").get<long long>();
    k = meta.at("k").get<long long>();
  } catch (const json::exception& e) {
    throw DataError(std::string("meta.json: ") + e.what());
  }
  if (n < 0 || h < 1 || k < 0) throw DataError("meta.json: need n >= 0, h >= 1, k >= 0");
  const auto nn = static_cast<NodeId>(n);

  std::vector<Edge> edges;
  {
    const fs::path path = dir / "edges.tsv";
    auto in = open_input(path);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      if (trim(line).empty()) continue;
      const auto f = parse_fields<long long>(line, path, lineno);
      if (f.size() != 2) throw DataError(where(path, lineno) + ": expected 2 fields");
      if (f[0] < 0 || f[1] < 0 || f[0] >= n || f[1] >= n) {
        throw DataError(where(path, lineno) + ": node id outside [0, n) with n = " +
                        std::to_string(n));
      }
      edges.push_back({static_cast<NodeId>(f[0]), static_cast<NodeId>(f[1])});
    }
  }

  Matrix features(nn, h);
  {
    const fs::path path = dir / "features.tsv";
    auto in = open_input(path);
    std::string line;
    NodeId row = 0;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      if (trim(line).empty()) continue;
      if (row >= nn) throw DataError("features.tsv has more than n = " + std::to_string(n) + " rows");
      const auto f = parse_fields<double>(line, path, lineno);
      if (static_cast<long long>(f.size()) != h) {
        throw DataError(where(path, lineno) + ": expected h = " + std::to_string(h) +
                        " values, found " + std::to_string(f.size()));
      }
      for (long long c = 0; c < h; ++c) features(row, c) = f[static_cast<std::size_t>(c)];
      ++row;
    }
    if (row != nn) {
      throw DataError("features.tsv has " + std::to_string(row) + " rows but n = " +
                      std::to_string(n));
    }
  }

  std::vector<int> labels(static_cast<std::size_t>(n), kUnlabeled);
  {
    const fs::path path = dir / "labels.tsv";
    auto in = open_input(path);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      if (trim(line).empty()) continue;
      const auto f = parse_fields<long long>(line, path, lineno);
      if (f.size() != 2) throw DataError(where(path, lineno) + ": expected 2 fields");
      if (f[0] < 0 || f[0] >= n) {
        throw DataError(where(path, lineno) + ": node id outside [0, n)");
      }
      if (f[1] < 0 || f[1] >= k) {
        throw DataError(where(path, lineno) + ": label out of range (" + std::to_string(f[1]) +
                        " with k = " + std::to_string(k) + ")");
      }
      labels[static_cast<std::size_t>(f[0])] = static_cast<int>(f[1]);
    }
  }

  Split split;
  {
    const json s = read_json(dir / "split.json");
    auto ids = [&](const char* key) {
      std::vector<NodeId> out;
      if (!s.contains(key)) return out;
      for (const auto& v : s.at(key)) {
        if (!v.is_number_integer()) throw DataError(std::string("split.json: non-integer id in ") + key);
        const auto id = v.get<long long>();
        if (id < 0 || id >= n) throw DataError(std::string("split.json: id outside [0, n) in ") + key);
        out.push_back(static_cast<NodeId>(id));
      }
      return out;
    };
    split.train = ids("train");
    split.val = ids("val");
    split.test = ids("test");
  }

  return Graph(Adjacency::from_edges(nn, edges), std::move(features), std::move(labels),
               static_cast<int>(k), std::move(split));
}

void save_graph(const Graph& graph, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir.string() + ": " + ec.message());

  open_output(dir / "meta.json") << json{{"n", graph.num_nodes()},
                                         {"h", graph.feature_dim()},
                                         {"k", graph.num_classes()}}.dump()
                                 << '\n';
  {
    auto out = open_output(dir / "edges.tsv");
    for (const Edge& e : graph.adjacency().edge_list()) out << e.u << '\t' << e.v << '\n';
  }
  {
    auto out = open_output(dir / "features.tsv");
    const Matrix& x = graph.features();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        if (c) out << '\t';
        out << format_double(x(i, c));
      }
      out << '\n';
    }
  }
  {
    auto out = open_output(dir / "labels.tsv");
    for (NodeId v = 0; v < graph.num_nodes(); ++v) {
      if (graph.is_labeled(v)) out << v << '\t' << graph.label(v) << '\n';
    }
  }
  open_output(dir / "split.json") << json{{"train", graph.split().train},
                                          {"val", graph.split().val},
                                          {"test", graph.split().test}}.dump()
                                  << '\n';
}

}  // namespace tifa

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


#ifndef TIFA_BENCHMARKS_BENCH_GRAPHS_HPP_
#define TIFA_BENCHMARKS_BENCH_GRAPHS_HPP_

#include <cstdint>

#include "tifa/graph.hpp"

namespace tifa::bench {

// Sparse four-class SBM with average degree near 8 for any size.
inline Graph sbm(std::int64_t nodes, std::uint64_t seed = 7) {
  SbmParams p;
  p.classes = 4;
  p.per_class = static_cast<int>(nodes / 4);
  p.p_in = 6.0 / static_cast<double>(p.per_class);
  p.p_out = 2.0 / static_cast<double>(3 * p.per_class);
  p.feature_noise = 1.0;
  p.labels_per_class = 20;
  return synth_sbm(p, seed);
}

}  // namespace tifa::bench

#endif  // TIFA_BENCHMARKS_BENCH_GRAPHS_HPP_

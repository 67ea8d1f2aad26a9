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


#include <benchmark/benchmark.h>

#include "bench_graphs.hpp"
#include "tifa/distance.hpp"
#include "tifa/label_prop.hpp"
#include "tifa/tig.hpp"

namespace tifa {
namespace {

void BM_LabelPropagation(benchmark::State& state) {
  const Graph g = bench::sbm(state.range(0));
  for (auto _ : state) {
    LPResult r = run_label_propagation(g, LPConfig{});
    benchmark::DoNotOptimize(r.z_star.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LabelPropagation)->Arg(400)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_TigProfile(benchmark::State& state) {
  const Graph g = bench::sbm(state.range(0));
  const Matrix z = run_label_propagation(g, LPConfig{}).z_star;
  for (auto _ : state) {
    TigProfile p = build_tig_profile(z, TigConfig{});
    benchmark::DoNotOptimize(p.weight.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TigProfile)->Arg(2000)->Arg(8000)->Unit(benchmark::kMicrosecond);

void BM_SamplePairs(benchmark::State& state) {
  const Graph g = bench::sbm(state.range(0));
  const DistanceInputs in =
      prepare_distance_inputs(g, run_label_propagation(g, LPConfig{}).z_star);
  PairSamplingConfig sampling;
  sampling.seed = 3;
  for (auto _ : state) {
    PairSets s = sample_pairs(g, in, DistanceConfig{}, sampling);
    benchmark::DoNotOptimize(s.positives.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePairs)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tifa

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

#include <gtest/gtest.h>

#include <set>

#include "tifa/rng.hpp"

namespace tifa {
namespace {

TEST(Rng, DerivedSeedsAreStableAndSeparated) {
  EXPECT_EQ(derive_seed(1, "perturb", 3), derive_seed(1, "perturb", 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t root : {0ull, 1ull, 2ull}) {
    for (const char* stream : {"lp", "perturb", "sampler", "init", "dropout"}) {
      for (std::uint64_t i = 0; i < 4; ++i) seen.insert(derive_seed(root, stream, i));
    }
  }
  EXPECT_EQ(seen.size(), 3u * 5u * 4u);
}

TEST(Rng, Uniform01StaysInHalfOpenUnitInterval) {
  Rng rng = make_rng(5, "test");
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean of 1e5 uniforms has std 0.0009.
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

}  // namespace
}  // namespace tifa

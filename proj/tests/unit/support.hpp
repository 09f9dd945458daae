// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Shared helpers for the unit tests: a tiny property runner and small
// hand-built instances.

#ifndef RATSP_TESTS_SUPPORT_HPP_
#define RATSP_TESTS_SUPPORT_HPP_

#include <gtest/gtest.h>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ratsp/env.hpp"
#include "ratsp/graph.hpp"
#include "ratsp/instance.hpp"
#include "ratsp/random.hpp"

namespace ratsp::testing {

// Runs `body` on `cases` seeded generators. A failure message carries the
// case index and its seed so the input can be replayed.
inline void for_each_case(int cases, std::uint64_t seed,
                          const std::function<void(SplitMix64&, int)>& body) {
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t s = hash_words({seed, static_cast<std::uint64_t>(i)});
    SCOPED_TRACE("property case " + std::to_string(i) + " seed " + std::to_string(s));
    SplitMix64 rng(s);
    body(rng, i);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

inline double uniform(SplitMix64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(SplitMix64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Small instance on a 30 x 30 map so the oracles stay cheap.
inline Instance small_instance(int n, std::uint64_t seed, double radius = 2.0,
                               double v_r = 0.1, double v_c = 0.1) {
  InstanceSpec spec;
  spec.width = 30;
  spec.height = 30;
  spec.blobs = 3;
  spec.params.sensing_radius = radius;
  spec.params.reward_var_coeff = v_r;
  spec.params.cost_var_coeff = v_c;
  return random_instance(n, seed, spec);
}

}  // namespace ratsp::testing

#endif  // RATSP_TESTS_SUPPORT_HPP_

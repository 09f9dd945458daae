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


// Seeded random instances: a blob map, uniformly scattered sites, and the
// graph built over them. Presets mirror the two simulation setups.

#ifndef RATSP_INSTANCE_HPP_
#define RATSP_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ratsp/env.hpp"
#include "ratsp/graph.hpp"

namespace ratsp {

struct InstanceSpec {
  int width = 100;
  int height = 100;
  int blobs = 4;
  double cell_size = 1.0;
  double jitter = 0.0;
  GraphParams params;
};

struct Instance {
  InfoMap map;
  std::vector<Point2D> sites;
  StochasticGraph graph;
};

// 100 x 100, R = 2.
InstanceSpec paper_spec();
// 500 x 500, R = 1.
InstanceSpec scalability_spec();
// "paper" or "scalability"; throws std::invalid_argument otherwise.
InstanceSpec preset_spec(const std::string& name);
inline constexpr int kPaperSites = 8;
inline constexpr int kScalabilitySites = 20;

// Sites uniform over the map extent, at least one cell apart.
std::vector<Point2D> random_sites(int count, const InfoMap& map,
                                  std::uint64_t seed);

InfoMap random_map(const InstanceSpec& spec, std::uint64_t seed);
Instance random_instance(int num_sites, std::uint64_t seed,
                         const InstanceSpec& spec = {});

}  // namespace ratsp

#endif  // RATSP_INSTANCE_HPP_

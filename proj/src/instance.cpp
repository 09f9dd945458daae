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


#include "ratsp/instance.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ratsp/random.hpp"

namespace ratsp {

InstanceSpec paper_spec() { return InstanceSpec{}; }

InstanceSpec scalability_spec() {
  InstanceSpec spec;
  spec.width = 500;
  spec.height = 500;
  spec.blobs = 8;
  spec.params.sensing_radius = 1.0;
  return spec;
}

InstanceSpec preset_spec(const std::string& name) {
  if (name == "paper") return paper_spec();
  if (name == "scalability") return scalability_spec();
  throw std::invalid_argument("unknown preset \"" + name +
                              "\" (expected paper or scalability)");
}

std::vector<Point2D> random_sites(int count, const InfoMap& map,
                                  std::uint64_t seed) {
  if (count < 3) throw std::invalid_argument("need at least 3 sites");
  const double ex = map.extent_x();
  const double ey = map.extent_y();
  const double min_gap = map.cell_size();
  if (static_cast<double>(count) > 0.25 * (ex / min_gap) * (ey / min_gap)) {
    throw std::invalid_argument("map too small for " + std::to_string(count) +
                                " sites");
  }
  SplitMix64 engine(hash_words({seed, 0x5173ULL}));
  std::uniform_real_distribution<double> ux(0.0, ex);
  std::uniform_real_distribution<double> uy(0.0, ey);
  std::vector<Point2D> sites;
  while (static_cast<int>(sites.size()) < count) {
    const Point2D p{ux(engine), uy(engine)};
    bool close = false;
    for (const Point2D& q : sites) {
      if (std::hypot(p.x - q.x, p.y - q.y) < min_gap) close = true;
    }
    if (!close) sites.push_back(p);
  }
  return sites;
}

InfoMap random_map(const InstanceSpec& spec, std::uint64_t seed) {
  const auto blobs = random_blobs(spec.blobs, spec.width, spec.height,
                                  hash_words({seed, 0x3a9ULL}), spec.cell_size);
  MapOptions options;
  options.cell_size = spec.cell_size;
  options.jitter = spec.jitter;
  return generate_map(spec.width, spec.height, blobs, seed, options);
}

Instance random_instance(int num_sites, std::uint64_t seed,
                         const InstanceSpec& spec) {
  InfoMap map = random_map(spec, seed);
  auto sites = random_sites(num_sites, map, seed);
  StochasticGraph graph = build_graph(map, sites, spec.params);
  return Instance{std::move(map), std::move(sites), std::move(graph)};
}

}  // namespace ratsp

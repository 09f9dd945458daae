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

// Complete stochastic graph over the sites of interest.
//
// Every unordered vertex pair is an edge. An edge's reward is a coverage
// quantity: the sum of per-cell mean rewards over the cells it senses, where
// the cells are shared across edges through one graph-wide cell table. Edge
// costs are proportional to length and bounded by the cost cap C.

#ifndef RATSP_GRAPH_HPP_
#define RATSP_GRAPH_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ratsp/env.hpp"

namespace ratsp {

struct EdgeModel {
  int u = 0;  // u < v
  int v = 0;
  // Indices into StochasticGraph::cells(), ascending.
  std::vector<int> sensed;
  double reward_mean = 0.0;
  double cost_mean = 0.0;
  double length = 0.0;
};

struct GraphStats {
  int max_points_per_edge = 0;
  double max_edge_length = 0.0;
  double reward_scale = 1.0;
  double cost_scale = 1.0;
};

struct EdgeVariance {
  double reward_var = 0.0;
  double cost_var = 0.0;
};

struct GraphParams {
  double sensing_radius = 2.0;
  double reward_var_coeff = 0.1;
  double cost_var_coeff = 0.1;
  bool normalize = true;
};

// Rescaled maximum of the reward and cost families under normalization.
inline constexpr double kNormalizedMax = 10.0;

class StochasticGraph {
 public:
  // Assembles a graph from explicit parts and checks every invariant.
  // `edges` must list all pairs in lexicographic (u, v) order; `cell_means`
  // is parallel to `cells`. Each edge's reward_mean must agree with the sum
  // of its cells' means to 1e-9 relative.
  StochasticGraph(std::vector<Point2D> vertices, std::vector<EdgeModel> edges,
                  std::vector<CellId> cells, std::vector<double> cell_means,
                  double cost_cap, double reward_var_coeff,
                  double cost_var_coeff, double sensing_radius,
                  double reward_scale = 1.0, double cost_scale = 1.0);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }

  std::span<const Point2D> vertices() const { return vertices_; }
  std::span<const EdgeModel> edges() const { return edges_; }
  const EdgeModel& edge(int e) const;
  // Order-insensitive: edge_index(u, v) == edge_index(v, u).
  int edge_index(int u, int v) const;

  std::span<const CellId> cells() const { return cells_; }
  std::span<const double> cell_means() const { return cell_means_; }
  // Edges whose sensed set contains the given cell index.
  std::span<const int> edges_sensing(int cell) const;
  std::vector<CellId> sensed_cells(int e) const;

  double cost_cap() const { return cost_cap_; }
  double reward_var_coeff() const { return reward_var_coeff_; }
  double cost_var_coeff() const { return cost_var_coeff_; }
  double sensing_radius() const { return sensing_radius_; }
  const GraphStats& stats() const { return stats_; }

  // Stable 64-bit digest of the numeric content; identifies the graph a
  // noise panel was drawn for.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<Point2D> vertices_;
  std::vector<EdgeModel> edges_;
  std::vector<CellId> cells_;
  std::vector<double> cell_means_;
  std::vector<int> cell_edge_offsets_;
  std::vector<int> cell_edge_list_;
  double cost_cap_;
  double reward_var_coeff_;
  double cost_var_coeff_;
  double sensing_radius_;
  GraphStats stats_;
  std::uint64_t fingerprint_ = 0;
};

StochasticGraph build_graph(const InfoMap& map, std::span<const Point2D> sites,
                            const GraphParams& params = {});

// reward_var = v_r * r(e), cost_var = v_c * (C - c(e)).
EdgeVariance edge_variances(const StochasticGraph& graph, int e);

inline int num_complete_edges(int n) { return n * (n - 1) / 2; }

}  // namespace ratsp

#endif  // RATSP_GRAPH_HPP_

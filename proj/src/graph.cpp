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

#include "ratsp/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ratsp/random.hpp"

namespace ratsp {
namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

std::string edge_name(int u, int v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

StochasticGraph::StochasticGraph(std::vector<Point2D> vertices,
                                 std::vector<EdgeModel> edges,
                                 std::vector<CellId> cells,
                                 std::vector<double> cell_means,
                                 double cost_cap, double reward_var_coeff,
                                 double cost_var_coeff, double sensing_radius,
                                 double reward_scale, double cost_scale)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      cells_(std::move(cells)),
      cell_means_(std::move(cell_means)),
      cost_cap_(cost_cap),
      reward_var_coeff_(reward_var_coeff),
      cost_var_coeff_(cost_var_coeff),
      sensing_radius_(sensing_radius) {
  const int n = num_vertices();
  if (n < 3) throw std::invalid_argument("graph needs at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y)) {
      throw std::invalid_argument("vertex coordinates must be finite");
    }
    for (int j = 0; j < i; ++j) {
      if (vertices_[i] == vertices_[j]) {
        throw std::invalid_argument("duplicate sites " + edge_name(j, i));
      }
    }
  }
  if (!(cost_cap_ > 0.0) || !std::isfinite(cost_cap_)) {
    throw std::invalid_argument("cost_cap must be positive");
  }
  if (!(reward_var_coeff_ >= 0.0) || !(cost_var_coeff_ >= 0.0)) {
    throw std::invalid_argument("variance coefficients must be >= 0");
  }
  if (!(sensing_radius_ > 0.0)) {
    throw std::invalid_argument("sensing radius must be positive");
  }
  if (static_cast<int>(edges_.size()) != num_complete_edges(n)) {
    throw std::invalid_argument("complete graph on " + std::to_string(n) +
                                " vertices needs " +
                                std::to_string(num_complete_edges(n)) +
                                " edges, got " + std::to_string(edges_.size()));
  }
  if (cells_.size() != cell_means_.size()) {
    throw std::invalid_argument("cell table and cell means differ in size");
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (c > 0 && !(cells_[c - 1] < cells_[c])) {
      throw std::invalid_argument("cell table must be sorted and unique");
    }
    if (!(cell_means_[c] >= 0.0) || !std::isfinite(cell_means_[c])) {
      throw std::invalid_argument("cell means must be finite and >= 0");
    }
  }

  const int num_cells = this->num_cells();
  std::vector<int> counts(num_cells, 0);
  int e = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++e) {
      EdgeModel& m = edges_[e];
      if (m.u != u || m.v != v) {
        throw std::invalid_argument("edge " + std::to_string(e) +
                                    " should be " + edge_name(u, v) +
                                    ", got " + edge_name(m.u, m.v));
      }
      if (!(m.cost_mean > 0.0) || m.cost_mean > cost_cap_) {
        throw std::invalid_argument("edge " + edge_name(u, v) +
                                    " cost_mean outside (0, cost_cap]");
      }
      if (!(m.reward_mean >= 0.0) || !std::isfinite(m.reward_mean)) {
        throw std::invalid_argument("edge " + edge_name(u, v) +
                                    " reward_mean must be >= 0");
      }
      double sum = 0.0;
      for (std::size_t k = 0; k < m.sensed.size(); ++k) {
        const int c = m.sensed[k];
        if (c < 0 || c >= num_cells || (k > 0 && m.sensed[k - 1] >= c)) {
          throw std::invalid_argument("edge " + edge_name(u, v) +
                                      " has an invalid sensed-cell list");
        }
        sum += cell_means_[c];
        ++counts[c];
      }
      if (std::abs(sum - m.reward_mean) >
          1e-9 * std::max(1.0, std::abs(m.reward_mean))) {
        throw std::invalid_argument("edge " + edge_name(u, v) +
                                    " reward_mean disagrees with its cells");
      }
      if (m.length <= 0.0) {
        const Point2D a = vertices_[u];
        const Point2D b = vertices_[v];
        m.length = std::hypot(b.x - a.x, b.y - a.y);
      }
    }
  }

  cell_edge_offsets_.assign(num_cells + 1, 0);
  for (int c = 0; c < num_cells; ++c) {
    cell_edge_offsets_[c + 1] = cell_edge_offsets_[c] + counts[c];
  }
  cell_edge_list_.assign(cell_edge_offsets_.back(), 0);
  std::vector<int> fill(cell_edge_offsets_.begin(), cell_edge_offsets_.end() - 1);
  for (int id = 0; id < num_edges(); ++id) {
    for (int c : edges_[id].sensed) cell_edge_list_[fill[c]++] = id;
  }

  stats_.reward_scale = reward_scale;
  stats_.cost_scale = cost_scale;
  for (const EdgeModel& m : edges_) {
    stats_.max_points_per_edge =
        std::max(stats_.max_points_per_edge, static_cast<int>(m.sensed.size()));
    stats_.max_edge_length = std::max(stats_.max_edge_length, m.length);
  }

  std::uint64_t h = hash_words({static_cast<std::uint64_t>(n), bits(cost_cap_),
                                bits(reward_var_coeff_), bits(cost_var_coeff_)});
  for (const Point2D& p : vertices_) h = hash_words({h, bits(p.x), bits(p.y)});
  for (const EdgeModel& m : edges_) {
    h = hash_words({h, bits(m.reward_mean), bits(m.cost_mean), m.sensed.size()});
    for (int c : m.sensed) h = hash_words({h, static_cast<std::uint64_t>(c)});
  }
  for (int c = 0; c < num_cells; ++c) {
    h = hash_words({h, static_cast<std::uint64_t>(cells_[c].col),
                    static_cast<std::uint64_t>(cells_[c].row),
                    bits(cell_means_[c])});
  }
  fingerprint_ = h;
}

const EdgeModel& StochasticGraph::edge(int e) const {
  if (e < 0 || e >= num_edges()) {
    throw std::out_of_range("edge index " + std::to_string(e) + " out of range");
  }
  return edges_[e];
}

int StochasticGraph::edge_index(int u, int v) const {
  const int n = num_vertices();
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
    throw std::out_of_range("no edge " + edge_name(u, v));
  }
  if (u > v) std::swap(u, v);
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

std::span<const int> StochasticGraph::edges_sensing(int cell) const {
  if (cell < 0 || cell >= num_cells()) {
    throw std::out_of_range("cell index out of range");
  }
  return std::span<const int>(cell_edge_list_)
      .subspan(cell_edge_offsets_[cell],
               cell_edge_offsets_[cell + 1] - cell_edge_offsets_[cell]);
}

std::vector<CellId> StochasticGraph::sensed_cells(int e) const {
  std::vector<CellId> out;
  for (int c : edge(e).sensed) out.push_back(cells_[c]);
  return out;
}

StochasticGraph build_graph(const InfoMap& map, std::span<const Point2D> sites,
                            const GraphParams& params) {
  const int n = static_cast<int>(sites.size());
  if (n < 3) {
    throw std::invalid_argument("need at least 3 sites, got " +
                                std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (!map.contains(sites[i])) {
      throw std::invalid_argument("site " + std::to_string(i) +
                                  " lies outside the map");
    }
    for (int j = 0; j < i; ++j) {
      if (sites[i] == sites[j]) {
        throw std::invalid_argument("duplicate sites " + edge_name(j, i));
      }
    }
  }
  if (!(params.sensing_radius > 0.0)) {
    throw std::invalid_argument("sensing radius must be positive");
  }

  struct RawEdge {
    std::vector<CellId> cells;
    double reward = 0.0;
    double length = 0.0;
  };
  std::vector<RawEdge> raw;
  raw.reserve(num_complete_edges(n));
  std::vector<CellId> all_cells;
  double max_reward = 0.0;
  double max_length = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      RawEdge r;
      r.cells = sensed_cells(sites[u], sites[v], params.sensing_radius, map);
      for (const CellId& c : r.cells) r.reward += map.at(c);
      r.length = std::hypot(sites[v].x - sites[u].x, sites[v].y - sites[u].y);
      max_reward = std::max(max_reward, r.reward);
      max_length = std::max(max_length, r.length);
      all_cells.insert(all_cells.end(), r.cells.begin(), r.cells.end());
      raw.push_back(std::move(r));
    }
  }
  std::sort(all_cells.begin(), all_cells.end());
  all_cells.erase(std::unique(all_cells.begin(), all_cells.end()),
                  all_cells.end());

  const bool scale_rewards = params.normalize && max_reward > 0.0;
  const double reward_scale = scale_rewards ? kNormalizedMax / max_reward : 1.0;
  const double cost_scale = params.normalize ? kNormalizedMax / max_length : 1.0;
  const double cost_cap = params.normalize ? kNormalizedMax : max_length;

  std::vector<double> cell_means;
  cell_means.reserve(all_cells.size());
  for (const CellId& c : all_cells) cell_means.push_back(map.at(c) * reward_scale);

  std::vector<EdgeModel> edges;
  edges.reserve(raw.size());
  int e = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++e) {
      EdgeModel m;
      m.u = u;
      m.v = v;
      m.length = raw[e].length;
      for (const CellId& c : raw[e].cells) {
        m.sensed.push_back(static_cast<int>(
            std::lower_bound(all_cells.begin(), all_cells.end(), c) -
            all_cells.begin()));
      }
      // Written as max * ratio so the arg-max lands on exactly 10.
      m.reward_mean = scale_rewards
                          ? kNormalizedMax * (raw[e].reward / max_reward)
                          : raw[e].reward;
      m.cost_mean = params.normalize
                        ? kNormalizedMax * (raw[e].length / max_length)
                        : raw[e].length;
      edges.push_back(std::move(m));
    }
  }

  return StochasticGraph(std::vector<Point2D>(sites.begin(), sites.end()),
                         std::move(edges), std::move(all_cells),
                         std::move(cell_means), cost_cap,
                         params.reward_var_coeff, params.cost_var_coeff,
                         params.sensing_radius, reward_scale, cost_scale);
}

EdgeVariance edge_variances(const StochasticGraph& graph, int e) {
  const EdgeModel& m = graph.edge(e);
  return {graph.reward_var_coeff() * m.reward_mean,
          graph.cost_var_coeff() * (graph.cost_cap() - m.cost_mean)};
}

}  // namespace ratsp

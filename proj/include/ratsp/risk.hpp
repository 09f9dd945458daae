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

// Stochastic utility and risk measures.
//
// For an edge set S and a noise realization y the utility is
//
//   f(S, y) = (1 - beta) * r(S, y) + beta * (|S| * C - c(S, y))
//
// where r sums sampled cell rewards over the union of cells sensed by S and c
// sums sampled edge costs. Rewards are drawn per cell, so each realization is
// a coverage function plus a modular term: monotone and submodular in S.
//
// The risk objective is CVaR_alpha(f(S, .)), maximized through the auxiliary
//
//   H(S, tau) = tau - (1 / alpha) * E[(tau - f(S, y))^+],
//
// estimated on a fixed NoisePanel (common random numbers), which makes the
// estimate a deterministic set function of S.

#ifndef RATSP_RISK_HPP_
#define RATSP_RISK_HPP_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "ratsp/graph.hpp"
#include "ratsp/random.hpp"

namespace ratsp {

struct RiskConfig {
  double alpha = 0.5;  // (0, 1]
  double beta = 0.5;   // [0, 1]

  // Throws std::invalid_argument when out of range.
  void validate() const;
};

// Edge indices in insertion order, no duplicates.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<int> edges);
  explicit EdgeSet(std::vector<int> edges);

  // Returns false (and leaves the set unchanged) if already present.
  bool insert(int e);
  bool erase(int e);
  bool contains(int e) const;

  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return edges_.empty(); }
  std::span<const int> items() const { return edges_; }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  EdgeSet with(int e) const;
  EdgeSet without(int e) const;
  // Ascending copy of the indices; two sets are the same set iff their
  // sorted() vectors compare equal.
  std::vector<int> sorted() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<int> edges_;
};

// Identifies the inputs a panel was drawn from.
struct PanelKey {
  std::uint64_t graph_fingerprint = 0;
  int num_samples = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const PanelKey&, const PanelKey&) = default;
};

// Gaussian(mean, stddev) restricted to [lo, hi]. Rejection from the
// untruncated law; when the interval holds under 1% of the mass, inverse-CDF
// on the restricted range instead.
struct TruncatedGaussian {
  double mean = 0.0;
  double stddev = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double acceptance_mass() const;
};

double sample_truncated(const TruncatedGaussian& dist, SplitMix64& engine);

// Stream tags used to key substreams.
inline constexpr std::uint64_t kCellRewardStream = 0x7265776172640001ULL;
inline constexpr std::uint64_t kEdgeCostStream = 0x636f737400000002ULL;

// Reward of `cell` in realization j. Depends only on (seed, j, cell
// coordinates, cell mean, v_r), never on which other values are drawn.
double sample_cell_reward(const StochasticGraph& graph, int cell, int j,
                          std::uint64_t seed);
// Cost of edge e in realization j, truncated to [0, C].
double sample_edge_cost(const StochasticGraph& graph, int e, int j,
                        std::uint64_t seed);

class NoisePanel {
 public:
  NoisePanel(PanelKey key, int num_cells, int num_edges,
             std::vector<double> cell_rewards, std::vector<double> edge_costs);

  int num_samples() const { return key_.num_samples; }
  std::uint64_t seed() const { return key_.seed; }
  const PanelKey& key() const { return key_; }

  double cell_reward(int j, int cell) const {
    return cell_rewards_[static_cast<std::size_t>(cell) * key_.num_samples + j];
  }
  double edge_cost(int j, int e) const {
    return edge_costs_[static_cast<std::size_t>(e) * key_.num_samples + j];
  }
  // All realizations of one cell / one edge, indexed by j.
  std::span<const double> cell_samples(int cell) const {
    return std::span<const double>(cell_rewards_)
        .subspan(static_cast<std::size_t>(cell) * key_.num_samples,
                 key_.num_samples);
  }
  std::span<const double> edge_samples(int e) const {
    return std::span<const double>(edge_costs_)
        .subspan(static_cast<std::size_t>(e) * key_.num_samples,
                 key_.num_samples);
  }

  // Throws std::invalid_argument unless the panel was drawn for this graph.
  void check_graph(const StochasticGraph& graph) const;

  friend bool operator==(const NoisePanel&, const NoisePanel&) = default;

 private:
  PanelKey key_;
  int num_cells_;
  int num_edges_;
  std::vector<double> cell_rewards_;  // [cell][j]
  std::vector<double> edge_costs_;    // [edge][j]
};

NoisePanel make_noise_panel(const StochasticGraph& graph, int num_samples,
                            std::uint64_t seed);

struct UtilityParts {
  double reward = 0.0;     // r(S, y): union of sensed cells, each once
  double cost_term = 0.0;  // |S| * C - c(S, y)

  double combine(double beta) const {
    return (1.0 - beta) * reward + beta * cost_term;
  }
};

UtilityParts utility_parts(const EdgeSet& s, const NoisePanel& panel, int j,
                           const StochasticGraph& graph);
// Both parts for every realization of the panel, indexed by j.
struct UtilitySamples {
  std::vector<double> reward;
  std::vector<double> cost_term;
};
UtilitySamples utility_samples(const EdgeSet& s, const NoisePanel& panel,
                               const StochasticGraph& graph);

double utility(const EdgeSet& s, const NoisePanel& panel, int j,
               const StochasticGraph& graph, const RiskConfig& cfg);
// utility() for every realization of the panel.
std::vector<double> utilities(const EdgeSet& s, const NoisePanel& panel,
                              const StochasticGraph& graph,
                              const RiskConfig& cfg);

// Per-realization parts of a tour for out-of-sample evaluation: draws only
// the cells and edges that S touches, with the same keyed substreams as
// make_noise_panel, so the values equal those of a full panel with that seed.
std::vector<UtilityParts> sample_utility_parts(const EdgeSet& s,
                                               const StochasticGraph& graph,
                                               int num_samples,
                                               std::uint64_t seed);

// ceil(alpha * n), guarded against alpha * n landing a rounding error above
// an integer, and clamped to [1, n].
int tail_count(int n, double alpha);

// ceil(alpha * n)-th smallest value (1-indexed).
double empirical_var(std::span<const double> values, double alpha);
// Mean of the ceil(alpha * n) smallest values.
double empirical_cvar(std::span<const double> values, double alpha);

// tau - (1 / (alpha * n)) * sum_j max(0, tau - f_j), summed in index order.
double h_from_utilities(std::span<const double> f, double tau, double alpha);

double estimate_H(const EdgeSet& s, double tau, const NoisePanel& panel,
                  const StochasticGraph& graph, const RiskConfig& cfg);

// The tau search grid {0, step, 2 step, ..., ceil(cap / step) * step}.
// cap == 0 denotes the single-point grid {0}.
struct TauGrid {
  double cap = 200.0;
  double step = 1.0;

  void validate() const;
  int size() const;
  double at(int i) const { return i * step; }
};

struct TauOptimum {
  double tau = 0.0;
  double h = 0.0;
  int index = 0;
};

// Maximizer over the grid; the smallest tau wins ties.
TauOptimum max_h_over_grid(std::span<const double> f, double alpha,
                           const TauGrid& grid);
TauOptimum max_H_over_tau(const EdgeSet& s, const NoisePanel& panel,
                          const StochasticGraph& graph, const RiskConfig& cfg,
                          const TauGrid& grid);

}  // namespace ratsp

#endif  // RATSP_RISK_HPP_

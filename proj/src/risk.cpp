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

#include "ratsp/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace ratsp {

void RiskConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1], got " +
                                std::to_string(alpha));
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must be in [0, 1], got " +
                                std::to_string(beta));
  }
}

// --- EdgeSet ---------------------------------------------------------------

EdgeSet::EdgeSet(std::initializer_list<int> edges) {
  for (int e : edges) insert(e);
}

EdgeSet::EdgeSet(std::vector<int> edges) {
  for (int e : edges) {
    if (!insert(e)) throw std::invalid_argument("duplicate edge in EdgeSet");
  }
}

bool EdgeSet::insert(int e) {
  if (contains(e)) return false;
  edges_.push_back(e);
  return true;
}

bool EdgeSet::erase(int e) {
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) return false;
  edges_.erase(it);
  return true;
}

bool EdgeSet::contains(int e) const {
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

EdgeSet EdgeSet::with(int e) const {
  EdgeSet out = *this;
  out.insert(e);
  return out;
}

EdgeSet EdgeSet::without(int e) const {
  EdgeSet out = *this;
  out.erase(e);
  return out;
}

std::vector<int> EdgeSet::sorted() const {
  std::vector<int> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

// --- Sampling --------------------------------------------------------------

double TruncatedGaussian::acceptance_mass() const {
  if (stddev <= 0.0) return 1.0;
  const boost::math::normal unit;
  const double a = (lo - mean) / stddev;
  const double b = (hi - mean) / stddev;
  const double upper = std::isinf(b) ? 1.0 : boost::math::cdf(unit, b);
  const double lower = std::isinf(a) ? 0.0 : boost::math::cdf(unit, a);
  return upper - lower;
}

double sample_truncated(const TruncatedGaussian& dist, SplitMix64& engine) {
  if (!(dist.lo <= dist.hi)) {
    throw std::invalid_argument("truncation interval is empty");
  }
  if (!(dist.stddev > 0.0)) return std::clamp(dist.mean, dist.lo, dist.hi);

  if (dist.acceptance_mass() >= 0.01) {
    std::normal_distribution<double> normal(dist.mean, dist.stddev);
    for (;;) {
      const double x = normal(engine);
      if (x >= dist.lo && x <= dist.hi) return x;
    }
  }

  // Inverse CDF on the restricted range. Work in the tail nearer the
  // interval so the probabilities keep their precision.
  const boost::math::normal unit;
  const double a = (dist.lo - dist.mean) / dist.stddev;
  const double b = (dist.hi - dist.mean) / dist.stddev;
  const double u = open_unit(engine);
  double z = 0.0;
  if (a > 0.0) {
    const double qa = boost::math::cdf(boost::math::complement(unit, a));
    const double qb =
        std::isinf(b) ? 0.0 : boost::math::cdf(boost::math::complement(unit, b));
    const double q = qb + u * (qa - qb);
    z = q > 0.0 ? boost::math::quantile(boost::math::complement(unit, q)) : a;
  } else {
    const double pa = std::isinf(a) ? 0.0 : boost::math::cdf(unit, a);
    const double pb = boost::math::cdf(unit, b);
    const double p = pa + u * (pb - pa);
    z = p > 0.0 ? boost::math::quantile(unit, p) : b;
  }
  return std::clamp(dist.mean + dist.stddev * z, dist.lo, dist.hi);
}

double sample_cell_reward(const StochasticGraph& graph, int cell, int j,
                          std::uint64_t seed) {
  const CellId id = graph.cells()[cell];
  const double mean = graph.cell_means()[cell];
  SplitMix64 engine(hash_words({seed, kCellRewardStream,
                                static_cast<std::uint64_t>(j),
                                static_cast<std::uint64_t>(id.col),
                                static_cast<std::uint64_t>(id.row)}));
  const TruncatedGaussian dist{mean, std::sqrt(graph.reward_var_coeff() * mean),
                               0.0, std::numeric_limits<double>::infinity()};
  return sample_truncated(dist, engine);
}

double sample_edge_cost(const StochasticGraph& graph, int e, int j,
                        std::uint64_t seed) {
  const EdgeModel& m = graph.edge(e);
  const double cap = graph.cost_cap();
  SplitMix64 engine(hash_words({seed, kEdgeCostStream,
                                static_cast<std::uint64_t>(j),
                                static_cast<std::uint64_t>(m.u),
                                static_cast<std::uint64_t>(m.v)}));
  const TruncatedGaussian dist{
      m.cost_mean, std::sqrt(graph.cost_var_coeff() * (cap - m.cost_mean)), 0.0,
      cap};
  return sample_truncated(dist, engine);
}

// --- NoisePanel ------------------------------------------------------------

NoisePanel::NoisePanel(PanelKey key, int num_cells, int num_edges,
                       std::vector<double> cell_rewards,
                       std::vector<double> edge_costs)
    : key_(key),
      num_cells_(num_cells),
      num_edges_(num_edges),
      cell_rewards_(std::move(cell_rewards)),
      edge_costs_(std::move(edge_costs)) {
  if (key_.num_samples < 1) {
    throw std::invalid_argument("a noise panel needs at least one sample");
  }
  if (cell_rewards_.size() !=
          static_cast<std::size_t>(num_cells_) * key_.num_samples ||
      edge_costs_.size() !=
          static_cast<std::size_t>(num_edges_) * key_.num_samples) {
    throw std::invalid_argument("noise panel storage has the wrong size");
  }
}

void NoisePanel::check_graph(const StochasticGraph& graph) const {
  if (graph.fingerprint() != key_.graph_fingerprint ||
      graph.num_cells() != num_cells_ || graph.num_edges() != num_edges_) {
    throw std::invalid_argument("noise panel was drawn for a different graph");
  }
}

NoisePanel make_noise_panel(const StochasticGraph& graph, int num_samples,
                            std::uint64_t seed) {
  if (num_samples < 1) {
    throw std::invalid_argument("n_s must be >= 1, got " +
                                std::to_string(num_samples));
  }
  const std::size_t ns = static_cast<std::size_t>(num_samples);
  std::vector<double> rewards(static_cast<std::size_t>(graph.num_cells()) * ns);
  for (int c = 0; c < graph.num_cells(); ++c) {
    for (int j = 0; j < num_samples; ++j) {
      rewards[c * ns + j] = sample_cell_reward(graph, c, j, seed);
    }
  }
  std::vector<double> costs(static_cast<std::size_t>(graph.num_edges()) * ns);
  for (int e = 0; e < graph.num_edges(); ++e) {
    for (int j = 0; j < num_samples; ++j) {
      costs[e * ns + j] = sample_edge_cost(graph, e, j, seed);
    }
  }
  return NoisePanel({graph.fingerprint(), num_samples, seed}, graph.num_cells(),
                    graph.num_edges(), std::move(rewards), std::move(costs));
}

// --- Utility ---------------------------------------------------------------

namespace {

std::vector<int> covered_cells(const EdgeSet& s, const StochasticGraph& graph) {
  std::vector<int> cells;
  for (int e : s) {
    const auto& sensed = graph.edge(e).sensed;
    cells.insert(cells.end(), sensed.begin(), sensed.end());
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

void check_sample(const NoisePanel& panel, int j) {
  if (j < 0 || j >= panel.num_samples()) {
    throw std::out_of_range("sample index " + std::to_string(j) +
                            " out of range");
  }
}

}  // namespace

UtilityParts utility_parts(const EdgeSet& s, const NoisePanel& panel, int j,
                           const StochasticGraph& graph) {
  check_sample(panel, j);
  panel.check_graph(graph);
  UtilityParts parts;
  for (int c : covered_cells(s, graph)) parts.reward += panel.cell_reward(j, c);
  double cost = 0.0;
  for (int e : s.sorted()) cost += panel.edge_cost(j, e);
  parts.cost_term = s.size() * graph.cost_cap() - cost;
  return parts;
}

double utility(const EdgeSet& s, const NoisePanel& panel, int j,
               const StochasticGraph& graph, const RiskConfig& cfg) {
  return utility_parts(s, panel, j, graph).combine(cfg.beta);
}

UtilitySamples utility_samples(const EdgeSet& s, const NoisePanel& panel,
                               const StochasticGraph& graph) {
  panel.check_graph(graph);
  const int ns = panel.num_samples();
  UtilitySamples out{std::vector<double>(ns, 0.0), std::vector<double>(ns, 0.0)};
  for (int c : covered_cells(s, graph)) {
    const auto samples = panel.cell_samples(c);
    for (int j = 0; j < ns; ++j) out.reward[j] += samples[j];
  }
  std::vector<double> cost(ns, 0.0);
  for (int e : s.sorted()) {
    const auto samples = panel.edge_samples(e);
    for (int j = 0; j < ns; ++j) cost[j] += samples[j];
  }
  for (int j = 0; j < ns; ++j) {
    out.cost_term[j] = s.size() * graph.cost_cap() - cost[j];
  }
  return out;
}

std::vector<double> utilities(const EdgeSet& s, const NoisePanel& panel,
                              const StochasticGraph& graph,
                              const RiskConfig& cfg) {
  const UtilitySamples parts = utility_samples(s, panel, graph);
  std::vector<double> f(parts.reward.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] = UtilityParts{parts.reward[j], parts.cost_term[j]}.combine(cfg.beta);
  }
  return f;
}

std::vector<UtilityParts> sample_utility_parts(const EdgeSet& s,
                                               const StochasticGraph& graph,
                                               int num_samples,
                                               std::uint64_t seed) {
  if (num_samples < 1) throw std::invalid_argument("need at least one sample");
  const std::vector<int> cells = covered_cells(s, graph);
  const std::vector<int> edges = s.sorted();
  std::vector<UtilityParts> out(num_samples);
  for (int j = 0; j < num_samples; ++j) {
    double reward = 0.0;
    for (int c : cells) reward += sample_cell_reward(graph, c, j, seed);
    double cost = 0.0;
    for (int e : edges) cost += sample_edge_cost(graph, e, j, seed);
    out[j] = {reward, s.size() * graph.cost_cap() - cost};
  }
  return out;
}

// --- Risk measures ---------------------------------------------------------

namespace {

void check_risk_input(std::span<const double> values, double alpha) {
  if (values.empty()) throw std::invalid_argument("empty sample vector");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1]");
  }
}

}  // namespace

int tail_count(int n, double alpha) {
  const double x = alpha * n;
  const int k = static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  return std::clamp(k, 1, n);
}

double empirical_var(std::span<const double> values, double alpha) {
  check_risk_input(values, alpha);
  std::vector<double> v(values.begin(), values.end());
  const int k = tail_count(static_cast<int>(v.size()), alpha);
  std::nth_element(v.begin(), v.begin() + (k - 1), v.end());
  return v[k - 1];
}

double empirical_cvar(std::span<const double> values, double alpha) {
  check_risk_input(values, alpha);
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const int k = tail_count(static_cast<int>(v.size()), alpha);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += v[i];
  return sum / k;
}

double h_from_utilities(std::span<const double> f, double tau, double alpha) {
  if (f.empty()) throw std::invalid_argument("empty sample vector");
  double shortfall = 0.0;
  for (double v : f) shortfall += std::max(0.0, tau - v);
  return tau - shortfall / (alpha * static_cast<double>(f.size()));
}

double estimate_H(const EdgeSet& s, double tau, const NoisePanel& panel,
                  const StochasticGraph& graph, const RiskConfig& cfg) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  cfg.validate();
  return h_from_utilities(utilities(s, panel, graph, cfg), tau, cfg.alpha);
}

void TauGrid::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("tau grid step must be > 0");
  }
  if (!(cap >= 0.0) || !std::isfinite(cap)) {
    throw std::invalid_argument("tau grid cap must be >= 0");
  }
  if (cap > 0.0 && step > cap) {
    throw std::invalid_argument("tau grid step must not exceed the cap");
  }
}

int TauGrid::size() const {
  validate();
  if (cap == 0.0) return 1;
  // Absorb the rounding of cap / step (e.g. 1 / 0.1) before taking ceil.
  const double ratio = cap / step;
  return static_cast<int>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio))) + 1;
}

TauOptimum max_h_over_grid(std::span<const double> f, double alpha,
                           const TauGrid& grid) {
  const int n = grid.size();
  TauOptimum best;
  best.h = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double tau = grid.at(i);
    const double h = h_from_utilities(f, tau, alpha);
    if (h > best.h) best = {tau, h, i};
  }
  return best;
}

TauOptimum max_H_over_tau(const EdgeSet& s, const NoisePanel& panel,
                          const StochasticGraph& graph, const RiskConfig& cfg,
                          const TauGrid& grid) {
  cfg.validate();
  return max_h_over_grid(utilities(s, panel, graph, cfg), cfg.alpha, grid);
}

}  // namespace ratsp

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

#include "ratsp/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ratsp {

void SolverConfig::validate() const {
  risk.validate();
  grid.validate();
  if (num_samples < 1) throw std::invalid_argument("n_s must be >= 1");
}

namespace {

// Per-realization bookkeeping for marginal gains of H(., tau).
//
// f_[j] holds f(S, y_j). fresh_[e][j] holds the sampled reward of the cells
// of e that S does not cover yet, so f(S + e, y_j) = f_[j] + delta(e, j)
// with delta = (1 - beta) fresh + beta (C - cost). Covering a cell subtracts
// its samples from every edge that senses it, which keeps each gain query at
// O(n_s) regardless of how many cells an edge sees.
class GainEngine {
 public:
  GainEngine(const StochasticGraph& graph, const NoisePanel& panel, double beta)
      : graph_(graph),
        panel_(panel),
        beta_(beta),
        ns_(panel.num_samples()),
        base_fresh_(static_cast<std::size_t>(graph.num_edges()) * ns_, 0.0),
        cost_term_(static_cast<std::size_t>(graph.num_edges()) * ns_) {
    panel.check_graph(graph);
    for (int e = 0; e < graph.num_edges(); ++e) {
      double* fresh = &base_fresh_[static_cast<std::size_t>(e) * ns_];
      for (int c : graph.edge(e).sensed) {
        const auto samples = panel.cell_samples(c);
        for (int j = 0; j < ns_; ++j) fresh[j] += samples[j];
      }
      const auto costs = panel.edge_samples(e);
      double* term = &cost_term_[static_cast<std::size_t>(e) * ns_];
      for (int j = 0; j < ns_; ++j) term[j] = graph.cost_cap() - costs[j];
    }
    reset();
  }

  void reset() {
    f_.assign(ns_, 0.0);
    fresh_ = base_fresh_;
    covered_.assign(graph_.num_cells(), 0);
  }

  double value(double tau, double alpha) const {
    return h_from_utilities(f_, tau, alpha);
  }

  // H(S + e, tau).
  double value_with(int e, double tau, double alpha) const {
    const double* fresh = row(fresh_, e);
    const double* term = row(cost_term_, e);
    double shortfall = 0.0;
    for (int j = 0; j < ns_; ++j) {
      const double f = f_[j] + ((1.0 - beta_) * fresh[j] + beta_ * term[j]);
      shortfall += std::max(0.0, tau - f);
    }
    return tau - shortfall / (alpha * ns_);
  }

  void add(int e) {
    const double* fresh = row(fresh_, e);
    const double* term = row(cost_term_, e);
    for (int j = 0; j < ns_; ++j) {
      f_[j] += (1.0 - beta_) * fresh[j] + beta_ * term[j];
    }
    for (int c : graph_.edge(e).sensed) {
      if (covered_[c]) continue;
      covered_[c] = 1;
      const auto samples = panel_.cell_samples(c);
      for (int other : graph_.edges_sensing(c)) {
        double* dst = &fresh_[static_cast<std::size_t>(other) * ns_];
        for (int j = 0; j < ns_; ++j) dst[j] -= samples[j];
      }
    }
  }

 private:
  const double* row(const std::vector<double>& v, int e) const {
    return &v[static_cast<std::size_t>(e) * ns_];
  }

  const StochasticGraph& graph_;
  const NoisePanel& panel_;
  double beta_;
  int ns_;
  std::vector<double> base_fresh_;  // [edge][j], nothing covered
  std::vector<double> cost_term_;   // [edge][j], C - sampled cost
  std::vector<double> f_;
  std::vector<double> fresh_;
  std::vector<char> covered_;
};

struct Candidate {
  double value;
  int edge;
};

TourState run_greedy(GainEngine& engine, const StochasticGraph& graph,
                     const RiskConfig& cfg, double tau) {
  const int n = graph.num_vertices();
  engine.reset();
  TourState state;
  state.degree.assign(n, 0);
  state.h_value = engine.value(tau, cfg.alpha);

  std::vector<int> pool(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e) pool[e] = e;
  std::vector<Candidate> ranked;

  while (state.edges.size() < n && !pool.empty()) {
    // Gains only change when S does, so rank once per accepted edge and
    // walk down the ranking past infeasible edges.
    ranked.clear();
    for (int e : pool) ranked.push_back({engine.value_with(e, tau, cfg.alpha), e});
    std::sort(ranked.begin(), ranked.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.value > b.value || (a.value == b.value && a.edge < b.edge);
              });
    int accepted = -1;
    std::vector<int> dropped;
    for (const Candidate& c : ranked) {
      dropped.push_back(c.edge);
      if (is_feasible(state, c.edge, graph)) {
        accepted = c.edge;
        break;
      }
      ++state.discarded;
    }
    std::sort(dropped.begin(), dropped.end());
    std::erase_if(pool, [&](int e) {
      return std::binary_search(dropped.begin(), dropped.end(), e);
    });
    if (accepted < 0) break;

    const EdgeModel& m = graph.edge(accepted);
    engine.add(accepted);
    state.edges.insert(accepted);
    ++state.degree[m.u];
    ++state.degree[m.v];
    state.h_value = engine.value(tau, cfg.alpha);
    state.h_history.push_back(state.h_value);
  }
  return state;
}

}  // namespace

bool is_feasible(const TourState& state, int e, const StochasticGraph& graph) {
  const EdgeModel& m = graph.edge(e);
  const int n = graph.num_vertices();
  if (state.edges.contains(e)) return false;
  if (state.degree[m.u] >= 2 || state.degree[m.v] >= 2) return false;

  std::vector<std::vector<int>> adj(n);
  for (int s : state.edges) {
    const EdgeModel& other = graph.edge(s);
    adj[other.u].push_back(other.v);
    adj[other.v].push_back(other.u);
  }
  // DFS from u; if v is reachable, e closes a cycle over u's component.
  std::vector<char> seen(n, 0);
  std::vector<int> stack{m.u};
  seen[m.u] = 1;
  int component = 0;
  bool reaches_v = false;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    ++component;
    if (x == m.v) reaches_v = true;
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return !reaches_v || component == n;
}

TourState greedy_tour(const StochasticGraph& graph, const NoisePanel& panel,
                      const RiskConfig& cfg, double tau) {
  cfg.validate();
  if (graph.num_vertices() < 3) {
    throw std::invalid_argument("greedy tour needs at least 3 vertices");
  }
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  GainEngine engine(graph, panel, cfg.beta);
  return run_greedy(engine, graph, cfg, tau);
}

SolveResult raga_solve(const StochasticGraph& graph, const SolverConfig& cfg) {
  cfg.validate();
  const NoisePanel panel = make_noise_panel(graph, cfg.num_samples, cfg.seed);
  return raga_solve(graph, panel, cfg);
}

SolveResult raga_solve(const StochasticGraph& graph, const NoisePanel& panel,
                       const SolverConfig& cfg) {
  cfg.validate();
  const PanelKey expected{graph.fingerprint(), cfg.num_samples, cfg.seed};
  if (panel.key() != expected) {
    throw std::invalid_argument(
        "noise panel does not match (graph, n_s, seed) of the config");
  }
  GainEngine engine(graph, panel, cfg.risk.beta);

  SolveResult result;
  result.panel = panel.key();
  result.config = cfg;
  const int iterations = cfg.grid.size();
  for (int i = 0; i < iterations; ++i) {
    const double tau = cfg.grid.at(i);
    TourState state = run_greedy(engine, graph, cfg.risk, tau);
    result.iterations_run = i + 1;
    result.trace.push_back(
        {tau, {state.edges.begin(), state.edges.end()}, state.h_value});
    // H_max starts at 0 and is kept across tau iterations; later tau wins
    // exact ties.
    if (state.h_value >= result.h_max) {
      result.h_max = state.h_value;
      result.best_edges = state.edges;
      result.best_tau = tau;
      result.updated = true;
    }
    if (state.h_value < 0.0) break;
  }
  return result;
}

bool is_hamiltonian_cycle(const EdgeSet& edges, const StochasticGraph& graph) {
  const int n = graph.num_vertices();
  if (edges.size() != n) return false;
  std::vector<std::vector<int>> adj(n);
  for (int e : edges) {
    if (e < 0 || e >= graph.num_edges()) return false;
    const EdgeModel& m = graph.edge(e);
    adj[m.u].push_back(m.v);
    adj[m.v].push_back(m.u);
  }
  for (const auto& a : adj) {
    if (a.size() != 2) return false;
  }
  int prev = -1;
  int cur = 0;
  for (int step = 0; step < n; ++step) {
    const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    if (cur == 0) return step == n - 1;
  }
  return false;
}

std::vector<int> tour_vertices(const EdgeSet& edges,
                               const StochasticGraph& graph) {
  if (!is_hamiltonian_cycle(edges, graph)) {
    throw std::invalid_argument("edge set is not a Hamiltonian cycle");
  }
  const int n = graph.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (int e : edges) {
    const EdgeModel& m = graph.edge(e);
    adj[m.u].push_back(m.v);
    adj[m.v].push_back(m.u);
  }
  std::vector<int> order{0};
  int prev = 0;
  int cur = std::min(adj[0][0], adj[0][1]);
  while (cur != 0) {
    order.push_back(cur);
    const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
  }
  return order;
}

std::string tour_label(const EdgeSet& edges, const StochasticGraph& graph) {
  std::string label;
  for (int v : tour_vertices(edges, graph)) {
    if (!label.empty()) label += '-';
    label += std::to_string(v);
  }
  return label;
}

EdgeSet edges_from_vertices(const std::vector<int>& cycle,
                            const StochasticGraph& graph) {
  const int n = static_cast<int>(cycle.size());
  EdgeSet edges;
  for (int i = 0; i < n; ++i) {
    if (!edges.insert(graph.edge_index(cycle[i], cycle[(i + 1) % n]))) {
      throw std::invalid_argument("vertex cycle repeats an edge");
    }
  }
  return edges;
}

}  // namespace ratsp

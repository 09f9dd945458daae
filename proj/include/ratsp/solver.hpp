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

// Risk-aware greedy tour construction.
//
// For each tau on the search grid the solver grows an edge set greedily by
// marginal gain in H(., tau), keeping only edges that can still extend to a
// Hamiltonian cycle (vertex degree <= 2, no cycle shorter than |V|). An
// argmax edge that fails the check is dropped from the candidate pool for
// that tau. The best (tour, tau) pair over the sweep is returned; the sweep
// stops at the first tau whose finished tour has a negative H, since H is
// concave in tau and starts non-negative.

#ifndef RATSP_SOLVER_HPP_
#define RATSP_SOLVER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ratsp/graph.hpp"
#include "ratsp/risk.hpp"

namespace ratsp {

struct TourState {
  EdgeSet edges;
  std::vector<int> degree;  // per vertex, each in {0, 1, 2}
  double h_value = 0.0;     // H(edges, tau) on the panel
  // h_value after each accepted edge, in selection order.
  std::vector<double> h_history;
  int discarded = 0;  // argmax edges rejected as infeasible
};

struct SolverConfig {
  RiskConfig risk;
  TauGrid grid;
  int num_samples = 250;
  std::uint64_t seed = 42;

  void validate() const;
};

struct TraceEntry {
  double tau = 0.0;
  std::vector<int> edges;  // selection order
  double h = 0.0;
};

struct SolveResult {
  EdgeSet best_edges;
  double best_tau = 0.0;
  double h_max = 0.0;
  // False iff no finished tour reached H >= 0; best_edges is then empty.
  bool updated = false;
  int iterations_run = 0;
  std::vector<TraceEntry> trace;
  PanelKey panel;
  SolverConfig config;
};

// True iff both endpoints of e have degree < 2 and S + e has no cycle on
// fewer than |V| vertices. The closing edge of a Hamiltonian path is
// feasible. Cycle detection walks S depth-first from one endpoint.
bool is_feasible(const TourState& state, int e, const StochasticGraph& graph);

TourState greedy_tour(const StochasticGraph& graph, const NoisePanel& panel,
                      const RiskConfig& cfg, double tau);

SolveResult raga_solve(const StochasticGraph& graph, const SolverConfig& cfg);
// Uses the given panel, which must match (graph, cfg.num_samples, cfg.seed).
SolveResult raga_solve(const StochasticGraph& graph, const NoisePanel& panel,
                       const SolverConfig& cfg);

bool is_hamiltonian_cycle(const EdgeSet& edges, const StochasticGraph& graph);
// Vertex order of a Hamiltonian cycle starting at 0 and heading to the
// smaller-indexed neighbour of 0. Throws if `edges` is not such a cycle.
std::vector<int> tour_vertices(const EdgeSet& edges,
                               const StochasticGraph& graph);
// "0-3-1-2" style label of tour_vertices().
std::string tour_label(const EdgeSet& edges, const StochasticGraph& graph);
EdgeSet edges_from_vertices(const std::vector<int>& cycle,
                            const StochasticGraph& graph);

}  // namespace ratsp

#endif  // RATSP_SOLVER_HPP_

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

// Exhaustive ground truth for small instances: every Hamiltonian cycle,
// the exact optimum of H over tours x tau grid on a shared panel, the
// curvature of H(., tau), and the greedy approximation guarantee
//
//   H_greedy >= (H_opt - step) / (2 + k)
//               + (1 + k) / (2 + k) * cap * (1 - 1 / alpha) - epsilon.

#ifndef RATSP_ORACLE_HPP_
#define RATSP_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratsp/graph.hpp"
#include "ratsp/risk.hpp"
#include "ratsp/solver.hpp"

namespace ratsp {

inline constexpr int kMinEnumerationVertices = 3;
inline constexpr int kMaxEnumerationVertices = 9;

// Every Hamiltonian cycle exactly once: vertex 0 first, and the second vertex
// smaller than the last. Throws std::invalid_argument outside [3, 9] vertices.
std::vector<EdgeSet> enumerate_tours(const StochasticGraph& graph);

struct BruteForceResult {
  EdgeSet best_edges;
  double best_tau = 0.0;
  double h_star = 0.0;
  long long all_tours = 0;
  PanelKey panel;
  TauGrid grid;
  double alpha = 0.0;
};

// Max of H over all tours x cfg.grid on the panel (graph, n_s, seed). Ties go
// to the earlier tour in enumeration order, then the smaller tau.
BruteForceResult brute_force_solve(const StochasticGraph& graph,
                                   const SolverConfig& cfg);
BruteForceResult brute_force_solve(const StochasticGraph& graph,
                                   const NoisePanel& panel,
                                   const SolverConfig& cfg);

struct CurvatureReport {
  double k = 0.0;
  EdgeSet witness_set;  // the tour S attaining the minimum ratio
  int witness_edge = -1;
  double tau = 0.0;
  // Edges whose normalized singleton value is zero. They have no defined
  // ratio; with skip_zero_singletons they are left out of the minimum,
  // otherwise curvature() throws and names them.
  std::vector<int> zero_singletons;
  int pairs_evaluated = 0;
};

struct CurvatureOptions {
  bool skip_zero_singletons = false;
  // Normalized singleton values at or below this are treated as zero.
  double zero_tolerance = 1e-12;
};

// Error raised when a singleton has zero normalized value.
class ZeroSingletonError : public std::invalid_argument {
 public:
  ZeroSingletonError(const std::string& what, std::vector<int> edges)
      : std::invalid_argument(what), edges_(std::move(edges)) {}
  const std::vector<int>& edges() const { return edges_; }

 private:
  std::vector<int> edges_;
};

// k = 1 - min over tours S and s in S of
//     [H_N(S) - H_N(S \ {s})] / H_N({s}),   H_N(X) = H(X, tau) - tau (1 - 1/alpha)
// clamped to [0, 1].
CurvatureReport curvature(const StochasticGraph& graph, const NoisePanel& panel,
                          const RiskConfig& cfg, double tau,
                          const CurvatureOptions& options = {});

struct BoundCheck {
  bool holds = false;
  double rhs = 0.0;
  double margin = 0.0;  // H_greedy - rhs
  double h_greedy = 0.0;
  double h_opt = 0.0;
  double k = 0.0;
};

// Throws std::invalid_argument if the two results were not computed on the
// same panel provenance and tau grid.
BoundCheck verify_bound(const SolveResult& greedy, const BruteForceResult& opt,
                        double k, const SolverConfig& cfg, double epsilon = 0.0);

double approximation_rhs(double h_opt, double k, double alpha,
                         const TauGrid& grid, double epsilon);

struct SubmodularityReport {
  long long pairs_checked = 0;
  long long monotone_checks = 0;
  // Set-pair violations of f(S) + f(T) >= f(S u T) + f(S n T).
  long long h_violations = 0;
  long long utility_violations = 0;
  long long reward_violations = 0;
  // Violations of f(S + e) >= f(S).
  long long h_monotone_violations = 0;
  long long utility_monotone_violations = 0;
  // max |c(S u T) + c(S n T) - c(S) - c(T)| over checked pairs and samples
  // for the cost term |S| C - c(S, y).
  double cost_modularity_error = 0.0;
  std::optional<std::string> first_violation;
  bool exhaustive = true;

  bool ok() const {
    return h_violations == 0 && utility_violations == 0 &&
           reward_violations == 0 && h_monotone_violations == 0 &&
           utility_monotone_violations == 0;
  }
};

struct SubmodularityOptions {
  // Ground set; empty means every edge of the graph.
  std::vector<int> ground;
  // Above this many ground elements, pairs are sampled instead of enumerated.
  int max_exhaustive = 12;
  long long sampled_pairs = 20000;
  std::uint64_t seed = 1;
  // Comparisons allow this much slack, scaled by 1 + |value|, for rounding.
  double tolerance = 1e-9;
  // Also check each per-realization utility and its parts.
  bool per_realization = true;
};

SubmodularityReport check_submodular_exhaustive(
    const StochasticGraph& graph, const NoisePanel& panel, double tau,
    const RiskConfig& cfg, const SubmodularityOptions& options = {});

}  // namespace ratsp

#endif  // RATSP_ORACLE_HPP_

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

#include "ratsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ratsp {
namespace {

void check_guard(const StochasticGraph& graph) {
  const int n = graph.num_vertices();
  if (n < kMinEnumerationVertices || n > kMaxEnumerationVertices) {
    throw std::invalid_argument(
        "exhaustive tour enumeration supports 3..9 vertices, got " +
        std::to_string(n));
  }
}

// H(X, tau) - H(empty, tau) = (1 / alpha) * mean_j min(tau, f_j(X)), written
// without the cancellation of the subtracted form.
double normalized_h(std::span<const double> f, double tau, double alpha) {
  double sum = 0.0;
  for (double v : f) sum += std::min(tau, v);
  return sum / (alpha * static_cast<double>(f.size()));
}

std::string describe(const std::vector<int>& ground, unsigned mask) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask & (1u << i)) {
      os << (first ? "" : ",") << ground[i];
      first = false;
    }
  }
  os << '}';
  return os.str();
}

EdgeSet subset(const std::vector<int>& ground, unsigned mask) {
  EdgeSet s;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask & (1u << i)) s.insert(ground[i]);
  }
  return s;
}

bool violates(double lhs, double rhs, double tol) {
  return lhs < rhs - tol * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

}  // namespace

std::vector<EdgeSet> enumerate_tours(const StochasticGraph& graph) {
  check_guard(graph);
  const int n = graph.num_vertices();
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<EdgeSet> tours;
  do {
    if (rest.front() > rest.back()) continue;  // the reversed cycle
    std::vector<int> cycle{0};
    cycle.insert(cycle.end(), rest.begin(), rest.end());
    tours.push_back(edges_from_vertices(cycle, graph));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return tours;
}

BruteForceResult brute_force_solve(const StochasticGraph& graph,
                                   const SolverConfig& cfg) {
  cfg.validate();
  check_guard(graph);
  const NoisePanel panel = make_noise_panel(graph, cfg.num_samples, cfg.seed);
  return brute_force_solve(graph, panel, cfg);
}

BruteForceResult brute_force_solve(const StochasticGraph& graph,
                                   const NoisePanel& panel,
                                   const SolverConfig& cfg) {
  cfg.validate();
  const PanelKey expected{graph.fingerprint(), cfg.num_samples, cfg.seed};
  if (panel.key() != expected) {
    throw std::invalid_argument(
        "noise panel does not match (graph, n_s, seed) of the config");
  }
  const std::vector<EdgeSet> tours = enumerate_tours(graph);
  BruteForceResult result;
  result.panel = panel.key();
  result.grid = cfg.grid;
  result.alpha = cfg.risk.alpha;
  result.all_tours = static_cast<long long>(tours.size());
  bool have = false;
  for (const EdgeSet& tour : tours) {
    const TauOptimum opt = max_h_over_grid(utilities(tour, panel, graph, cfg.risk),
                                           cfg.risk.alpha, cfg.grid);
    if (!have || opt.h > result.h_star) {
      result.best_edges = tour;
      result.best_tau = opt.tau;
      result.h_star = opt.h;
      have = true;
    }
  }
  return result;
}

CurvatureReport curvature(const StochasticGraph& graph, const NoisePanel& panel,
                          const RiskConfig& cfg, double tau,
                          const CurvatureOptions& options) {
  cfg.validate();
  check_guard(graph);
  if (!(tau > 0.0)) throw std::invalid_argument("curvature needs tau > 0");

  std::map<std::vector<int>, double> cache;
  auto h_n = [&](const EdgeSet& s) {
    auto key = s.sorted();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = normalized_h(utilities(s, panel, graph, cfg), tau, cfg.alpha);
    cache.emplace(std::move(key), v);
    return v;
  };

  CurvatureReport report;
  report.tau = tau;
  std::vector<double> singleton(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e) {
    singleton[e] = h_n(EdgeSet{e});
    if (singleton[e] <= options.zero_tolerance) report.zero_singletons.push_back(e);
  }
  if (!report.zero_singletons.empty() && !options.skip_zero_singletons) {
    std::string names;
    for (int e : report.zero_singletons) {
      const EdgeModel& m = graph.edge(e);
      names += (names.empty() ? "" : ", ") + std::to_string(e) + " (" +
               std::to_string(m.u) + "-" + std::to_string(m.v) + ")";
    }
    throw ZeroSingletonError("curvature undefined: zero singleton value for edge " +
                                 names,
                             report.zero_singletons);
  }

  double min_ratio = 1.0;
  for (const EdgeSet& tour : enumerate_tours(graph)) {
    const double whole = h_n(tour);
    for (int s : tour) {
      if (singleton[s] <= options.zero_tolerance) continue;
      const double ratio = (whole - h_n(tour.without(s))) / singleton[s];
      ++report.pairs_evaluated;
      if (report.witness_edge < 0 || ratio < min_ratio) {
        min_ratio = ratio;
        report.witness_set = tour;
        report.witness_edge = s;
      }
    }
  }
  report.k = report.pairs_evaluated == 0 ? 0.0
                                         : std::clamp(1.0 - min_ratio, 0.0, 1.0);
  return report;
}

double approximation_rhs(double h_opt, double k, double alpha,
                         const TauGrid& grid, double epsilon) {
  return (h_opt - grid.step) / (2.0 + k) +
         (1.0 + k) / (2.0 + k) * grid.cap * (1.0 - 1.0 / alpha) - epsilon;
}

BoundCheck verify_bound(const SolveResult& greedy, const BruteForceResult& opt,
                        double k, const SolverConfig& cfg, double epsilon) {
  if (greedy.panel != opt.panel) {
    throw std::invalid_argument(
        "greedy and optimal results come from different noise panels");
  }
  const PanelKey expected_seed{greedy.panel.graph_fingerprint, cfg.num_samples,
                               cfg.seed};
  if (greedy.panel != expected_seed) {
    throw std::invalid_argument("results do not match the config's n_s/seed");
  }
  if (greedy.config.grid.cap != cfg.grid.cap ||
      greedy.config.grid.step != cfg.grid.step || opt.grid.cap != cfg.grid.cap ||
      opt.grid.step != cfg.grid.step) {
    throw std::invalid_argument("results were computed on different tau grids");
  }
  if (greedy.config.risk.alpha != cfg.risk.alpha || opt.alpha != cfg.risk.alpha) {
    throw std::invalid_argument("results were computed with a different alpha");
  }
  if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("k must be in [0, 1]");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");

  BoundCheck check;
  check.h_greedy = greedy.h_max;
  check.h_opt = opt.h_star;
  check.k = k;
  check.rhs = approximation_rhs(opt.h_star, k, cfg.risk.alpha, cfg.grid, epsilon);
  check.margin = check.h_greedy - check.rhs;
  check.holds = check.margin >= 0.0;
  return check;
}

SubmodularityReport check_submodular_exhaustive(
    const StochasticGraph& graph, const NoisePanel& panel, double tau,
    const RiskConfig& cfg, const SubmodularityOptions& options) {
  cfg.validate();
  std::vector<int> ground = options.ground;
  if (ground.empty()) {
    ground.resize(graph.num_edges());
    std::iota(ground.begin(), ground.end(), 0);
  }
  for (int e : ground) graph.edge(e);  // bounds check
  const int m = static_cast<int>(ground.size());
  const double tol = options.tolerance;
  const int ns = panel.num_samples();
  SubmodularityReport report;

  auto note = [&report](const std::string& what) {
    if (!report.first_violation) report.first_violation = what;
  };

  if (m > std::min(options.max_exhaustive, 20)) {
    // Random pairs (S, T) and random monotonicity probes.
    report.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (long long p = 0; p < options.sampled_pairs; ++p) {
      EdgeSet s, t, uni, inter;
      for (int e : ground) {
        const bool in_s = coin(rng), in_t = coin(rng);
        if (in_s) s.insert(e);
        if (in_t) t.insert(e);
        if (in_s || in_t) uni.insert(e);
        if (in_s && in_t) inter.insert(e);
      }
      const double hs = h_from_utilities(utilities(s, panel, graph, cfg), tau, cfg.alpha);
      const double ht = h_from_utilities(utilities(t, panel, graph, cfg), tau, cfg.alpha);
      const double hu = h_from_utilities(utilities(uni, panel, graph, cfg), tau, cfg.alpha);
      const double hi = h_from_utilities(utilities(inter, panel, graph, cfg), tau, cfg.alpha);
      ++report.pairs_checked;
      if (violates(hs + ht, hu + hi, tol)) {
        ++report.h_violations;
        note("H pair violation on a sampled pair");
      }
      const int e = ground[pick(rng)];
      if (!s.contains(e)) {
        ++report.monotone_checks;
        const double he = h_from_utilities(utilities(s.with(e), panel, graph, cfg),
                                           tau, cfg.alpha);
        if (violates(he, hs, tol)) {
          ++report.h_monotone_violations;
          note("H decreased when adding edge " + std::to_string(e));
        }
      }
    }
    return report;
  }

  const unsigned subsets = 1u << m;
  std::vector<double> h(subsets);
  std::vector<double> reward, cost_term;
  if (options.per_realization) {
    reward.resize(static_cast<std::size_t>(subsets) * ns);
    cost_term.resize(static_cast<std::size_t>(subsets) * ns);
  }
  for (unsigned mask = 0; mask < subsets; ++mask) {
    const EdgeSet s = subset(ground, mask);
    const UtilitySamples parts = utility_samples(s, panel, graph);
    std::vector<double> f(ns);
    for (int j = 0; j < ns; ++j) {
      f[j] = UtilityParts{parts.reward[j], parts.cost_term[j]}.combine(cfg.beta);
    }
    h[mask] = h_from_utilities(f, tau, cfg.alpha);
    if (options.per_realization) {
      std::copy(parts.reward.begin(), parts.reward.end(),
                reward.begin() + static_cast<std::size_t>(mask) * ns);
      std::copy(parts.cost_term.begin(), parts.cost_term.end(),
                cost_term.begin() + static_cast<std::size_t>(mask) * ns);
    }
  }
  auto util = [&](unsigned mask, int j) {
    const std::size_t at = static_cast<std::size_t>(mask) * ns + j;
    return UtilityParts{reward[at], cost_term[at]}.combine(cfg.beta);
  };

  // Monotonicity: every subset against every one-element extension.
  for (unsigned mask = 0; mask < subsets; ++mask) {
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) continue;
      const unsigned bigger = mask | (1u << i);
      ++report.monotone_checks;
      if (violates(h[bigger], h[mask], tol)) {
        ++report.h_monotone_violations;
        note("H(" + describe(ground, bigger) + ") < H(" + describe(ground, mask) + ")");
      }
      if (!options.per_realization) continue;
      for (int j = 0; j < ns; ++j) {
        if (violates(util(bigger, j), util(mask, j), tol)) {
          ++report.utility_monotone_violations;
          note("f(" + describe(ground, bigger) + ", y" + std::to_string(j) +
               ") < f(" + describe(ground, mask) + ")");
        }
      }
    }
  }

  // The set-pair inequality over all ordered pairs. Per-realization checks
  // run on every pair while that stays within budget, otherwise on the
  // pairs (S + a, S + b), which is an equivalent characterization.
  const bool all_pairs_per_sample =
      static_cast<double>(subsets) * subsets * ns <= 1.2e8;
  if (options.per_realization && !all_pairs_per_sample) report.exhaustive = false;

  auto check_samples = [&](unsigned s, unsigned t) {
    const unsigned uni = s | t;
    const unsigned inter = s & t;
    for (int j = 0; j < ns; ++j) {
      if (violates(util(s, j) + util(t, j), util(uni, j) + util(inter, j), tol)) {
        ++report.utility_violations;
        note("f pair violation S=" + describe(ground, s) + " T=" +
             describe(ground, t) + " y" + std::to_string(j));
      }
      const auto at = [&](unsigned mask) {
        return static_cast<std::size_t>(mask) * ns + j;
      };
      if (violates(reward[at(s)] + reward[at(t)], reward[at(uni)] + reward[at(inter)],
                   tol)) {
        ++report.reward_violations;
        note("reward pair violation S=" + describe(ground, s) + " T=" +
             describe(ground, t));
      }
      const double err = std::abs(cost_term[at(uni)] + cost_term[at(inter)] -
                                  cost_term[at(s)] - cost_term[at(t)]);
      report.cost_modularity_error = std::max(report.cost_modularity_error, err);
    }
  };

  for (unsigned s = 0; s < subsets; ++s) {
    for (unsigned t = 0; t < subsets; ++t) {
      ++report.pairs_checked;
      if (violates(h[s] + h[t], h[s | t] + h[s & t], tol)) {
        ++report.h_violations;
        note("H pair violation S=" + describe(ground, s) + " T=" +
             describe(ground, t));
      }
      if (options.per_realization && all_pairs_per_sample) check_samples(s, t);
    }
  }
  if (options.per_realization && !all_pairs_per_sample) {
    for (unsigned s = 0; s < subsets; ++s) {
      for (int a = 0; a < m; ++a) {
        if (s & (1u << a)) continue;
        for (int b = a + 1; b < m; ++b) {
          if (s & (1u << b)) continue;
          check_samples(s | (1u << a), s | (1u << b));
        }
      }
    }
  }
  return report;
}

}  // namespace ratsp

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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ratsp/graph.hpp"
#include "ratsp/risk.hpp"
#include "support.hpp"

namespace ratsp {
namespace {

using testing::for_each_case;
using testing::small_instance;
using testing::uniform;

// Sort-and-average references, written without tail_count.
double ref_var(std::vector<double> v, double alpha) {
  std::sort(v.begin(), v.end());
  const int k = std::max(1, static_cast<int>(std::ceil(alpha * v.size() - 1e-12)));
  return v[k - 1];
}

double ref_cvar(std::vector<double> v, double alpha) {
  std::sort(v.begin(), v.end());
  const int k = std::max(1, static_cast<int>(std::ceil(alpha * v.size() - 1e-12)));
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += v[i];
  return s / k;
}

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }
double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double truncated_mean(double mu, double sd, double lo, double hi) {
  const double a = (lo - mu) / sd, b = (hi - mu) / sd;
  const double pb = std::isinf(b) ? 0.0 : phi(b);
  const double Pb = std::isinf(b) ? 1.0 : Phi(b);
  return mu + sd * (phi(a) - pb) / (Pb - Phi(a));
}

// Independent sampler: plain rejection with a different engine.
double oracle_mean(double mu, double sd, double lo, double hi, int draws,
                   std::uint64_t seed) {
  if (sd == 0.0) return std::clamp(mu, lo, hi);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mu, sd);
  double sum = 0.0;
  for (int i = 0; i < draws;) {
    const double x = normal(rng);
    if (x < lo || x > hi) continue;
    sum += x;
    ++i;
  }
  return sum / draws;
}

TEST(EmpiricalRisk, SpecExamples) {
  EXPECT_EQ(empirical_var(std::vector<double>{5, 5, 5, 5}, 0.5), 5.0);
  std::vector<double> ten(10);
  std::iota(ten.begin(), ten.end(), 1.0);
  EXPECT_EQ(empirical_var(ten, 0.2), 2.0);
  EXPECT_EQ(empirical_var(ten, 1.0), 10.0);
  EXPECT_EQ(empirical_cvar(ten, 0.2), 1.5);
  EXPECT_DOUBLE_EQ(empirical_cvar(ten, 1.0), 5.5);
  EXPECT_EQ(empirical_cvar(std::vector<double>(7, 3.25), 0.3), 3.25);
}

TEST(EmpiricalRisk, TailCountAtExactProducts) {
  EXPECT_EQ(tail_count(250, 0.2), 50);
  EXPECT_EQ(tail_count(10, 0.3), 3);  // 0.3 * 10 rounds to 3.0000000000000004
  EXPECT_EQ(tail_count(10, 0.7), 7);
  EXPECT_EQ(tail_count(10, 0.01), 1);
  EXPECT_EQ(tail_count(3, 1.0), 3);
}

TEST(EmpiricalRisk, RejectsBadInput) {
  EXPECT_THROW(empirical_var(std::vector<double>{}, 0.5), std::invalid_argument);
  EXPECT_THROW(empirical_cvar(std::vector<double>{1.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(empirical_cvar(std::vector<double>{1.0}, 1.5), std::invalid_argument);
}

TEST(EmpiricalRiskProperty, MatchesSortAndAverage) {
  for_each_case(1000, 404, [](SplitMix64& rng, int) {
    const int n = testing::uniform_int(rng, 1, 300);
    std::vector<double> v(n);
    for (double& x : v) x = uniform(rng, -50.0, 150.0);
    const double alpha = uniform(rng, 1e-3, 1.0);
    ASSERT_NEAR(empirical_var(v, alpha), ref_var(v, alpha), 1e-12);
    ASSERT_NEAR(empirical_cvar(v, alpha), ref_cvar(v, alpha), 1e-12);
    ASSERT_LE(empirical_cvar(v, alpha), empirical_var(v, alpha) + 1e-12);
  });
}

TEST(TruncatedGaussian, RejectionBranchMatchesClosedFormMean) {
  const TruncatedGaussian d{1.0, 2.0, 0.0, 3.0};
  ASSERT_GE(d.acceptance_mass(), 0.01);
  SplitMix64 rng(5);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_truncated(d, rng);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 3.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, truncated_mean(1.0, 2.0, 0.0, 3.0), 4.0 * se);
}

TEST(TruncatedGaussian, InverseCdfBranchMatchesClosedFormMean) {
  for (const TruncatedGaussian& d :
       {TruncatedGaussian{0.0, 1.0, 3.0, 4.0},
        TruncatedGaussian{0.0, 1.0, -INFINITY, -3.0},
        TruncatedGaussian{10.0, 0.5, 0.0, 8.5}}) {
    ASSERT_LT(d.acceptance_mass(), 0.01);
    SplitMix64 rng(6);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = sample_truncated(d, rng);
      ASSERT_GE(x, d.lo);
      ASSERT_LE(x, d.hi);
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    EXPECT_NEAR(mean, truncated_mean(d.mean, d.stddev, d.lo, d.hi), 4.0 * se);
  }
}

TEST(TruncatedGaussian, ZeroDeviationClampsMean) {
  SplitMix64 rng(1);
  EXPECT_EQ(sample_truncated({4.0, 0.0, 0.0, 10.0}, rng), 4.0);
  EXPECT_EQ(sample_truncated({12.0, 0.0, 0.0, 10.0}, rng), 10.0);
  EXPECT_THROW(sample_truncated({0.0, 1.0, 2.0, 1.0}, rng), std::invalid_argument);
}

TEST(NoisePanel, ZeroVarianceEqualsMeans) {
  const Instance inst = small_instance(5, 3, 2.0, 0.0, 0.0);
  const NoisePanel p = make_noise_panel(inst.graph, 20, 9);
  for (int j = 0; j < 20; ++j) {
    for (int c = 0; c < inst.graph.num_cells(); ++c) {
      ASSERT_EQ(p.cell_reward(j, c), inst.graph.cell_means()[c]);
    }
    for (int e = 0; e < inst.graph.num_edges(); ++e) {
      ASSERT_EQ(p.edge_cost(j, e), inst.graph.edge(e).cost_mean);
    }
  }
}

TEST(NoisePanel, DeterministicAndKeyedPerEntry) {
  const Instance inst = small_instance(5, 4);
  const NoisePanel a = make_noise_panel(inst.graph, 30, 17);
  const NoisePanel b = make_noise_panel(inst.graph, 30, 17);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, make_noise_panel(inst.graph, 30, 18));
  // A longer panel extends a shorter one; entries are drawn independently.
  const NoisePanel longer = make_noise_panel(inst.graph, 60, 17);
  for (int j = 0; j < 30; ++j) {
    for (int c = 0; c < inst.graph.num_cells(); c += 7) {
      ASSERT_EQ(a.cell_reward(j, c), longer.cell_reward(j, c));
      ASSERT_EQ(a.cell_reward(j, c), sample_cell_reward(inst.graph, c, j, 17));
    }
    for (int e = 0; e < inst.graph.num_edges(); ++e) {
      ASSERT_EQ(a.edge_cost(j, e), longer.edge_cost(j, e));
    }
  }
  EXPECT_THROW(make_noise_panel(inst.graph, 0, 1), std::invalid_argument);
}

TEST(NoisePanel, SamplesRespectTruncation) {
  const Instance inst = small_instance(6, 5, 2.0, 2.0, 2.0);
  const NoisePanel p = make_noise_panel(inst.graph, 100, 3);
  const double cap = inst.graph.cost_cap();
  for (int j = 0; j < 100; ++j) {
    for (int c = 0; c < inst.graph.num_cells(); ++c) ASSERT_GE(p.cell_reward(j, c), 0.0);
    for (int e = 0; e < inst.graph.num_edges(); ++e) {
      ASSERT_GE(p.edge_cost(j, e), 0.0);
      ASSERT_LE(p.edge_cost(j, e), cap);
    }
  }
}

TEST(NoisePanel, EdgeCostMeansMatchIndependentSampler) {
  const Instance inst = random_instance(kPaperSites, 42, paper_spec());
  const StochasticGraph& g = inst.graph;
  const int ns = 250;
  const NoisePanel p = make_noise_panel(g, ns, 42);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto s = p.edge_samples(e);
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / ns;
    double var = 0.0;
    for (double x : s) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (ns - 1) / ns);
    const EdgeModel& m = g.edge(e);
    const double sd = std::sqrt(g.cost_var_coeff() * (g.cost_cap() - m.cost_mean));
    const double oracle = oracle_mean(m.cost_mean, sd, 0.0, g.cost_cap(), 1000000, 77 + e);
    if (sd == 0.0) {
      EXPECT_EQ(mean, oracle);
    } else {
      EXPECT_NEAR(mean, oracle, 3.0 * se) << "edge " << e;
    }
  }
}

TEST(Utility, EmptySetIsZero) {
  const Instance inst = small_instance(5, 6);
  const NoisePanel p = make_noise_panel(inst.graph, 25, 1);
  for (int j = 0; j < 25; ++j) {
    EXPECT_EQ(utility({}, p, j, inst.graph, {0.5, 0.5}), 0.0);
  }
}

TEST(Utility, CostOnlyZeroVariance) {
  const Instance inst = small_instance(5, 7, 2.0, 0.0, 0.0);
  const StochasticGraph& g = inst.graph;
  const NoisePanel p = make_noise_panel(g, 5, 1);
  const EdgeSet s{0, 4, 7};
  const double expected = 3 * g.cost_cap() - g.edge(0).cost_mean -
                          g.edge(4).cost_mean - g.edge(7).cost_mean;
  for (int j = 0; j < 5; ++j) {
    EXPECT_NEAR(utility(s, p, j, g, {0.5, 1.0}), expected, 1e-12);
  }
}

TEST(Utility, OverlapCountsCellsOnce) {
  // Two edges leaving the same site share the cells around it.
  const InfoMap map = generate_map(20, 20, std::vector<Blob>{{{10, 10}, 1.0, 6.0}}, 0);
  const std::vector<Point2D> sites = {{10, 10}, {16, 10}, {10, 16}};
  GraphParams params;
  params.reward_var_coeff = 0.0;
  params.cost_var_coeff = 0.0;
  const StochasticGraph g = build_graph(map, sites, params);
  const NoisePanel p = make_noise_panel(g, 3, 1);
  const int e01 = g.edge_index(0, 1), e02 = g.edge_index(0, 2);
  const RiskConfig reward_only{1.0, 0.0};
  const double both = utility({e01, e02}, p, 0, g, reward_only);
  const double sum = utility({e01}, p, 0, g, reward_only) +
                     utility({e02}, p, 0, g, reward_only);
  EXPECT_LT(both, sum - 1e-9);
  // Reference: sum over the union of the cells.
  std::vector<int> cells = g.edge(e01).sensed;
  cells.insert(cells.end(), g.edge(e02).sensed.begin(), g.edge(e02).sensed.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  double ref = 0.0;
  for (int c : cells) ref += g.cell_means()[c];
  EXPECT_NEAR(both, ref, 1e-9);
}

TEST(Utility, RejectsBadSampleIndex) {
  const Instance inst = small_instance(4, 8);
  const NoisePanel p = make_noise_panel(inst.graph, 4, 1);
  EXPECT_THROW(utility({0}, p, 4, inst.graph, {}), std::out_of_range);
  EXPECT_THROW(utility({0}, p, -1, inst.graph, {}), std::out_of_range);
}

TEST(Utility, OutOfSampleDrawsMatchFullPanel) {
  const Instance inst = small_instance(6, 10);
  const NoisePanel p = make_noise_panel(inst.graph, 40, 23);
  const EdgeSet s{1, 5, 9, 12};
  const auto sparse = sample_utility_parts(s, inst.graph, 40, 23);
  for (int j = 0; j < 40; ++j) {
    const UtilityParts full = utility_parts(s, p, j, inst.graph);
    ASSERT_EQ(sparse[j].reward, full.reward);
    ASSERT_EQ(sparse[j].cost_term, full.cost_term);
  }
}

TEST(EstimateH, ClosedForms) {
  const Instance inst = small_instance(5, 11);
  const StochasticGraph& g = inst.graph;
  const NoisePanel p = make_noise_panel(g, 50, 2);
  const RiskConfig cfg{0.3, 0.5};
  EXPECT_EQ(estimate_H({0, 3, 6}, 0.0, p, g, cfg), 0.0);
  for (double tau : {0.0, 1.0, 7.5, 40.0}) {
    EXPECT_NEAR(estimate_H({}, tau, p, g, cfg), tau * (1.0 - 1.0 / 0.3), 1e-12);
  }
  EXPECT_THROW(estimate_H({0}, -1.0, p, g, cfg), std::invalid_argument);
}

TEST(EstimateH, DeterministicUtilityPeaksAtItsValue) {
  // f == v exactly: H(tau) = tau - (tau - v)^+ / alpha.
  const std::vector<double> f(30, 7.0);
  const TauGrid grid{20.0, 1.0};
  for (double alpha : {0.1, 0.5, 1.0}) {
    const TauOptimum opt = max_h_over_grid(f, alpha, grid);
    EXPECT_EQ(opt.tau, 7.0);
    EXPECT_EQ(opt.h, 7.0);
    for (double tau = 0; tau <= 20; tau += 0.5) {
      EXPECT_NEAR(h_from_utilities(f, tau, alpha),
                  tau - std::max(0.0, tau - 7.0) / alpha, 1e-12);
    }
  }
}

TEST(EstimateH, ZeroVarianceTourPeaksAtItsUtility) {
  const Instance inst = small_instance(5, 12, 2.0, 0.0, 0.0);
  const StochasticGraph& g = inst.graph;
  const NoisePanel p = make_noise_panel(g, 10, 2);
  const EdgeSet s{0, 4, 7, 9};
  const RiskConfig cfg{0.4, 1.0};
  const double v = utility(s, p, 0, g, cfg);
  const TauOptimum opt = max_H_over_tau(s, p, g, cfg, {std::ceil(v) + 5, 0.001});
  EXPECT_NEAR(opt.h, v, 0.001 * (1.0 / 0.4 - 1.0) + 1e-9);
  EXPECT_NEAR(opt.tau, v, 0.001);
}

TEST(TauGridTest, SizeAndValidation) {
  EXPECT_EQ((TauGrid{200, 1}).size(), 201);
  EXPECT_EQ((TauGrid{1, 0.1}).size(), 11);
  EXPECT_EQ((TauGrid{10, 3}).size(), 5);  // 0, 3, 6, 9, 12
  EXPECT_EQ((TauGrid{0, 1}).size(), 1);
  EXPECT_THROW((TauGrid{10, 0}).validate(), std::invalid_argument);
  EXPECT_THROW((TauGrid{1, 2}).validate(), std::invalid_argument);
  EXPECT_THROW((TauGrid{-1, 1}).validate(), std::invalid_argument);
}

TEST(MaxHOverTau, RiskNeutralGivesSampleMean) {
  const Instance inst = small_instance(5, 13);
  const StochasticGraph& g = inst.graph;
  const NoisePanel p = make_noise_panel(g, 200, 3);
  const EdgeSet s{0, 2, 5, 8};
  const RiskConfig cfg{1.0, 0.5};
  const auto f = utilities(s, p, g, cfg);
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / f.size();
  const TauOptimum opt = max_H_over_tau(s, p, g, cfg, {100.0, 0.5});
  EXPECT_NEAR(opt.h, mean, 1e-9);
}

// Exact maximum over real tau: the k-th order statistic carries the
// fractional weight alpha * n - (k - 1).
double continuous_max_h(std::vector<double> f, double alpha) {
  std::sort(f.begin(), f.end());
  const double an = alpha * f.size();
  const int k = std::max(1, static_cast<int>(std::ceil(an - 1e-9)));
  double s = 0.0;
  for (int i = 0; i + 1 < k; ++i) s += f[i];
  return (s + (an - (k - 1)) * f[k - 1]) / an;
}

TEST(MaxHOverTauProperty, WithinOneStepOfContinuousMaximum) {
  for_each_case(40, 505, [](SplitMix64& rng, int) {
    const Instance inst = small_instance(testing::uniform_int(rng, 4, 6), rng());
    const StochasticGraph& g = inst.graph;
    const NoisePanel p = make_noise_panel(g, 100, rng());
    EdgeSet s;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (uniform(rng, 0, 1) < 0.5) s.insert(e);
    }
    const RiskConfig cfg{uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 1.0)};
    const double step = 0.25;
    const auto f = utilities(s, p, g, cfg);
    const TauOptimum opt = max_h_over_grid(f, cfg.alpha, {200.0, step});
    const double exact = continuous_max_h(f, cfg.alpha);
    ASSERT_LE(opt.h, exact + 1e-9);
    ASSERT_GE(opt.h, exact - step * (1.0 / cfg.alpha - 1.0) - 1e-9);
    // Never above the tail mean of the ceil(alpha n) smallest.
    ASSERT_LE(exact, empirical_cvar(f, cfg.alpha) + 1e-9);
  });
}

TEST(MaxHOverTauProperty, IntegralTailMatchesCvar) {
  for_each_case(40, 515, [](SplitMix64& rng, int) {
    const Instance inst = small_instance(5, rng());
    const NoisePanel p = make_noise_panel(inst.graph, 100, rng());
    const EdgeSet s{0, 3, 5, 8};
    const RiskConfig cfg{testing::uniform_int(rng, 1, 100) / 100.0, 0.5};
    const double step = 0.25;
    const auto f = utilities(s, p, inst.graph, cfg);
    const double cvar = empirical_cvar(f, cfg.alpha);
    const TauOptimum opt = max_h_over_grid(f, cfg.alpha, {200.0, step});
    ASSERT_NEAR(continuous_max_h(f, cfg.alpha), cvar, 1e-9);
    ASSERT_LE(opt.h, cvar + 1e-9);
    ASSERT_GE(opt.h, cvar - step * (1.0 / cfg.alpha - 1.0) - 1e-9);
  });
}

TEST(EstimateHProperty, MonotoneSubmodularConcave) {
  for_each_case(60, 606, [](SplitMix64& rng, int) {
    const Instance inst = small_instance(testing::uniform_int(rng, 4, 7), rng());
    const StochasticGraph& g = inst.graph;
    const NoisePanel p = make_noise_panel(g, 60, rng());
    const RiskConfig cfg{uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 1.0)};
    const double tau = uniform(rng, 0.0, 80.0);
    const int m = g.num_edges();
    EdgeSet small, big;
    for (int e = 0; e < m; ++e) {
      const double u = uniform(rng, 0, 1);
      if (u < 0.25) small.insert(e);
      if (u < 0.6) big.insert(e);
    }
    for (int e = 0; e < m; ++e) {
      if (big.contains(e)) continue;
      const double gs = estimate_H(small.with(e), tau, p, g, cfg) -
                        estimate_H(small, tau, p, g, cfg);
      const double gb = estimate_H(big.with(e), tau, p, g, cfg) -
                        estimate_H(big, tau, p, g, cfg);
      ASSERT_GE(gb, -1e-9);
      ASSERT_GE(gs, gb - 1e-9);
    }
    const auto f = utilities(big, p, g, cfg);
    const double h = 0.37;
    for (int i = 1; i < 300; ++i) {
      const double d2 = h_from_utilities(f, (i + 1) * h, cfg.alpha) -
                        2.0 * h_from_utilities(f, i * h, cfg.alpha) +
                        h_from_utilities(f, (i - 1) * h, cfg.alpha);
      ASSERT_LE(d2, 1e-9);
    }
  });
}

}  // namespace
}  // namespace ratsp

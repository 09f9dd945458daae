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


// Experiment drivers behind the ratsp tool: sweeps over (alpha, beta, seed),
// H-vs-tau curves, runtime benchmarks and oracle verification. Each returns
// plain rows; the writers emit CSV with round-trip precision.

#ifndef RATSP_CLI_HPP_
#define RATSP_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratsp/graph.hpp"
#include "ratsp/instance.hpp"
#include "ratsp/oracle.hpp"
#include "ratsp/risk.hpp"
#include "ratsp/solver.hpp"

namespace ratsp {

struct SweepSpec {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<std::uint64_t> seeds;
  int eval_samples = 5000;

  void validate() const;
};

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  double mean_reward = 0.0;     // f_r
  double mean_cost_term = 0.0;  // f_c = |S| C - c(S, y)
  double mean_utility = 0.0;
  double cvar = 0.0;  // empirical CVaR_alpha of the evaluation samples
  double tau = 0.0;
  double h_max = 0.0;
  std::string tour;
};

struct SweepOutput {
  std::vector<SweepRow> rows;
  // Evaluation draws per row, parallel to `rows`.
  std::vector<std::vector<UtilityParts>> samples;
};

// Seed of the out-of-sample evaluation stream for a solve seed. Disjoint
// from the solve panel's substreams.
std::uint64_t evaluation_seed(std::uint64_t seed);

// base supplies gamma, samples; alpha, beta and seed come from `spec`.
// Rows are sorted by (alpha, beta, seed).
SweepOutput run_sweep(const StochasticGraph& graph, const SolverConfig& base,
                      const SweepSpec& spec);

struct HCurvePoint {
  double alpha = 0.0;
  double tau = 0.0;
  double h = 0.0;
};

struct HCurveOutput {
  EdgeSet tour;
  std::vector<HCurvePoint> points;  // grouped by alpha, tau ascending
};

// H(tour, tau) on the base panel for every alpha and grid tau. Without a
// tour, one is solved first with `base`.
HCurveOutput run_hcurve(const StochasticGraph& graph, const SolverConfig& base,
                        const std::vector<double>& alphas,
                        const std::optional<EdgeSet>& tour = std::nullopt);

// Largest second difference H[i+1] - 2 H[i] + H[i-1] within any alpha column.
double max_second_difference(const std::vector<HCurvePoint>& points);

struct BenchSpec {
  std::vector<int> sizes;
  std::vector<double> alphas;
  int repetitions = 3;
  std::uint64_t seed = 42;
  InstanceSpec instance;

  void validate() const;
};

struct BenchRow {
  int num_vertices = 0;
  double alpha = 0.0;
  int repetition = 0;
  double seconds = 0.0;
  int iterations_run = 0;
  std::string tour;
};

struct BenchSlope {
  double alpha = 0.0;
  double slope = 0.0;  // least squares of log(median seconds) on log |V|
};

struct BenchOutput {
  std::vector<BenchRow> rows;
  std::vector<BenchSlope> slopes;
};

// base supplies beta, gamma and samples; the solve seed is spec.seed.
BenchOutput run_bench(const BenchSpec& spec, const SolverConfig& base);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct VerifyReport {
  SolveResult greedy;
  BruteForceResult optimum;
  CurvatureReport curvature;
  BoundCheck bound;
  SubmodularityReport submodularity;
  // H_opt >= H_greedy up to rounding.
  bool dominated = false;

  bool ok() const { return bound.holds && submodularity.ok() && dominated; }
};

// Throws std::invalid_argument when |V| is outside the enumeration range.
VerifyReport run_verify(const StochasticGraph& graph, const SolverConfig& cfg);

void write_sweep_csv(std::ostream& out, const SweepOutput& sweep);
void write_samples_csv(std::ostream& out, const SweepOutput& sweep);
void write_hcurve_csv(std::ostream& out, const std::vector<HCurvePoint>& points);
void write_bench_csv(std::ostream& out, const BenchOutput& bench);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace ratsp

#endif  // RATSP_CLI_HPP_

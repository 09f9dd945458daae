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
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "ratsp/cli.hpp"
#include "ratsp/io.hpp"
#include "support.hpp"

#ifndef RATSP_TOOL
#error "RATSP_TOOL must name the ratsp executable"
#endif
#ifndef RATSP_DATA_DIR
#error "RATSP_DATA_DIR must name the data directory"
#endif

namespace ratsp {
namespace {

namespace fs = std::filesystem;

const fs::path kFixture = fs::path(RATSP_DATA_DIR) / "paper8.json";

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "ratsp_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(RATSP_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SolverConfig quick_config() {
  SolverConfig cfg;
  cfg.num_samples = 60;
  return cfg;
}

TEST(Sweep, RowsAreRecomputableFromSamples) {
  const Instance inst = testing::small_instance(6, 3);
  SweepSpec spec;
  spec.alphas = {0.7, 0.2};
  spec.betas = {1.0, 0.0, 0.5};
  spec.seeds = {5, 4};
  spec.eval_samples = 300;
  const SweepOutput out = run_sweep(inst.graph, quick_config(), spec);
  ASSERT_EQ(out.rows.size(), 12u);
  ASSERT_EQ(out.samples.size(), 12u);
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const SweepRow& r = out.rows[i];
    if (i > 0) {
      const SweepRow& p = out.rows[i - 1];
      ASSERT_TRUE(std::tie(p.alpha, p.beta, p.seed) < std::tie(r.alpha, r.beta, r.seed));
    }
    std::vector<double> f;
    double fr = 0.0, fc = 0.0;
    for (const UtilityParts& u : out.samples[i]) {
      fr += u.reward;
      fc += u.cost_term;
      f.push_back((1.0 - r.beta) * u.reward + r.beta * u.cost_term);
    }
    const double n = static_cast<double>(f.size());
    EXPECT_NEAR(r.mean_reward, fr / n, 1e-9);
    EXPECT_NEAR(r.mean_cost_term, fc / n, 1e-9);
    EXPECT_NEAR(r.mean_utility, std::accumulate(f.begin(), f.end(), 0.0) / n, 1e-9);
    std::sort(f.begin(), f.end());
    const int k = static_cast<int>(std::ceil(r.alpha * n - 1e-9));
    EXPECT_NEAR(r.cvar, std::accumulate(f.begin(), f.begin() + k, 0.0) / k, 1e-9);
  }
}

TEST(Sweep, CostOnlyColumnMatchesDirectSolve) {
  const Instance inst = testing::small_instance(6, 4);
  SweepSpec spec;
  spec.alphas = {0.3, 1.0};
  spec.betas = {1.0};
  spec.seeds = {42};
  spec.eval_samples = 50;
  const SolverConfig base = quick_config();
  const SweepOutput out = run_sweep(inst.graph, base, spec);
  for (const SweepRow& r : out.rows) {
    SolverConfig cfg = base;
    cfg.risk = {r.alpha, 1.0};
    cfg.seed = r.seed;
    const SolveResult direct = raga_solve(inst.graph, cfg);
    EXPECT_EQ(r.tour, tour_label(direct.best_edges, inst.graph));
  }
}

TEST(Sweep, EvaluationIsOutOfSample) {
  EXPECT_NE(evaluation_seed(42), 42u);
  EXPECT_NE(evaluation_seed(42), evaluation_seed(43));
  SweepSpec bad;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {{0.5}, {1.5}, {1}, 10};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(HCurve, ColumnsAreConcaveAndStartAtZero) {
  const StochasticGraph g = load_graph(kFixture);
  SolverConfig base;
  const std::vector<double> alphas = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
  const HCurveOutput out = run_hcurve(g, base, alphas);
  ASSERT_EQ(out.points.size(), alphas.size() * 201);
  EXPECT_LE(max_second_difference(out.points), 1e-9);
  double prev_argmax = -1.0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const auto first = out.points.begin() + a * 201;
    EXPECT_EQ(first->tau, 0.0);
    EXPECT_EQ(first->h, 0.0);
    const auto best = std::max_element(first, first + 201, [](const auto& x, const auto& y) {
      return x.h < y.h;
    });
    EXPECT_GE(best->tau, prev_argmax) << "alpha " << alphas[a];
    prev_argmax = best->tau;
  }
}

TEST(HCurve, RiskNeutralDeterministicIsMinTauV) {
  const Instance inst = testing::small_instance(5, 6, 2.0, 0.0, 0.0);
  SolverConfig base;
  base.num_samples = 5;
  base.grid = {80.0, 0.5};
  const HCurveOutput out = run_hcurve(inst.graph, base, {1.0});
  const NoisePanel p = make_noise_panel(inst.graph, 5, base.seed);
  const double v = utility(out.tour, p, 0, inst.graph, base.risk);
  for (const HCurvePoint& pt : out.points) {
    ASSERT_NEAR(pt.h, std::min(pt.tau, v), 1e-9);
  }
  EXPECT_THROW(run_hcurve(inst.graph, base, {1.0}, EdgeSet{0, 1}), std::invalid_argument);
}

TEST(Bench, SlopeFitAndRepeatableTours) {
  EXPECT_NEAR(loglog_slope({2, 4, 8, 16}, {3, 24, 192, 1536}), 3.0, 1e-12);
  BenchSpec spec;
  spec.sizes = {4, 6};
  spec.alphas = {0.1, 0.9};
  spec.repetitions = 2;
  spec.instance.width = spec.instance.height = 40;
  SolverConfig base;
  base.num_samples = 30;
  const BenchOutput out = run_bench(spec, base);
  ASSERT_EQ(out.rows.size(), 8u);
  for (std::size_t i = 0; i < out.rows.size(); i += 2) {
    EXPECT_EQ(out.rows[i].tour, out.rows[i + 1].tour);
    EXPECT_EQ(out.rows[i].iterations_run, out.rows[i + 1].iterations_run);
  }
  ASSERT_EQ(out.slopes.size(), 2u);
  EXPECT_TRUE(std::isfinite(out.slopes[0].slope));
  spec.sizes = {2};
  EXPECT_THROW(run_bench(spec, base), std::invalid_argument);
}

TEST(Verify, RandomInstancesPass) {
  for (double alpha : {0.3, 1.0}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Instance inst = random_instance(5, seed, paper_spec());
      SolverConfig cfg;
      cfg.risk.alpha = alpha;
      const VerifyReport r = run_verify(inst.graph, cfg);
      EXPECT_TRUE(r.ok()) << "alpha " << alpha << " seed " << seed;
      EXPECT_TRUE(r.bound.holds);
      EXPECT_TRUE(r.dominated);
    }
  }
}

TEST(Verify, GuardAndModularCurvature) {
  const Instance big = random_instance(12, 1, paper_spec());
  EXPECT_THROW(run_verify(big.graph, SolverConfig{}), std::invalid_argument);

  // Every edge costs 4 with cap 10 and nothing is sensed: f = 30 for every
  // tour, and at alpha = 1 the optimum sits at tau = 30, where nothing clips.
  std::vector<Point2D> v;
  for (int i = 0; i < 5; ++i) v.push_back({std::cos(1.2566 * i), std::sin(1.2566 * i)});
  std::vector<EdgeModel> edges;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      EdgeModel m;
      m.u = a;
      m.v = b;
      m.cost_mean = 4.0;
      edges.push_back(m);
    }
  }
  const StochasticGraph flat(v, edges, {}, {}, 10.0, 0.0, 0.0, 1.0);
  SolverConfig cfg;
  cfg.risk = {1.0, 1.0};
  cfg.num_samples = 10;
  const VerifyReport r = run_verify(flat, cfg);
  EXPECT_EQ(r.optimum.best_tau, 30.0);
  EXPECT_NEAR(r.curvature.k, 0.0, 1e-12);
  EXPECT_TRUE(r.ok());
}

TEST(Csv, DoublesRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456.789, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Tool, ExitCodes) {
  const fs::path dir = scratch();
  EXPECT_EQ(run_tool("solve --graph " + kFixture.string() + " --alpha 0"), 2);
  EXPECT_EQ(run_tool("solve --graph " + kFixture.string() + " --beta 1.5"), 2);
  EXPECT_EQ(run_tool("solve --graph " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_tool("build-graph --sites 2 --out " + (dir / "g.json").string()), 2);
  EXPECT_EQ(run_tool("no-such-command"), 2);
  EXPECT_EQ(run_tool("solve"), 2);
  EXPECT_EQ(run_tool("build-graph --sites 12 --out " + (dir / "g12.json").string()), 0);
  EXPECT_EQ(run_tool("verify --graph " + (dir / "g12.json").string()), 2);
  EXPECT_EQ(run_tool("verify --random 5 --instance-seeds 1,2 --alpha 0.3"), 0);
  EXPECT_EQ(run_tool("--help"), 0);
}

TEST(Tool, OutputsAreByteIdenticalAcrossRuns) {
  const fs::path dir = scratch();
  const std::string g = kFixture.string();
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve --graph " + g + " --out ", "solve"},
      {"hcurve --graph " + g + " --alphas 0.2,1 --out ", "hcurve"},
      {"sweep --graph " + g + " --alphas 0.5 --betas 0,1 --eval-samples 200 --out ",
       "sweep"},
      {"gen-map --seed 3 --out ", "map"}};
  for (const auto& [cmd, name] : commands) {
    const fs::path a = dir / (name + "_a"), b = dir / (name + "_b");
    ASSERT_EQ(run_tool(cmd + a.string()), 0) << cmd;
    ASSERT_EQ(run_tool(cmd + b.string()), 0) << cmd;
    EXPECT_EQ(slurp(a), slurp(b)) << cmd;
    EXPECT_FALSE(slurp(a).empty()) << cmd;
  }
}

TEST(Tool, SolveOnFixtureGivesPositiveTour) {
  const fs::path out = scratch() / "fixture_result.json";
  ASSERT_EQ(run_tool("solve --graph " + kFixture.string() + " --out " + out.string()), 0);
  const nlohmann::json j = read_json_file(out);
  EXPECT_EQ(j["tour"].size(), 8u);
  EXPECT_GT(j["H"].get<double>(), 0.0);
  const StochasticGraph g = load_graph(kFixture);
  std::vector<int> cycle = j["tour"].get<std::vector<int>>();
  EXPECT_TRUE(is_hamiltonian_cycle(edges_from_vertices(cycle, g), g));
}

TEST(Tool, MapThenGraphChain) {
  const fs::path dir = scratch();
  ASSERT_EQ(run_tool("gen-map --width 60 --height 40 --seed 9 --out " + (dir / "m.json").string()), 0);
  ASSERT_EQ(run_tool("build-graph --map " + (dir / "m.json").string() +
                     " --sites 6 --radius 1.5 --out " + (dir / "g6.json").string()),
            0);
  const StochasticGraph g = load_graph(dir / "g6.json");
  EXPECT_EQ(g.num_vertices(), 6);
  EXPECT_EQ(g.sensing_radius(), 1.5);
  EXPECT_EQ(g.num_edges(), 15);
}

}  // namespace
}  // namespace ratsp

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


// ratsp: command-line front end.
//
// Exit status: 0 on success, 1 when a verification check fails, 2 on usage,
// input or output errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ratsp/cli.hpp"
#include "ratsp/env.hpp"
#include "ratsp/graph.hpp"
#include "ratsp/instance.hpp"
#include "ratsp/io.hpp"
#include "ratsp/oracle.hpp"
#include "ratsp/solver.hpp"

namespace {

using namespace ratsp;
using nlohmann::json;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveFlags {
  double alpha = 0.5;
  double beta = 0.5;
  double gamma_cap = 200.0;
  double gamma_step = 1.0;
  int samples = 250;
  std::uint64_t seed = 42;
  std::string out;

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.risk = {alpha, beta};
    cfg.grid = {gamma_cap, gamma_step};
    cfg.num_samples = samples;
    cfg.seed = seed;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--alpha", f.alpha, "Risk level in (0, 1]")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Reward/cost weight in [0, 1]")->capture_default_str();
  cmd->add_option("--gamma-cap", f.gamma_cap, "Upper end of the tau grid")->capture_default_str();
  cmd->add_option("--gamma-step", f.gamma_step, "Spacing of the tau grid")->capture_default_str();
  cmd->add_option("--samples", f.samples, "Monte-Carlo samples n_s")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Noise panel seed")->capture_default_str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  return out;
}

EdgeSet parse_tour(const std::string& text, const StochasticGraph& graph) {
  std::vector<int> cycle;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '-')) {
    try {
      std::size_t used = 0;
      cycle.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--tour: expected vertices separated by '-', got \"" + text + "\"");
    }
  }
  for (int v : cycle) {
    if (v < 0 || v >= graph.num_vertices()) {
      throw UsageError("--tour: vertex " + std::to_string(v) + " out of range");
    }
  }
  EdgeSet edges;
  try {
    edges = edges_from_vertices(cycle, graph);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--tour: ") + e.what());
  }
  if (!is_hamiltonian_cycle(edges, graph)) {
    throw UsageError("--tour: \"" + text + "\" is not a Hamiltonian cycle");
  }
  return edges;
}

json verify_json(const VerifyReport& r, const StochasticGraph& graph,
                 const SolverConfig& cfg) {
  json j = bound_to_json(r.bound, cfg);
  j["tau_curvature"] = r.curvature.tau;
  j["zero_singletons"] = r.curvature.zero_singletons.size();
  j["tau_greedy"] = r.greedy.best_tau;
  j["tau_opt"] = r.optimum.best_tau;
  j["tour_greedy"] = r.greedy.updated ? tour_label(r.greedy.best_edges, graph) : "-";
  j["tour_opt"] = tour_label(r.optimum.best_edges, graph);
  j["tours_enumerated"] = r.optimum.all_tours;
  j["dominated"] = r.dominated;
  const SubmodularityReport& s = r.submodularity;
  j["submodularity"] = {{"ok", s.ok()},
                        {"exhaustive", s.exhaustive},
                        {"pairs_checked", s.pairs_checked},
                        {"monotone_checks", s.monotone_checks},
                        {"h_violations", s.h_violations},
                        {"utility_violations", s.utility_violations},
                        {"reward_violations", s.reward_violations},
                        {"h_monotone_violations", s.h_monotone_violations},
                        {"utility_monotone_violations", s.utility_monotone_violations},
                        {"cost_modularity_error", s.cost_modularity_error}};
  if (s.first_violation) j["submodularity"]["first_violation"] = *s.first_violation;
  j["ok"] = r.ok();
  return j;
}

InstanceSpec resolve_spec(const std::string& preset, int width, int height,
                          int blobs, double cell_size, double jitter) {
  InstanceSpec spec;
  try {
    spec = preset_spec(preset);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (width > 0) spec.width = width;
  if (height > 0) spec.height = height;
  if (blobs >= 0) spec.blobs = blobs;
  if (cell_size > 0.0) spec.cell_size = cell_size;
  spec.jitter = jitter;
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"Risk-aware stochastic TSP solver and experiment harness"};
  app.require_subcommand(1);

  // gen-map
  auto* gen_map = app.add_subcommand("gen-map", "Generate a blob information map");
  std::string map_preset = "paper";
  int map_width = 0, map_height = 0, map_blobs = -1;
  double map_cell = 0.0, map_jitter = 0.0;
  std::uint64_t map_seed = 42;
  std::string map_out;
  gen_map->add_option("--preset", map_preset, "paper or scalability")->capture_default_str();
  gen_map->add_option("--width", map_width, "Cells along x (overrides preset)");
  gen_map->add_option("--height", map_height, "Cells along y (overrides preset)");
  gen_map->add_option("--blobs", map_blobs, "Number of density blobs");
  gen_map->add_option("--cell-size", map_cell, "Cell side length");
  gen_map->add_option("--jitter", map_jitter, "Relative multiplicative noise in [0, 1)");
  gen_map->add_option("--seed", map_seed)->capture_default_str();
  gen_map->add_option("--out", map_out, "Map JSON file")->required();

  // build-graph
  auto* build = app.add_subcommand("build-graph", "Build a stochastic graph over random sites");
  std::string bg_preset = "paper", bg_map, bg_out;
  int bg_sites = 0;
  double bg_radius = 0.0, bg_vr = 0.1, bg_vc = 0.1;
  bool bg_raw = false;
  std::uint64_t bg_seed = 42;
  build->add_option("--preset", bg_preset, "paper or scalability")->capture_default_str();
  build->add_option("--map", bg_map, "Map JSON file (default: generate from preset)");
  build->add_option("--sites", bg_sites, "Number of sites (default: preset)");
  build->add_option("--radius", bg_radius, "Sensing radius R (default: preset)");
  build->add_option("--vr", bg_vr, "Reward variance coefficient")->capture_default_str();
  build->add_option("--vc", bg_vc, "Cost variance coefficient")->capture_default_str();
  build->add_flag("--no-normalize", bg_raw, "Keep raw reward and length scales");
  build->add_option("--seed", bg_seed)->capture_default_str();
  build->add_option("--out", bg_out, "Graph JSON file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Run the risk-aware greedy solver");
  SolveFlags solve_flags;
  std::string solve_graph;
  bool solve_trace = false;
  solve->add_option("--graph", solve_graph, "Graph JSON file")->required();
  add_solve_flags(solve, solve_flags);
  solve->add_flag("--trace", solve_trace, "Print the per-tau trace");
  solve->add_option("--out", solve_flags.out, "Result JSON file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Solve over an alpha x beta x seed grid");
  SolveFlags sweep_flags;
  std::string sweep_graph, sweep_samples_out;
  SweepSpec sweep_spec;
  sweep_spec.alphas = {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  sweep_spec.betas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  sweep_spec.seeds = {42};
  sweep->add_option("--graph", sweep_graph, "Graph JSON file")->required();
  add_solve_flags(sweep, sweep_flags);
  sweep->add_option("--alphas", sweep_spec.alphas, "Comma-separated risk levels")->delimiter(',');
  sweep->add_option("--betas", sweep_spec.betas, "Comma-separated weights")->delimiter(',');
  sweep->add_option("--seeds", sweep_spec.seeds, "Comma-separated seeds")->delimiter(',');
  sweep->add_option("--eval-samples", sweep_spec.eval_samples,
                    "Out-of-sample draws per tour")->capture_default_str();
  sweep->add_option("--out", sweep_flags.out, "Summary CSV file")->required();
  sweep->add_option("--samples-out", sweep_samples_out, "Raw sample CSV file");

  // hcurve
  auto* hcurve = app.add_subcommand("hcurve", "Emit H(S, tau) over the tau grid");
  SolveFlags hc_flags;
  std::string hc_graph, hc_tour;
  std::vector<double> hc_alphas = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
  hcurve->add_option("--graph", hc_graph, "Graph JSON file")->required();
  add_solve_flags(hcurve, hc_flags);
  hcurve->add_option("--alphas", hc_alphas, "Comma-separated risk levels")->delimiter(',');
  hcurve->add_option("--tour", hc_tour, "Tour such as 0-3-1-2 (default: solve at --alpha)");
  hcurve->add_option("--out", hc_flags.out, "Curve CSV file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Time the solver over graph sizes");
  SolveFlags bench_flags;
  BenchSpec bench_spec;
  bench_spec.sizes = {5, 6, 7, 8, 10, 12, 14};
  bench_spec.alphas = {0.1, 0.9};
  std::string bench_preset = "paper";
  add_solve_flags(bench, bench_flags);
  bench->add_option("--sizes", bench_spec.sizes, "Comma-separated vertex counts")->delimiter(',');
  bench->add_option("--alphas", bench_spec.alphas, "Comma-separated risk levels")->delimiter(',');
  bench->add_option("--reps", bench_spec.repetitions, "Repetitions per cell")->capture_default_str();
  bench->add_option("--preset", bench_preset, "Instance preset")->capture_default_str();
  bench->add_option("--out", bench_flags.out, "Timing CSV file")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Check the greedy bound against brute force");
  SolveFlags verify_flags;
  std::string verify_graph;
  int verify_random = 0;
  std::vector<std::uint64_t> verify_seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  verify->add_option("--graph", verify_graph, "Graph JSON file");
  verify->add_option("--random", verify_random, "Vertex count of random instances");
  verify->add_option("--instance-seeds", verify_seeds,
                     "Seeds of the random instances")->delimiter(',');
  add_solve_flags(verify, verify_flags);
  verify->add_option("--out", verify_flags.out, "Report JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*gen_map) {
    const InstanceSpec spec = resolve_spec(map_preset, map_width, map_height,
                                           map_blobs, map_cell, map_jitter);
    InfoMap map = [&] {
      try {
        return random_map(spec, map_seed);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    save_map(map_out, map);
    std::cout << "map " << map.width() << "x" << map.height() << " -> " << map_out << "\n";
    return 0;
  }

  if (*build) {
    InstanceSpec spec = resolve_spec(bg_preset, 0, 0, -1, 0.0, 0.0);
    const int sites = bg_sites > 0 ? bg_sites
                      : bg_preset == "scalability" ? kScalabilitySites
                                                   : kPaperSites;
    if (bg_radius > 0.0) spec.params.sensing_radius = bg_radius;
    spec.params.reward_var_coeff = bg_vr;
    spec.params.cost_var_coeff = bg_vc;
    spec.params.normalize = !bg_raw;
    try {
      const InfoMap map = bg_map.empty() ? random_map(spec, bg_seed) : load_map(bg_map);
      const auto points = random_sites(sites, map, bg_seed);
      const StochasticGraph graph = build_graph(map, points, spec.params);
      save_graph(bg_out, graph);
      std::cout << "graph |V|=" << graph.num_vertices() << " |E|="
                << graph.num_edges() << " cells=" << graph.num_cells()
                << " -> " << bg_out << "\n";
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return 0;
  }

  if (*solve) {
    const SolverConfig cfg = solve_flags.config();
    const StochasticGraph graph = load_graph(solve_graph);
    const SolveResult r = raga_solve(graph, cfg);
    if (solve_trace) {
      for (const TraceEntry& t : r.trace) {
        std::cout << "tau " << format_double(t.tau) << " H " << format_double(t.h) << "\n";
      }
    }
    std::cout << "tour " << (r.updated ? tour_label(r.best_edges, graph) : "-") << "\n"
              << "tau " << format_double(r.best_tau) << "\n"
              << "H " << format_double(r.h_max) << "\n"
              << "iterations " << r.iterations_run << "\n";
    if (!solve_flags.out.empty()) write_json_file(solve_flags.out, result_to_json(r, graph));
    return 0;
  }

  if (*sweep) {
    const SolverConfig base = sweep_flags.config();
    try {
      sweep_spec.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const StochasticGraph graph = load_graph(sweep_graph);
    const SweepOutput result = run_sweep(graph, base, sweep_spec);
    auto out = open_out(sweep_flags.out);
    write_sweep_csv(out, result);
    if (!sweep_samples_out.empty()) {
      auto raw = open_out(sweep_samples_out);
      write_samples_csv(raw, result);
    }
    std::cout << result.rows.size() << " rows -> " << sweep_flags.out << "\n";
    return 0;
  }

  if (*hcurve) {
    const SolverConfig base = hc_flags.config();
    for (double a : hc_alphas) {
      if (!(a > 0.0 && a <= 1.0)) throw UsageError("--alphas: values must be in (0, 1]");
    }
    const StochasticGraph graph = load_graph(hc_graph);
    std::optional<EdgeSet> tour;
    if (!hc_tour.empty()) tour = parse_tour(hc_tour, graph);
    const HCurveOutput result = run_hcurve(graph, base, hc_alphas, tour);
    auto out = open_out(hc_flags.out);
    write_hcurve_csv(out, result.points);
    std::cout << "tour " << tour_label(result.tour, graph) << "\n"
              << result.points.size() << " points -> " << hc_flags.out << "\n";
    return 0;
  }

  if (*bench) {
    const SolverConfig base = bench_flags.config();
    bench_spec.seed = bench_flags.seed;
    bench_spec.instance = resolve_spec(bench_preset, 0, 0, -1, 0.0, 0.0);
    try {
      bench_spec.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const BenchOutput result = run_bench(bench_spec, base);
    auto out = open_out(bench_flags.out);
    write_bench_csv(out, result);
    for (const BenchSlope& s : result.slopes) {
      std::cout << "alpha " << format_double(s.alpha) << " log-log slope "
                << format_double(s.slope) << "\n";
    }
    return 0;
  }

  if (*verify) {
    const SolverConfig cfg = verify_flags.config();
    if (verify_graph.empty() == (verify_random == 0)) {
      throw UsageError("verify needs exactly one of --graph or --random");
    }
    const auto guard = [](int n) {
      if (n < kMinEnumerationVertices || n > kMaxEnumerationVertices) {
        throw UsageError("verify supports " + std::to_string(kMinEnumerationVertices) +
                         " to " + std::to_string(kMaxEnumerationVertices) +
                         " vertices, got " + std::to_string(n));
      }
    };
    json report;
    bool all_ok = true;
    if (!verify_graph.empty()) {
      const StochasticGraph graph = load_graph(verify_graph);
      guard(graph.num_vertices());
      const VerifyReport r = run_verify(graph, cfg);
      report = verify_json(r, graph, cfg);
      all_ok = r.ok();
      std::cout << (r.ok() ? "PASS" : "FAIL") << " H_greedy="
                << format_double(r.bound.h_greedy) << " H_opt="
                << format_double(r.bound.h_opt) << " k=" << format_double(r.bound.k)
                << " margin=" << format_double(r.bound.margin) << "\n";
    } else {
      guard(verify_random);
      report = json::array();
      for (std::uint64_t s : verify_seeds) {
        const Instance inst = random_instance(verify_random, s, paper_spec());
        const VerifyReport r = run_verify(inst.graph, cfg);
        json j = verify_json(r, inst.graph, cfg);
        j["instance_seed"] = s;
        report.push_back(std::move(j));
        all_ok = all_ok && r.ok();
        std::cout << (r.ok() ? "PASS" : "FAIL") << " instance " << s
                  << " H_greedy=" << format_double(r.bound.h_greedy)
                  << " H_opt=" << format_double(r.bound.h_opt)
                  << " k=" << format_double(r.bound.k)
                  << " margin=" << format_double(r.bound.margin) << "\n";
      }
    }
    if (!verify_flags.out.empty()) write_json_file(verify_flags.out, report);
    if (!all_ok) throw CheckFailed("verification failed");
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CheckFailed& e) {
    std::cerr << "ratsp: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const UsageError& e) {
    std::cerr << "ratsp: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "ratsp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ratsp: error: " << e.what() << "\n";
    return kExitUsage;
  }
}

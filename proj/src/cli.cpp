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


#include "ratsp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <ostream>
#include <stdexcept>

#include "ratsp/random.hpp"

namespace ratsp {

namespace {

std::string label_or_dash(const SolveResult& r, const StochasticGraph& graph) {
  if (!r.updated || !is_hamiltonian_cycle(r.best_edges, graph)) return "-";
  return tour_label(r.best_edges, graph);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void SweepSpec::validate() const {
  if (alphas.empty() || betas.empty() || seeds.empty()) {
    throw std::invalid_argument("sweep needs at least one alpha, beta and seed");
  }
  for (double a : alphas) RiskConfig{a, 0.0}.validate();
  for (double b : betas) RiskConfig{1.0, b}.validate();
  if (eval_samples < 1) throw std::invalid_argument("eval_samples must be >= 1");
}

std::uint64_t evaluation_seed(std::uint64_t seed) {
  return hash_words({seed, 0xe7a15eedULL});
}

SweepOutput run_sweep(const StochasticGraph& graph, const SolverConfig& base,
                      const SweepSpec& spec) {
  spec.validate();
  base.validate();
  std::vector<double> alphas = spec.alphas;
  std::vector<double> betas = spec.betas;
  std::vector<std::uint64_t> seeds = spec.seeds;
  std::sort(alphas.begin(), alphas.end());
  std::sort(betas.begin(), betas.end());
  std::sort(seeds.begin(), seeds.end());

  // One panel per seed, shared by all (alpha, beta) cells of that seed.
  std::map<std::uint64_t, NoisePanel> panels;
  for (std::uint64_t seed : seeds) {
    if (!panels.count(seed)) {
      panels.emplace(seed, make_noise_panel(graph, base.num_samples, seed));
    }
  }

  SweepOutput out;
  for (double alpha : alphas) {
    for (double beta : betas) {
      for (std::uint64_t seed : seeds) {
        SolverConfig cfg = base;
        cfg.risk = {alpha, beta};
        cfg.seed = seed;
        const SolveResult r = raga_solve(graph, panels.at(seed), cfg);
        auto parts = sample_utility_parts(r.best_edges, graph,
                                          spec.eval_samples,
                                          evaluation_seed(seed));
        SweepRow row;
        row.alpha = alpha;
        row.beta = beta;
        row.seed = seed;
        row.tau = r.best_tau;
        row.h_max = r.h_max;
        row.tour = label_or_dash(r, graph);
        std::vector<double> f;
        f.reserve(parts.size());
        for (const UtilityParts& p : parts) {
          row.mean_reward += p.reward;
          row.mean_cost_term += p.cost_term;
          f.push_back(p.combine(beta));
        }
        const double n = static_cast<double>(parts.size());
        row.mean_reward /= n;
        row.mean_cost_term /= n;
        for (double v : f) row.mean_utility += v;
        row.mean_utility /= n;
        row.cvar = empirical_cvar(f, alpha);
        out.rows.push_back(std::move(row));
        out.samples.push_back(std::move(parts));
      }
    }
  }
  return out;
}

HCurveOutput run_hcurve(const StochasticGraph& graph, const SolverConfig& base,
                        const std::vector<double>& alphas,
                        const std::optional<EdgeSet>& tour) {
  base.validate();
  if (alphas.empty()) throw std::invalid_argument("hcurve needs at least one alpha");
  for (double a : alphas) RiskConfig{a, base.risk.beta}.validate();
  const NoisePanel panel = make_noise_panel(graph, base.num_samples, base.seed);

  HCurveOutput out;
  if (tour) {
    if (!is_hamiltonian_cycle(*tour, graph)) {
      throw std::invalid_argument("supplied tour is not a Hamiltonian cycle");
    }
    out.tour = *tour;
  } else {
    const SolveResult r = raga_solve(graph, panel, base);
    if (!r.updated) throw std::runtime_error("solver found no tour with H >= 0");
    out.tour = r.best_edges;
  }
  // The utility samples do not depend on alpha.
  const std::vector<double> f = utilities(out.tour, panel, graph, base.risk);
  const int m = base.grid.size();
  for (double alpha : alphas) {
    for (int i = 0; i < m; ++i) {
      const double tau = base.grid.at(i);
      out.points.push_back({alpha, tau, h_from_utilities(f, tau, alpha)});
    }
  }
  return out;
}

double max_second_difference(const std::vector<HCurvePoint>& points) {
  double worst = -INFINITY;
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    if (points[i - 1].alpha != points[i].alpha ||
        points[i + 1].alpha != points[i].alpha) {
      continue;
    }
    worst = std::max(worst, points[i + 1].h - 2.0 * points[i].h + points[i - 1].h);
  }
  return worst;
}

void BenchSpec::validate() const {
  if (sizes.empty() || alphas.empty()) {
    throw std::invalid_argument("bench needs at least one size and alpha");
  }
  for (int n : sizes) {
    if (n < 3) throw std::invalid_argument("bench sizes must be >= 3");
  }
  for (double a : alphas) RiskConfig{a, 0.0}.validate();
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct sizes");
  return sxy / sxx;
}

BenchOutput run_bench(const BenchSpec& spec, const SolverConfig& base) {
  spec.validate();
  base.validate();
  BenchOutput out;
  std::map<double, std::vector<std::pair<double, double>>> medians;
  for (int n : spec.sizes) {
    const Instance inst = random_instance(n, spec.seed, spec.instance);
    for (double alpha : spec.alphas) {
      SolverConfig cfg = base;
      cfg.risk.alpha = alpha;
      cfg.seed = spec.seed;
      std::vector<double> times;
      for (int rep = 0; rep < spec.repetitions; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const SolveResult r = raga_solve(inst.graph, cfg);
        const std::chrono::duration<double> dt =
            std::chrono::steady_clock::now() - start;
        out.rows.push_back({n, alpha, rep, dt.count(), r.iterations_run,
                            label_or_dash(r, inst.graph)});
        times.push_back(dt.count());
      }
      medians[alpha].push_back({static_cast<double>(n), median(times)});
    }
  }
  for (const auto& [alpha, pts] : medians) {
    std::vector<double> xs, ys;
    for (const auto& [n, t] : pts) {
      xs.push_back(n);
      ys.push_back(std::max(t, 1e-9));
    }
    double slope = NAN;
    if (std::set<double>(xs.begin(), xs.end()).size() >= 2) {
      slope = loglog_slope(xs, ys);
    }
    out.slopes.push_back({alpha, slope});
  }
  return out;
}

VerifyReport run_verify(const StochasticGraph& graph, const SolverConfig& cfg) {
  const int n = graph.num_vertices();
  if (n < kMinEnumerationVertices || n > kMaxEnumerationVertices) {
    throw std::invalid_argument(
        "verify enumerates every tour and supports " +
        std::to_string(kMinEnumerationVertices) + " to " +
        std::to_string(kMaxEnumerationVertices) + " vertices, got " +
        std::to_string(n));
  }
  cfg.validate();
  const NoisePanel panel = make_noise_panel(graph, cfg.num_samples, cfg.seed);
  VerifyReport rep;
  rep.greedy = raga_solve(graph, panel, cfg);
  rep.optimum = brute_force_solve(graph, panel, cfg);

  // At tau = 0 every H(., 0) is zero and curvature is undefined.
  const double tau = rep.optimum.best_tau > 0.0 ? rep.optimum.best_tau
                                                : cfg.grid.step;
  CurvatureOptions copt;
  copt.skip_zero_singletons = true;
  rep.curvature = curvature(graph, panel, cfg.risk, tau, copt);
  rep.bound = verify_bound(rep.greedy, rep.optimum, rep.curvature.k, cfg);

  SubmodularityOptions sopt;
  if (graph.num_edges() > 10) {
    std::vector<int> ground = rep.optimum.best_edges.sorted();
    for (int e : rep.greedy.best_edges) ground.push_back(e);
    std::sort(ground.begin(), ground.end());
    ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
    if (ground.size() > 10) ground.resize(10);
    sopt.ground = std::move(ground);
  }
  rep.submodularity = check_submodular_exhaustive(graph, panel, tau, cfg.risk, sopt);
  rep.dominated = rep.optimum.h_star >=
                  rep.greedy.h_max - 1e-9 * (1.0 + std::abs(rep.greedy.h_max));
  return rep;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const SweepOutput& sweep) {
  out << "alpha,beta,seed,mean_fr,mean_fc,mean_f,cvar_f,tau,H,tour\n";
  for (const SweepRow& r : sweep.rows) {
    out << format_double(r.alpha) << ',' << format_double(r.beta) << ','
        << r.seed << ',' << format_double(r.mean_reward) << ','
        << format_double(r.mean_cost_term) << ','
        << format_double(r.mean_utility) << ',' << format_double(r.cvar) << ','
        << format_double(r.tau) << ',' << format_double(r.h_max) << ','
        << r.tour << '\n';
  }
}

void write_samples_csv(std::ostream& out, const SweepOutput& sweep) {
  out << "alpha,beta,seed,j,fr,fc,f\n";
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const SweepRow& r = sweep.rows[i];
    const std::string prefix = format_double(r.alpha) + ',' +
                               format_double(r.beta) + ',' +
                               std::to_string(r.seed) + ',';
    for (std::size_t j = 0; j < sweep.samples[i].size(); ++j) {
      const UtilityParts& p = sweep.samples[i][j];
      out << prefix << j << ',' << format_double(p.reward) << ','
          << format_double(p.cost_term) << ','
          << format_double(p.combine(r.beta)) << '\n';
    }
  }
}

void write_hcurve_csv(std::ostream& out, const std::vector<HCurvePoint>& points) {
  out << "alpha,tau,H\n";
  for (const HCurvePoint& p : points) {
    out << format_double(p.alpha) << ',' << format_double(p.tau) << ','
        << format_double(p.h) << '\n';
  }
}

void write_bench_csv(std::ostream& out, const BenchOutput& bench) {
  out << "n,alpha,rep,seconds,iterations,tour\n";
  for (const BenchRow& r : bench.rows) {
    out << r.num_vertices << ',' << format_double(r.alpha) << ','
        << r.repetition << ',' << format_double(r.seconds) << ','
        << r.iterations_run << ',' << r.tour << '\n';
  }
}

}  // namespace ratsp

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


// Python bindings for the core operations. Graphs are opaque handles; tours
// go in and out as vertex lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ratsp/cli.hpp"
#include "ratsp/graph.hpp"
#include "ratsp/instance.hpp"
#include "ratsp/io.hpp"
#include "ratsp/oracle.hpp"
#include "ratsp/risk.hpp"
#include "ratsp/solver.hpp"

namespace py = pybind11;
using namespace ratsp;

namespace {

SolverConfig make_config(double alpha, double beta, double gamma_cap,
                         double gamma_step, int samples, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.risk = {alpha, beta};
  cfg.grid = {gamma_cap, gamma_step};
  cfg.num_samples = samples;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

py::object tour_or_none(const EdgeSet& edges, const StochasticGraph& g) {
  if (!is_hamiltonian_cycle(edges, g)) return py::none();
  return py::cast(tour_vertices(edges, g));
}

py::dict result_dict(const SolveResult& r, const StochasticGraph& g) {
  py::dict d;
  d["tour"] = tour_or_none(r.best_edges, g);
  d["tau"] = r.best_tau;
  d["H"] = r.h_max;
  d["iterations_run"] = r.iterations_run;
  return d;
}

}  // namespace

#define RATSP_CONFIG_ARGS                                                   \
  py::arg("alpha") = 0.5, py::arg("beta") = 0.5, py::arg("gamma_cap") = 200.0, \
      py::arg("gamma_step") = 1.0, py::arg("samples") = 250, py::arg("seed") = 42

PYBIND11_MODULE(_core, m) {
  m.doc() = "Risk-aware stochastic TSP core";

  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  py::class_<StochasticGraph>(m, "Graph")
      .def_property_readonly("num_vertices", &StochasticGraph::num_vertices)
      .def_property_readonly("num_edges", &StochasticGraph::num_edges)
      .def_property_readonly("num_cells", &StochasticGraph::num_cells)
      .def_property_readonly("cost_cap", &StochasticGraph::cost_cap)
      .def("edge_means",
           [](const StochasticGraph& g) {
             std::vector<std::tuple<int, int, double, double>> out;
             for (const EdgeModel& e : g.edges()) {
               out.emplace_back(e.u, e.v, e.reward_mean, e.cost_mean);
             }
             return out;
           },
           "List of (u, v, reward_mean, cost_mean).")
      .def("to_json", [](const StochasticGraph& g) { return graph_to_json(g).dump(); })
      .def("save", [](const StochasticGraph& g, const std::string& path) {
        save_graph(path, g);
      });

  m.def("load_graph", [](const std::string& path) { return load_graph(path); },
        py::arg("path"));
  m.def("graph_from_json",
        [](const std::string& text) {
          return graph_from_json(nlohmann::json::parse(text));
        },
        py::arg("text"));
  m.def("random_graph",
        [](int sites, std::uint64_t seed, const std::string& preset) {
          return random_instance(sites, seed, preset_spec(preset)).graph;
        },
        py::arg("sites"), py::arg("seed") = 42, py::arg("preset") = "paper");

  m.def("var", [](const std::vector<double>& v, double alpha) {
    return empirical_var(v, alpha);
  }, py::arg("values"), py::arg("alpha"));
  m.def("cvar", [](const std::vector<double>& v, double alpha) {
    return empirical_cvar(v, alpha);
  }, py::arg("values"), py::arg("alpha"));

  m.def("solve",
        [](const StochasticGraph& g, double alpha, double beta, double cap,
           double step, int samples, std::uint64_t seed) {
          const SolverConfig cfg = make_config(alpha, beta, cap, step, samples, seed);
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = raga_solve(g, cfg);
          }
          return result_dict(r, g);
        },
        py::arg("graph"), RATSP_CONFIG_ARGS);

  m.def("brute_force",
        [](const StochasticGraph& g, double alpha, double beta, double cap,
           double step, int samples, std::uint64_t seed) {
          const SolverConfig cfg = make_config(alpha, beta, cap, step, samples, seed);
          const BruteForceResult r = brute_force_solve(g, cfg);
          py::dict d;
          d["tour"] = tour_or_none(r.best_edges, g);
          d["tau"] = r.best_tau;
          d["H"] = r.h_star;
          d["tours"] = r.all_tours;
          return d;
        },
        py::arg("graph"), RATSP_CONFIG_ARGS);

  m.def("estimate_h",
        [](const StochasticGraph& g, const std::vector<int>& tour, double tau,
           double alpha, double beta, double cap, double step, int samples,
           std::uint64_t seed) {
          const SolverConfig cfg = make_config(alpha, beta, cap, step, samples, seed);
          const NoisePanel panel = make_noise_panel(g, samples, seed);
          return estimate_H(edges_from_vertices(tour, g), tau, panel, g, cfg.risk);
        },
        py::arg("graph"), py::arg("tour"), py::arg("tau"), RATSP_CONFIG_ARGS);

  m.def("hcurve",
        [](const StochasticGraph& g, const std::vector<double>& alphas,
           std::optional<std::vector<int>> tour, double alpha, double beta,
           double cap, double step, int samples, std::uint64_t seed) {
          const SolverConfig cfg = make_config(alpha, beta, cap, step, samples, seed);
          std::optional<EdgeSet> edges;
          if (tour) edges = edges_from_vertices(*tour, g);
          const HCurveOutput out = run_hcurve(g, cfg, alphas, edges);
          std::vector<std::tuple<double, double, double>> rows;
          for (const HCurvePoint& p : out.points) rows.emplace_back(p.alpha, p.tau, p.h);
          return rows;
        },
        py::arg("graph"), py::arg("alphas"), py::arg("tour") = py::none(),
        RATSP_CONFIG_ARGS);

  m.def("verify",
        [](const StochasticGraph& g, double alpha, double beta, double cap,
           double step, int samples, std::uint64_t seed) {
          const SolverConfig cfg = make_config(alpha, beta, cap, step, samples, seed);
          const VerifyReport r = run_verify(g, cfg);
          py::dict d;
          d["ok"] = r.ok();
          d["H_greedy"] = r.bound.h_greedy;
          d["H_opt"] = r.bound.h_opt;
          d["k"] = r.bound.k;
          d["rhs"] = r.bound.rhs;
          d["margin"] = r.bound.margin;
          d["holds"] = r.bound.holds;
          d["submodular"] = r.submodularity.ok();
          return d;
        },
        py::arg("graph"), RATSP_CONFIG_ARGS);
}

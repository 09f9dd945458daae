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

#include "ratsp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ratsp {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json map_to_json(const InfoMap& map) {
  return json{{"width", map.width()},
              {"height", map.height()},
              {"cell_size", map.cell_size()},
              {"density", std::vector<double>(map.density().begin(),
                                              map.density().end())}};
}

InfoMap map_from_json(const json& j) {
  try {
    return InfoMap(field<int>(j, "width"), field<int>(j, "height"),
                   field<double>(j, "cell_size"),
                   field<std::vector<double>>(j, "density"));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid map: ") + e.what());
  }
}

json graph_to_json(const StochasticGraph& graph) {
  json sites = json::array();
  for (const Point2D& p : graph.vertices()) sites.push_back({p.x, p.y});
  json edges = json::array();
  for (const EdgeModel& m : graph.edges()) {
    json sensed = json::array();
    for (int c : m.sensed) {
      sensed.push_back({graph.cells()[c].col, graph.cells()[c].row});
    }
    edges.push_back({{"u", m.u},
                     {"v", m.v},
                     {"reward_mean", m.reward_mean},
                     {"cost_mean", m.cost_mean},
                     {"sensed", std::move(sensed)}});
  }
  json cells = json::array();
  for (int c = 0; c < graph.num_cells(); ++c) {
    cells.push_back({graph.cells()[c].col, graph.cells()[c].row,
                     graph.cell_means()[c]});
  }
  return json{{"sites", std::move(sites)},
              {"R", graph.sensing_radius()},
              {"v_r", graph.reward_var_coeff()},
              {"v_c", graph.cost_var_coeff()},
              {"cost_cap", graph.cost_cap()},
              {"reward_scale", graph.stats().reward_scale},
              {"cost_scale", graph.stats().cost_scale},
              {"edges", std::move(edges)},
              {"cell_rewards", std::move(cells)}};
}

StochasticGraph graph_from_json(const json& j) {
  try {
    std::vector<Point2D> sites;
    for (const auto& s : field<std::vector<std::vector<double>>>(j, "sites")) {
      if (s.size() != 2) throw IoError("each site must be [x, y]");
      sites.push_back({s[0], s[1]});
    }

    std::vector<CellId> cells;
    std::vector<double> means;
    if (j.contains("cell_rewards")) {
      std::vector<std::pair<CellId, double>> rows;
      for (const auto& c : field<std::vector<std::vector<double>>>(j, "cell_rewards")) {
        if (c.size() != 3) throw IoError("each cell_rewards entry must be [col, row, mean]");
        rows.push_back({CellId{static_cast<int>(c[0]), static_cast<int>(c[1])}, c[2]});
      }
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [id, mean] : rows) {
        cells.push_back(id);
        means.push_back(mean);
      }
    }

    if (!j.contains("edges") || !j.at("edges").is_array()) {
      throw IoError("missing array field \"edges\"");
    }
    std::vector<EdgeModel> edges;
    for (const json& e : j.at("edges")) {
      EdgeModel m;
      m.u = field<int>(e, "u");
      m.v = field<int>(e, "v");
      m.reward_mean = field<double>(e, "reward_mean");
      m.cost_mean = field<double>(e, "cost_mean");
      for (const auto& c : field<std::vector<std::vector<int>>>(e, "sensed")) {
        if (c.size() != 2) throw IoError("each sensed cell must be [col, row]");
        const CellId id{c[0], c[1]};
        auto it = std::lower_bound(cells.begin(), cells.end(), id);
        if (it == cells.end() || *it != id) {
          throw IoError("edge (" + std::to_string(m.u) + ", " +
                        std::to_string(m.v) + ") senses a cell missing from "
                        "\"cell_rewards\"");
        }
        m.sensed.push_back(static_cast<int>(it - cells.begin()));
      }
      std::sort(m.sensed.begin(), m.sensed.end());
      edges.push_back(std::move(m));
    }
    const double reward_scale = j.value("reward_scale", 1.0);
    const double cost_scale = j.value("cost_scale", 1.0);
    return StochasticGraph(std::move(sites), std::move(edges), std::move(cells),
                           std::move(means), field<double>(j, "cost_cap"),
                           field<double>(j, "v_r"), field<double>(j, "v_c"),
                           field<double>(j, "R"), reward_scale, cost_scale);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid graph: ") + e.what());
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid graph: ") + e.what());
  }
}

json config_to_json(const SolverConfig& cfg) {
  return json{{"alpha", cfg.risk.alpha},
              {"beta", cfg.risk.beta},
              {"gamma_cap", cfg.grid.cap},
              {"gamma_step", cfg.grid.step},
              {"samples", cfg.num_samples},
              {"seed", cfg.seed}};
}

json result_to_json(const SolveResult& result, const StochasticGraph& graph) {
  json out;
  if (result.updated && is_hamiltonian_cycle(result.best_edges, graph)) {
    out["tour"] = tour_vertices(result.best_edges, graph);
  } else {
    out["tour"] = json::array();
  }
  json edges = json::array();
  for (int e : result.best_edges) {
    edges.push_back({graph.edge(e).u, graph.edge(e).v});
  }
  out["edges"] = std::move(edges);
  out["tau"] = result.best_tau;
  out["H"] = result.h_max;
  out["iterations_run"] = result.iterations_run;
  json trace = json::array();
  for (const TraceEntry& t : result.trace) {
    json te = json::array();
    for (int e : t.edges) te.push_back({graph.edge(e).u, graph.edge(e).v});
    trace.push_back({{"tau", t.tau}, {"H", t.h}, {"edges", std::move(te)}});
  }
  out["trace"] = std::move(trace);
  out["config"] = config_to_json(result.config);
  out["seed"] = result.config.seed;
  return out;
}

json bound_to_json(const BoundCheck& check, const SolverConfig& cfg) {
  return json{{"H_greedy", check.h_greedy}, {"H_opt", check.h_opt},
              {"k", check.k},               {"rhs", check.rhs},
              {"margin", check.margin},     {"holds", check.holds},
              {"config", config_to_json(cfg)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + at, '\n');
    const auto bol = text.rfind('\n', at == 0 ? 0 : at - 1);
    const auto col = at - (bol == std::string::npos ? 0 : bol + 1) + 1;
    throw IoError(path.string() + ":" + std::to_string(line) + ":" +
                  std::to_string(col) + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError(path.string() + ": write failed");
}

InfoMap load_map(const std::filesystem::path& path) {
  try {
    return map_from_json(read_json_file(path));
  } catch (const IoError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw IoError(path.string() + ": " + what);
  }
}

void save_map(const std::filesystem::path& path, const InfoMap& map) {
  write_json_file(path, map_to_json(map));
}

StochasticGraph load_graph(const std::filesystem::path& path) {
  try {
    return graph_from_json(read_json_file(path));
  } catch (const IoError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw IoError(path.string() + ": " + what);
  }
}

void save_graph(const std::filesystem::path& path, const StochasticGraph& graph) {
  write_json_file(path, graph_to_json(graph));
}

}  // namespace ratsp

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

// JSON file formats.
//
//   map:    {"width", "height", "cell_size", "density": [row-major]}
//   graph:  {"sites": [[x, y], ...], "R", "v_r", "v_c", "cost_cap",
//            "edges": [{"u", "v", "reward_mean", "cost_mean",
//                       "sensed": [[col, row], ...]}],
//            "cell_rewards": [[col, row, mean], ...],
//            "reward_scale", "cost_scale"}
//   result: {"tour", "edges", "tau", "H", "trace", "config", "seed", ...}
//
// Doubles are written in shortest round-trip decimal form, so reading a file
// back reproduces every value bit for bit.

#ifndef RATSP_IO_HPP_
#define RATSP_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ratsp/env.hpp"
#include "ratsp/graph.hpp"
#include "ratsp/oracle.hpp"
#include "ratsp/solver.hpp"

namespace ratsp {

// File or schema problem. what() carries the path and, for syntax errors,
// the line and column.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json map_to_json(const InfoMap& map);
InfoMap map_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const StochasticGraph& graph);
StochasticGraph graph_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SolverConfig& cfg);
nlohmann::json result_to_json(const SolveResult& result,
                              const StochasticGraph& graph);
nlohmann::json bound_to_json(const BoundCheck& check, const SolverConfig& cfg);

nlohmann::json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

InfoMap load_map(const std::filesystem::path& path);
void save_map(const std::filesystem::path& path, const InfoMap& map);
StochasticGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const StochasticGraph& graph);

}  // namespace ratsp

#endif  // RATSP_IO_HPP_

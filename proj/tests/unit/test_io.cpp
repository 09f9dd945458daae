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

#include <filesystem>
#include <fstream>
#include <string>

#include "ratsp/io.hpp"
#include "support.hpp"

namespace ratsp {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ratsp_io_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST(MapIo, RoundTripIsBitExact) {
  const auto blobs = random_blobs(3, 17, 9, 4);
  MapOptions opt;
  opt.cell_size = 0.7;
  opt.jitter = 0.2;
  const InfoMap map = generate_map(17, 9, blobs, 4, opt);
  const fs::path p = temp_file("map.json");
  save_map(p, map);
  EXPECT_EQ(load_map(p), map);
}

TEST(GraphIo, RoundTripPreservesEveryField) {
  const Instance inst = testing::small_instance(6, 8);
  const StochasticGraph& g = inst.graph;
  const fs::path p = temp_file("graph.json");
  save_graph(p, g);
  const StochasticGraph back = load_graph(p);
  EXPECT_EQ(back.fingerprint(), g.fingerprint());
  ASSERT_EQ(back.num_edges(), g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    EXPECT_EQ(back.edge(e).reward_mean, g.edge(e).reward_mean);
    EXPECT_EQ(back.edge(e).cost_mean, g.edge(e).cost_mean);
    EXPECT_EQ(back.sensed_cells(e), g.sensed_cells(e));
  }
  EXPECT_EQ(back.cost_cap(), g.cost_cap());
  EXPECT_EQ(back.sensing_radius(), g.sensing_radius());
  EXPECT_EQ(back.stats().reward_scale, g.stats().reward_scale);
  // Same panel from the reloaded graph.
  EXPECT_EQ(make_noise_panel(back, 10, 3), make_noise_panel(g, 10, 3));
}

TEST(JsonIo, SyntaxErrorReportsLineAndColumn) {
  const fs::path p = temp_file("broken.json");
  write_text(p, "{\n  \"width\": 3,\n  \"height\": ,\n}\n");
  try {
    load_map(p);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find(p.string() + ":3:"), std::string::npos) << what;
  }
}

TEST(JsonIo, SchemaErrorsNameTheProblem) {
  const fs::path p = temp_file("schema.json");
  write_text(p, R"({"width": 2, "height": 2, "cell_size": 1})");
  try {
    load_map(p);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("density"), std::string::npos) << e.what();
  }
  write_text(p, R"({"width": 2, "height": 2, "cell_size": 1, "density": [0, 1, 2]})");
  EXPECT_THROW(load_map(p), IoError);
  EXPECT_THROW(load_map(temp_file("does_not_exist.json")), IoError);
}

TEST(GraphIo, SensedCellsNeedCellTable) {
  const Instance inst = testing::small_instance(4, 9);
  nlohmann::json j = graph_to_json(inst.graph);
  j.erase("cell_rewards");
  EXPECT_THROW(graph_from_json(j), IoError);
  nlohmann::json bad = graph_to_json(inst.graph);
  bad["edges"][0]["cost_mean"] = 50.0;  // above the cap
  EXPECT_THROW(graph_from_json(bad), IoError);
}

TEST(ResultIo, CarriesTourAndConfig) {
  const Instance inst = testing::small_instance(5, 10);
  SolverConfig cfg;
  cfg.num_samples = 20;
  const SolveResult r = raga_solve(inst.graph, cfg);
  const nlohmann::json j = result_to_json(r, inst.graph);
  EXPECT_EQ(j["tour"].get<std::vector<int>>(), tour_vertices(r.best_edges, inst.graph));
  EXPECT_EQ(j["edges"].size(), 5u);
  EXPECT_EQ(j["tau"].get<double>(), r.best_tau);
  EXPECT_EQ(j["H"].get<double>(), r.h_max);
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), cfg.seed);
  EXPECT_EQ(j["config"]["samples"].get<int>(), 20);
  EXPECT_EQ(j["trace"].size(), static_cast<std::size_t>(r.iterations_run));
}

}  // namespace
}  // namespace ratsp

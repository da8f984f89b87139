// Copyright 2026 The envadapt Authors
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


#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "envadapt/placement.h"
#include "support/oracles.h"
#include "support/test_support.h"

namespace envadapt::placement {
namespace {

Topology DemoTopology() { return LoadTopology(testing::DataPath("demo/topology.json")); }

AppModel DemoApp(double demand, double work) {
  AppModel app = LoadAppModel(testing::DataPath("demo/appmodel.json"));
  for (Component& c : app.components) {
    if (c.id == "analysis") {
      c.demand = demand;
      c.work = work;
    }
  }
  return app;
}

TEST(Evaluate, ColocatedFlowsAreFree) {
  Topology t = ParseTopology(R"({"nodes": [{"id": "n", "kind": "cloud", "capacity": 10,
      "unit_price": 2, "op_time": 0.5}]})");
  AppModel app = ParseAppModel(R"({"components": [{"id": "a", "demand": 2, "work": 4},
      {"id": "b", "demand": 1, "work": 2}], "flows": [{"src": "a", "dst": "b",
      "bytes_per_request": 1e9}]})");
  Evaluation e = EvaluatePlacement(t, app, {{"a", "n"}, {"b", "n"}});
  EXPECT_EQ(e.network_time, 0);
  EXPECT_DOUBLE_EQ(e.compute_time, 4 * 0.5 / 2 + 2 * 0.5 / 1);
  EXPECT_DOUBLE_EQ(e.latency, 2);
  EXPECT_DOUBLE_EQ(e.cost, 3 * 2);
  EXPECT_DOUBLE_EQ(e.throughput, 1.0);
}

TEST(Evaluate, DemoEdgeHandSum) {
  AppModel app = DemoApp(5, 67500);
  Evaluation e = EvaluatePlacement(DemoTopology(), app,
                                   {{"sensor", "camera"}, {"analysis", "edge-1"},
                                    {"dashboard", "cloud-1"}});
  double to_edge = (0.002 + 0.005) + 32768 / 5e6;
  double to_cloud = 0.08 + 64 / 5e4;
  double compute = 67500 * 1e-6 / 5;
  EXPECT_DOUBLE_EQ(e.network_time, to_edge + to_cloud);
  EXPECT_DOUBLE_EQ(e.compute_time, compute);
  EXPECT_DOUBLE_EQ(e.latency, to_edge + to_cloud + compute);
  EXPECT_DOUBLE_EQ(e.cost, 5 * 2.0 + 1 * 0.5);
}

TEST(Evaluate, CapacityAndConnectivity) {
  try {
    EvaluatePlacement(DemoTopology(), DemoApp(5, 1),
                      {{"sensor", "camera"}, {"analysis", "home-gw"}, {"dashboard", "cloud-1"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacityExceeded);
  }
  Topology split = ParseTopology(R"({"nodes": [
      {"id": "x", "kind": "cloud", "capacity": 4}, {"id": "y", "kind": "edge", "capacity": 4}]})");
  AppModel app = ParseAppModel(R"({"components": [{"id": "a"}, {"id": "b"}],
      "flows": [{"src": "a", "dst": "b", "bytes_per_request": 1}]})");
  try {
    EvaluatePlacement(split, app, {{"a", "x"}, {"b", "y"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
  }
}

TEST(Solve, DemoPlacesAnalysisAtTheEdge) {
  AppModel app = DemoApp(5, 67500);
  PlacementPlan plan = SolvePlacement(DemoTopology(), app, SolveMode::MinCost(0.5));
  EXPECT_EQ(plan.assign.at("analysis"), "edge-1");
  EXPECT_LE(plan.eval.latency, 0.5);
  Evaluation cloud = EvaluatePlacement(DemoTopology(), app,
                                       {{"sensor", "camera"}, {"analysis", "cloud-1"},
                                        {"dashboard", "cloud-1"}});
  EXPECT_GT(cloud.latency, 0.5);
  EXPECT_LT(cloud.cost, plan.eval.cost);
  // Without the bound the cheaper cloud wins.
  EXPECT_EQ(SolvePlacement(DemoTopology(), app, SolveMode::MinCost(10)).assign.at("analysis"),
            "cloud-1");
}

TEST(Solve, ForcedAndInfeasible) {
  Topology t = ParseTopology(R"({"nodes": [{"id": "only", "kind": "edge", "capacity": 2,
      "unit_price": 3}]})");
  AppModel app = ParseAppModel(R"({"components": [{"id": "a", "demand": 2}]})");
  PlacementPlan plan = SolvePlacement(t, app, SolveMode::MaxPerf(100));
  EXPECT_EQ(plan.assign.at("a"), "only");
  EXPECT_DOUBLE_EQ(plan.eval.cost, 6);
  try {
    SolvePlacement(t, app, SolveMode::MaxPerf(5.99));
    FAIL();
  } catch (const Infeasible& e) {
    EXPECT_EQ(e.reason(), InfeasibleReason::kNoFeasibleAssignment);
  }
  AppModel big = ParseAppModel(R"({"components": [{"id": "a", "demand": 3}]})");
  EXPECT_THROW(SolvePlacement(t, big, SolveMode::MaxPerf(100)), Infeasible);
}

TEST(Solve, SearchSpaceCap) {
  AppModel app = DemoApp(1, 1);
  try {
    SolvePlacement(DemoTopology(), app, SolveMode::MinCost(1), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchSpaceTooLarge);
  }
}

TEST(Json, SchemaErrors) {
  EXPECT_THROW(ParseTopology(R"({"nodes": [{"id": "a", "kind": "moon"}]})"), SchemaError);
  EXPECT_THROW(ParseTopology(R"({"nodes": [{"id": "a", "kind": "edge"}, {"id": "a", "kind": "edge"}]})"),
               SchemaError);
  EXPECT_THROW(ParseTopology(R"({"nodes": [{"id": "a", "kind": "edge"}],
      "links": [{"a": "a", "b": "z", "latency": 1, "bandwidth": 1}]})"), SchemaError);
  EXPECT_THROW(ParseAppModel(R"({"components": [{"id": "a", "demand": 0}]})"), SchemaError);
  Topology round = ParseTopology(DumpTopology(DemoTopology()));
  EXPECT_EQ(round.nodes.size(), 4u);
  EXPECT_EQ(round.links.size(), 3u);
}

using testing::placement_oracle::Instance;
using testing::placement_oracle::OracleResult;
using testing::placement_oracle::OracleSolve;
using testing::placement_oracle::RandomInstance;

TEST(Properties, SolverMatchesExhaustiveOracle) {
  std::mt19937_64 rng(61);
  int solved[2] = {0, 0};
  for (int n = 0; n < 100; ++n) {
    Instance in = RandomInstance(rng);
    for (int m = 0; m < 2; ++m) {
      SCOPED_TRACE("instance " + std::to_string(n) + " mode " + std::to_string(m));
      double limit = m == 0 ? std::uniform_real_distribution<double>(0, 20)(rng)
                            : std::uniform_real_distribution<double>(0, 0.6)(rng);
      SolveMode mode = m == 0 ? SolveMode::MaxPerf(limit) : SolveMode::MinCost(limit);
      std::optional<OracleResult> want = OracleSolve(in.topo, in.app, mode);
      if (!want) {
        EXPECT_THROW(SolvePlacement(in.topo, in.app, mode), Infeasible);
        continue;
      }
      ++solved[m];
      PlacementPlan got = SolvePlacement(in.topo, in.app, mode);
      EXPECT_EQ(got.assign, want->assign);
      EXPECT_NEAR(got.eval.latency, want->latency, 1e-12 * (1 + want->latency));
      EXPECT_DOUBLE_EQ(got.eval.cost, want->cost);
      // Constraint safety, checked through the public evaluator.
      Evaluation e = EvaluatePlacement(in.topo, in.app, got.assign);
      EXPECT_TRUE(Feasible(mode, e));
      for (const auto& [comp, node] : in.app.pinned) EXPECT_EQ(got.assign.at(comp), node);
      PlacementPlan again = SolvePlacement(in.topo, in.app, mode);
      EXPECT_EQ(again.assign, got.assign);
    }
  }
  EXPECT_GT(solved[0], 40);
  EXPECT_GT(solved[1], 40);
}

}  // namespace
}  // namespace envadapt::placement

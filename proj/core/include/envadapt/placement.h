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

#ifndef ENVADAPT_PLACEMENT_H_
#define ENVADAPT_PLACEMENT_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace envadapt::placement {

enum class NodeKind { kCloud, kEdge, kGw, kDevice };

const char* NodeKindName(NodeKind kind);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::kCloud;
  double capacity = 0;    // compute units
  double unit_price = 0;  // cost per unit per period
  double available = 0;   // units free for placement, <= capacity
  double op_time = 0;     // seconds per op on one unit
};

struct Link {
  std::string a;
  std::string b;
  double latency = 0;    // seconds
  double bandwidth = 0;  // bytes per second
};

// Nodes of kind kDevice (sensors, cameras) host no components; they appear
// only as flow endpoints.
struct Topology {
  std::vector<Node> nodes;
  std::vector<Link> links;

  const Node* Find(std::string_view id) const;
};

Topology ParseTopology(std::string_view json_text);
Topology LoadTopology(const std::filesystem::path& path);
std::string DumpTopology(const Topology& t);

struct Component {
  std::string id;
  double demand = 1;  // compute units
  double work = 0;    // ops per request
};

struct Flow {
  std::string src;  // component id or node id
  std::string dst;
  double bytes_per_request = 0;
};

struct AppModel {
  std::vector<Component> components;
  std::vector<Flow> flows;
  std::map<std::string, std::string> pinned;  // component -> node
};

AppModel ParseAppModel(std::string_view json_text);
AppModel LoadAppModel(const std::filesystem::path& path);

using Assignment = std::map<std::string, std::string>;  // component -> node

struct Evaluation {
  double latency = 0;
  double throughput = 0;  // +inf when every stage takes zero time
  double cost = 0;
  double compute_time = 0;
  double network_time = 0;
};

// Latency is the serial sum of every flow's network time (shortest-latency
// path plus bytes over that path's narrowest link; zero within a node) and
// every component's compute time (work * op_time / demand). Throughput is
// the reciprocal of the slowest of those stages. Throws CapacityExceeded,
// Disconnected, and SchemaError for incomplete or pin-violating assignments.
Evaluation EvaluatePlacement(const Topology& topo, const AppModel& app, const Assignment& assign);

struct SolveMode {
  enum class Kind { kMaxPerfUnderBudget, kMinCostUnderLatency };
  Kind kind = Kind::kMinCostUnderLatency;
  double limit = 0;
  static SolveMode MaxPerf(double budget) { return {Kind::kMaxPerfUnderBudget, budget}; }
  static SolveMode MinCost(double bound) { return {Kind::kMinCostUnderLatency, bound}; }
};

struct PlacementPlan {
  Assignment assign;
  Evaluation eval;
  double objective_value = 0;
};

inline constexpr double kDefaultSearchCap = 1e6;

// Exact optimum over single-node-per-component assignments. MaxPerf
// minimizes latency subject to cost <= budget, MinCost minimizes cost
// subject to latency <= bound; ties go to lower cost, then to the
// lexicographically smallest node-id vector in component order. Throws
// Infeasible(no_feasible_assignment) and Error(kSearchSpaceTooLarge).
PlacementPlan SolvePlacement(const Topology& topo, const AppModel& app, SolveMode mode,
                             double search_cap = kDefaultSearchCap);

// Strict preference used by the solver: is `a` better than `b` under mode?
// Both must be feasible. Ties on the objective and cost fall to node ids.
bool Better(const SolveMode& mode, const AppModel& app, const PlacementPlan& a,
            const PlacementPlan& b);
bool Feasible(const SolveMode& mode, const Evaluation& e);

}  // namespace envadapt::placement

#endif  // ENVADAPT_PLACEMENT_H_

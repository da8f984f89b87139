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

#ifndef ENVADAPT_LIFECYCLE_H_
#define ENVADAPT_LIFECYCLE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "envadapt/gasearch.h"
#include "envadapt/minilang/ast.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/offload.h"
#include "envadapt/perfsim.h"
#include "envadapt/placement.h"
#include "envadapt/resource.h"

namespace envadapt::lifecycle {

struct Testcase {
  std::string id;
  minilang::InputBinding input;
  int64_t request_count = 1;
  std::optional<double> required_latency;
  std::vector<std::string> tags;
  std::optional<minilang::OutputTrace> expected_output;

  bool is_regression() const;
};

std::vector<Testcase> ParseTestcases(std::string_view json_text);
std::vector<Testcase> LoadTestcases(const std::filesystem::path& path);

// Everything the deployed system is evaluated against. `program` is the
// substituted, unannotated program the search runs on.
struct Environment {
  minilang::Ast program;
  perfsim::CostModel model;
  resource::ScalingModel scaling;
  placement::Topology topology;
  placement::AppModel app;
  // Component of `app` that runs the program; its demand is the plan's unit
  // total and its work is derived from the simulated latency.
  std::string program_component = "app";
  gasearch::GaConfig ga;
  std::vector<Testcase> testcases;
  double perf_target = 0;
  double budget = 0;
  // Placement latency bound for Step 5 (cost is minimized under it).
  double placement_bound = 0;
  int fpga_slots = 1;
};

struct SystemState {
  int64_t version = 0;
  minilang::Ast annotated;
  OffloadPattern pattern;
  std::set<std::string> active_kernels;
  resource::Ratio ratio;
  resource::ResourcePlan resources;
  placement::PlacementPlan placement;
};

// Request mix: kind (testcase id) -> weight.
using Mix = std::map<std::string, double>;

Mix DesignMix(const Environment& env);

// One request of `kind` under `state`: simulated latency scaled by the
// resource plan, run on the placed node with the app's flows.
struct KindLatency {
  double latency = 0;
  double bottleneck = 0;  // slowest pipeline stage
  placement::Evaluation placement;
  perfsim::PerfMeasurement perf;
};
KindLatency MeasureKind(const Environment& env, const SystemState& state, const Testcase& tc);

const Testcase& FindTestcase(const Environment& env, const std::string& kind);

// Work and demand of the program component for a given request latency.
placement::AppModel AppFor(const Environment& env, const resource::ResourcePlan& plan,
                           double request_latency);

// max(1, rate * mean bottleneck): queueing once arrivals outpace service.
double OverloadFactor(const Environment& env, const SystemState& state, const Mix& mix,
                      double rate);

// Mean latency of a request drawn from `mix` arriving at `rate`.
double ExpectedLatency(const Environment& env, const SystemState& state, const Mix& mix,
                       double rate);

// Weighted base times (unscaled simulated components) over a mix.
resource::BaseTimes MixBaseTimes(const Environment& env, const minilang::Ast& annotated,
                                 const OffloadPattern& pattern,
                                 const std::set<std::string>& active, const Mix& mix);

// Kernel subset of size <= fpga_slots with the lowest mix-weighted
// simulated time; ties go to fewer kernels, then lexicographic order.
std::set<std::string> ChooseKernels(const Environment& env, const minilang::Ast& annotated,
                                    const OffloadPattern& pattern, const Mix& mix);
std::set<std::string> KernelsIn(const minilang::Ast& ast);

// ---- Step 6 ----

struct CaseResult {
  std::string id;
  double latency = 0;
  double throughput = 0;
  double cpu_time = 0;
  double device_time = 0;
  double transfer_time = 0;
  bool latency_ok = true;
  // Regression cases compare against their stored trace, others against
  // the reference interpreter on the original program.
  bool output_ok = true;
  std::optional<int64_t> first_diff;
};

struct VerificationReport {
  std::vector<CaseResult> cases;
  bool pass = true;
  std::vector<std::string> failing;
  int cpu_units = 0;
  int device_units = 0;
  double resource_cost = 0;
  double placement_cost = 0;
};

// First index where two traces differ (length mismatch counts), if any.
std::optional<int64_t> FirstDiff(const minilang::OutputTrace& a, const minilang::OutputTrace& b);

VerificationReport VerifyDeployment(const Environment& env, const SystemState& state,
                                    const std::vector<Testcase>& testcases,
                                    const minilang::Ast* reference = nullptr);

// ---- Step 7 ----

struct TraceEvent {
  double time = 0;
  std::string kind;
  double rate = 0;
};
using WorkloadTrace = std::vector<TraceEvent>;

// CSV rows `time,kind,rate` (optional header). Rows sharing a time stamp
// describe one segment's concurrent request kinds; a segment lasts until
// the next time stamp. The final row must be `<time>,end,0`.
WorkloadTrace ParseTrace(std::string_view csv);
WorkloadTrace LoadTrace(const std::filesystem::path& path);

struct Request {
  double time = 0;
  std::string kind;
  double rate = 0;  // total arrival rate of the segment
  Mix segment_mix;
};

// Deterministic arrivals: round(rate * duration) requests per kind,
// evenly spaced, kinds interleaved by smooth weighted round-robin.
std::vector<Request> ExpandTrace(const WorkloadTrace& trace);

enum class ProposalKind { kResourceAmount, kPlacement, kSoftLogic, kHardLogic };
const char* ProposalKindName(ProposalKind kind);

struct Policy {
  int window = 20;
  // Review every `period` requests; 0 disables periodic review.
  int64_t period = 0;
  double latency_threshold = 0;
  double min_gain = 0.10;
  std::map<ProposalKind, double> penalties = {{ProposalKind::kResourceAmount, 0.0},
                                              {ProposalKind::kPlacement, 0.5},
                                              {ProposalKind::kSoftLogic, 1.0},
                                              {ProposalKind::kHardLogic, 1.0}};
  bool auto_approve = false;
};

Policy ParsePolicy(const nlohmann::json& j);

struct ReconfigProposal {
  ProposalKind kind = ProposalKind::kResourceAmount;
  int64_t base_version = 0;
  SystemState proposed;
  double current_latency = 0;
  double expected_latency = 0;
  double expected_latency_gain = 0;  // (current - expected) / current
  double net_gain = 0;               // gain less the amortized penalty
  double expected_cost_delta = 0;
  double migration_penalty = 0;
};

// Re-runs each adaptation step on the observed workload and returns one
// candidate per kind whose outcome differs from the deployed state.
std::vector<ReconfigProposal> TrialCandidates(const Environment& env, const SystemState& state,
                                              const Mix& mix, double rate, const Policy& policy);

// Best candidate by net gain, if it clears policy.min_gain.
std::optional<ReconfigProposal> TrialSimulate(const Environment& env, const SystemState& state,
                                              const Mix& mix, double rate, const Policy& policy);

// Throws Error(kStaleProposal) if the state moved on since the proposal.
SystemState ApplyReconfig(const SystemState& state, const ReconfigProposal& proposal);

struct LogEvent {
  int64_t seq = 0;
  double time = 0;
  std::string type;  // measure, trigger, proposal, decision, apply, penalty, realized
  nlohmann::json data;
};

struct OperateResult {
  SystemState final_state;
  std::vector<LogEvent> log;
  int64_t requests = 0;
  int64_t proposals = 0;
  int64_t applied = 0;
};

using Approver = std::function<bool(const ReconfigProposal&)>;

OperateResult Operate(const Environment& env, const SystemState& state,
                      const WorkloadTrace& trace, const Policy& policy,
                      const Approver& approve = nullptr);

std::string FormatLog(const std::vector<LogEvent>& log);

}  // namespace envadapt::lifecycle

#endif  // ENVADAPT_LIFECYCLE_H_

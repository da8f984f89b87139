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

#ifndef ENVADAPT_PERFSIM_H_
#define ENVADAPT_PERFSIM_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "envadapt/minilang/ast.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/offload.h"
#include "envadapt/patterndb.h"
#include "envadapt/resource.h"

namespace envadapt::perfsim {

// Parameters of the simulated verification environment. Times are seconds.
struct CostModel {
  double cpu_op_cost = 1e-6;
  double gpu_speedup = 10;
  double kernel_launch = 0;
  double xfer_latency = 0;
  double xfer_per_byte = 0;
  double elem_bytes = 8;
  std::map<std::string, patterndb::CostFormula> accel_formulas;
  double noise_sigma = 0;
  uint64_t noise_seed = 0;
};

CostModel ParseCostModel(std::string_view json_text);
CostModel LoadCostModel(const std::filesystem::path& path);
std::string DumpCostModel(const CostModel& model);

// Kernels the model lacks take their formula from the pattern DB.
CostModel WithDbFormulas(CostModel model, const patterndb::PatternDb& db);

struct ExecutionReport {
  double total = 0;
  double cpu_time = 0;
  double device_time = 0;
  double transfer_time = 0;
  int64_t transfer_events = 0;
  int64_t transfer_bytes = 0;
  // Ops executed on the host; device ops as counted on the host.
  int64_t cpu_ops = 0;
  int64_t device_ops = 0;
  minilang::OutputTrace output;
};

struct SimulateOptions {
  // Accelerator kernels currently loaded. Calls to kernels outside the set
  // run their reference body on the CPU. nullopt means every kernel.
  std::optional<std::set<std::string>> active_kernels;
  int64_t step_budget = minilang::kDefaultStepBudget;
};

// Executes the annotated program. Offloaded loops run their iterations in
// reverse order, so any order dependence the analysis missed shows up in the
// output trace. Throws PatternShapeMismatch and UnhousedKernel.
ExecutionReport Simulate(const minilang::Ast& annotated, const OffloadPattern& pattern,
                         const CostModel& model, const minilang::InputBinding& input,
                         const SimulateOptions& options = {});

struct DeployablePlan {
  minilang::Ast annotated;
  OffloadPattern pattern;
  std::optional<std::set<std::string>> active_kernels;
  std::optional<resource::ResourcePlan> resources;
  resource::ScalingModel scaling;
};

struct PerfMeasurement {
  double latency = 0;
  double throughput = 0;
  double cpu_time = 0;
  double device_time = 0;
  double transfer_time = 0;
  minilang::OutputTrace output;
};

// Serial service of request_count identical requests. Without a resource
// plan the latency is the simulated total; with one, CPU and device times
// are scaled by the plan's units and overlap, transfers do not.
PerfMeasurement Measure(const DeployablePlan& plan, const minilang::InputBinding& input,
                        int64_t request_count, const CostModel& model);

}  // namespace envadapt::perfsim

#endif  // ENVADAPT_PERFSIM_H_

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

#include "envadapt/perfsim.h"

#include <functional>
#include <random>

#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/io.h"
#include "json_util.h"

namespace envadapt::perfsim {

using minilang::Ast;
using minilang::LoopId;
using minilang::Stmt;
using minilang::TransferDirective;
using minilang::TransferKind;
using internal::json;

CostModel ParseCostModel(std::string_view json_text) {
  using namespace internal;
  json j = ParseJson(std::string(json_text), "costmodel");
  CostModel m;
  m.cpu_op_cost = Number(j, "cpu_op_cost", std::nullopt, 0.0);
  m.gpu_speedup = Number(j, "gpu_speedup");
  if (!(m.gpu_speedup > 0)) throw SchemaError("gpu_speedup", "must be > 0");
  m.kernel_launch = Number(j, "kernel_launch", 0.0, 0.0);
  m.xfer_latency = Number(j, "xfer_latency", 0.0, 0.0);
  m.xfer_per_byte = Number(j, "xfer_per_byte", 0.0, 0.0);
  m.elem_bytes = Number(j, "elem_bytes", 8.0, 0.0);
  m.noise_sigma = Number(j, "noise_sigma", 0.0, 0.0);
  m.noise_seed = static_cast<uint64_t>(Integer(j, "noise_seed", 0, 0));
  if (j.contains("accel_formulas")) {
    const json& f = j.at("accel_formulas");
    if (!f.is_object()) throw SchemaError("accel_formulas", "must be an object");
    for (const auto& [kernel, v] : f.items()) {
      patterndb::CostFormula c;
      c.fixed = Number(v, "fixed", std::nullopt, 0.0);
      c.per_element = Number(v, "per_element", std::nullopt, 0.0);
      m.accel_formulas[kernel] = c;
    }
  }
  return m;
}

CostModel LoadCostModel(const std::filesystem::path& path) {
  return ParseCostModel(minilang::ReadFile(path));
}

std::string DumpCostModel(const CostModel& m) {
  json f = json::object();
  for (const auto& [k, c] : m.accel_formulas) f[k] = {{"fixed", c.fixed}, {"per_element", c.per_element}};
  json j = {{"cpu_op_cost", m.cpu_op_cost},   {"gpu_speedup", m.gpu_speedup},
            {"kernel_launch", m.kernel_launch}, {"xfer_latency", m.xfer_latency},
            {"xfer_per_byte", m.xfer_per_byte}, {"elem_bytes", m.elem_bytes},
            {"noise_sigma", m.noise_sigma},     {"noise_seed", m.noise_seed},
            {"accel_formulas", f}};
  return j.dump(2);
}

CostModel WithDbFormulas(CostModel model, const patterndb::PatternDb& db) {
  for (const auto& r : db.records()) model.accel_formulas.try_emplace(r.kernel_id, r.cost);
  return model;
}

namespace {

class Simulator : public minilang::Machine {
 public:
  Simulator(const Ast& ast, minilang::Memory mem, const std::set<LoopId>& offloaded,
            const CostModel& model, const SimulateOptions& options)
      : Machine(ast, std::move(mem), options.step_budget),
        offloaded_(offloaded),
        model_(model),
        options_(options) {}

  void Execute() {
    for (const TransferDirective& d : ast_.program_directives) {
      if (d.kind == TransferKind::kCopyIn) Transfer(d.var);
    }
    Run();
    for (const TransferDirective& d : ast_.program_directives) {
      if (d.kind == TransferKind::kCopyOut) Transfer(d.var);
    }
  }

  ExecutionReport Report() const {
    ExecutionReport r;
    r.cpu_ops = ops_ - device_ops_ - accel_ops_;
    r.device_ops = device_ops_;
    r.cpu_time = static_cast<double>(r.cpu_ops) * model_.cpu_op_cost;
    r.device_time = device_time_;
    r.transfer_time = transfer_time_;
    r.transfer_events = transfer_events_;
    r.transfer_bytes = transfer_bytes_;
    r.total = r.cpu_time + r.device_time + r.transfer_time;
    r.output = output_;
    return r;
  }

 protected:
  bool Reversed(const Stmt& loop) override { return IsOffloaded(loop); }

  void OnLoopEnter(const Stmt& loop) override {
    for (const TransferDirective& d : loop.directives) {
      if (d.kind == TransferKind::kCopyIn) Transfer(d.var);
    }
    if (IsOffloaded(loop)) entered_ops_ = ops_;
  }

  void OnLoopExit(const Stmt& loop) override {
    if (IsOffloaded(loop)) {
      int64_t ops = ops_ - entered_ops_;
      device_ops_ += ops;
      device_time_ += model_.kernel_launch +
                      static_cast<double>(ops) * model_.cpu_op_cost / model_.gpu_speedup;
    }
    for (const TransferDirective& d : loop.directives) {
      if (d.kind == TransferKind::kCopyOut) Transfer(d.var);
    }
  }

  void OnAccelEnter(const Stmt& accel) override {
    accel_on_ = !options_.active_kernels || options_.active_kernels->count(accel.name) > 0;
    if (!accel_on_) return;
    auto formula = model_.accel_formulas.find(accel.name);
    if (formula == model_.accel_formulas.end()) {
      throw Error(ErrorCode::kUnhousedKernel, "no cost formula for kernel " + accel.name);
    }
    accel_entered_ops_ = ops_;
    minilang::DefUse du = minilang::CollectDefUse(accel.body);
    for (minilang::VarId v : du.uses) {
      if (ast_.decls[v].is_array()) Transfer(v);
    }
    device_time_ += formula->second.fixed +
                    formula->second.per_element * static_cast<double>(accel.size);
  }

  void OnAccelExit(const Stmt& accel) override {
    if (!accel_on_) return;
    accel_ops_ += ops_ - accel_entered_ops_;
    minilang::DefUse du = minilang::CollectDefUse(accel.body);
    for (minilang::VarId v : du.defs) {
      if (ast_.decls[v].is_array()) Transfer(v);
    }
  }

 private:
  bool IsOffloaded(const Stmt& loop) const {
    return loop.loop_id >= 0 && offloaded_.count(loop.loop_id) > 0;
  }

  void Transfer(const std::string& name) { Transfer(*ast_.Lookup(name)); }
  void Transfer(minilang::VarId v) {
    auto bytes = static_cast<int64_t>(static_cast<double>(ast_.decls[v].element_count()) *
                                      model_.elem_bytes);
    ++transfer_events_;
    transfer_bytes_ += bytes;
    transfer_time_ += model_.xfer_latency + static_cast<double>(bytes) * model_.xfer_per_byte;
  }

  const std::set<LoopId>& offloaded_;
  const CostModel& model_;
  const SimulateOptions& options_;
  int64_t entered_ops_ = 0;
  int64_t device_ops_ = 0;
  int64_t accel_ops_ = 0;
  int64_t accel_entered_ops_ = 0;
  bool accel_on_ = false;
  double device_time_ = 0;
  double transfer_time_ = 0;
  int64_t transfer_events_ = 0;
  int64_t transfer_bytes_ = 0;
};

void ApplyNoise(ExecutionReport& r, const CostModel& model, const OffloadPattern& pattern) {
  if (model.noise_sigma <= 0) return;
  uint64_t h = std::hash<std::string>{}(pattern.Key());
  std::mt19937_64 rng(model.noise_seed ^ (h * 0x9E3779B97F4A7C15ULL));
  std::normal_distribution<double> n(0.0, model.noise_sigma);
  double factor = std::max(0.0, 1.0 + n(rng));
  r.cpu_time *= factor;
  r.device_time *= factor;
  r.transfer_time *= factor;
  r.total = r.cpu_time + r.device_time + r.transfer_time;
}

}  // namespace

ExecutionReport Simulate(const Ast& annotated, const OffloadPattern& pattern,
                         const CostModel& model, const minilang::InputBinding& input,
                         const SimulateOptions& options) {
  ValidatePattern(annotated, pattern);
  for (const TransferDirective& d : annotated.program_directives) {
    if (!annotated.Lookup(d.var)) {
      throw UndeclaredVariable(d.var, {});
    }
  }
  std::set<LoopId> offloaded = pattern.Offloaded();
  Simulator sim(annotated, minilang::InitialMemory(annotated, input), offloaded, model, options);
  sim.Execute();
  ExecutionReport r = sim.Report();
  ApplyNoise(r, model, pattern);
  return r;
}

PerfMeasurement Measure(const DeployablePlan& plan, const minilang::InputBinding& input,
                        int64_t request_count, const CostModel& model) {
  SimulateOptions options;
  options.active_kernels = plan.active_kernels;
  ExecutionReport r = Simulate(plan.annotated, plan.pattern, model, input, options);
  PerfMeasurement m;
  m.cpu_time = r.cpu_time;
  m.device_time = r.device_time;
  m.transfer_time = r.transfer_time;
  m.output = std::move(r.output);
  if (plan.resources) {
    const auto& res = *plan.resources;
    double cpu = resource::ScaledTime(r.cpu_time, plan.scaling.cpu_serial_frac, res.cpu_units);
    double dev = resource::ScaledTime(r.device_time, plan.scaling.device_serial_frac,
                                      res.device_units);
    m.latency = std::max(cpu, dev) + r.transfer_time;
  } else {
    m.latency = r.total;
  }
  double makespan = static_cast<double>(request_count) * m.latency;
  m.throughput = makespan > 0 ? static_cast<double>(request_count) / makespan : 0;
  return m;
}

}  // namespace envadapt::perfsim

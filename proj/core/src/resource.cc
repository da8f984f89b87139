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

#include "envadapt/resource.h"

#include <cmath>
#include <numeric>

#include "envadapt/minilang/io.h"
#include "json_util.h"

namespace envadapt::resource {

ScalingModel ParseScaling(std::string_view json_text) {
  using namespace internal;
  json j = ParseJson(std::string(json_text), "scaling");
  ScalingModel m;
  m.cpu_serial_frac = Number(j, "cpu_serial_frac", 0.0, 0.0);
  m.device_serial_frac = Number(j, "device_serial_frac", 0.0, 0.0);
  if (m.cpu_serial_frac > 1) throw SchemaError("cpu_serial_frac", "must be <= 1");
  if (m.device_serial_frac > 1) throw SchemaError("device_serial_frac", "must be <= 1");
  m.max_cpu_units = static_cast<int>(Integer(j, "max_cpu_units", 64, 1));
  m.max_device_units = static_cast<int>(Integer(j, "max_device_units", 16, 1));
  m.price_cpu = Number(j, "price_cpu", 1.0, 0.0);
  m.price_device = Number(j, "price_device", 1.0, 0.0);
  return m;
}

ScalingModel LoadScaling(const std::filesystem::path& path) {
  return ParseScaling(minilang::ReadFile(path));
}

double ScaledTime(double time, double serial_frac, int units) {
  return time * (serial_frac + (1 - serial_frac) / units);
}

Ratio ComputeRatio(double cpu_time, double device_time, const ScalingModel& model) {
  if (!(cpu_time > 0) || !(device_time > 0)) {
    throw Error(ErrorCode::kNonPositiveTime, "ratio needs positive cpu and device times");
  }
  Ratio best;
  double best_score = HUGE_VAL;
  for (int c = 1; c <= model.max_cpu_units; ++c) {
    for (int g = 1; g <= model.max_device_units; ++g) {
      if (std::gcd(c, g) != 1) continue;
      double tc = ScaledTime(cpu_time, model.cpu_serial_frac, c);
      double tg = ScaledTime(device_time, model.device_serial_frac, g);
      double score = std::abs(std::log(tc / tg));
      if (score < best_score) {
        best_score = score;
        best.cpu_units = c;
        best.device_units = g;
      }
    }
  }
  best.imbalance = std::exp(best_score);
  if (best.imbalance > kImbalanceWarning) {
    double tc = ScaledTime(cpu_time, model.cpu_serial_frac, best.cpu_units);
    double tg = ScaledTime(device_time, model.device_serial_frac, best.device_units);
    best.warning = std::string(tc > tg ? "cpu" : "device") +
                   " side remains the bottleneck: scaled times differ by " +
                   std::to_string(best.imbalance) + "x at the unit caps";
  }
  return best;
}

ResourcePlan PlanAt(const Ratio& ratio, int k, const ScalingModel& model, const BaseTimes& base) {
  ResourcePlan p;
  p.multiplier = k;
  p.cpu_units = k * ratio.cpu_units;
  p.device_units = k * ratio.device_units;
  p.ratio = static_cast<double>(ratio.cpu_units) / ratio.device_units;
  p.est_cpu_time = ScaledTime(base.cpu_time, model.cpu_serial_frac, p.cpu_units);
  p.est_device_time = ScaledTime(base.device_time, model.device_serial_frac, p.device_units);
  p.transfer_time = base.transfer_time;
  p.est_latency = std::max(p.est_cpu_time, p.est_device_time) + p.transfer_time;
  p.cost = p.cpu_units * model.price_cpu + p.device_units * model.price_device;
  return p;
}

ResourcePlan SizeResources(const Ratio& ratio, double perf_target, double budget,
                           const ScalingModel& model, const BaseTimes& base, int min_k) {
  for (int k = std::max(1, min_k); k * ratio.cpu_units <= model.max_cpu_units &&
                                    k * ratio.device_units <= model.max_device_units;
       ++k) {
    ResourcePlan p = PlanAt(ratio, k, model, base);
    if (p.est_latency > perf_target) continue;
    if (p.cost > budget) {
      throw Infeasible(InfeasibleReason::kBudgetExceeded,
                       "plan " + std::to_string(p.cpu_units) + ":" +
                           std::to_string(p.device_units) + " costs " + std::to_string(p.cost) +
                           ", budget " + std::to_string(budget));
    }
    return p;
  }
  throw Infeasible(InfeasibleReason::kLatencyUnreachable,
                   "no multiple of " + std::to_string(ratio.cpu_units) + ":" +
                       std::to_string(ratio.device_units) + " from k=" + std::to_string(min_k) +
                       " reaches latency " + std::to_string(perf_target) + " within unit caps");
}

}  // namespace envadapt::resource

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

#ifndef ENVADAPT_RESOURCE_H_
#define ENVADAPT_RESOURCE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace envadapt::resource {

// Amdahl-style scaling: T(u) = T * (serial + (1 - serial) / u).
struct ScalingModel {
  double cpu_serial_frac = 0;
  double device_serial_frac = 0;
  int max_cpu_units = 64;
  int max_device_units = 16;
  double price_cpu = 1;
  double price_device = 1;
};

ScalingModel ParseScaling(std::string_view json_text);
ScalingModel LoadScaling(const std::filesystem::path& path);

double ScaledTime(double time, double serial_frac, int units);

// Imbalance above this factor attaches a bottleneck warning to a ratio.
inline constexpr double kImbalanceWarning = 10.0;

struct Ratio {
  int cpu_units = 1;
  int device_units = 1;
  // max/min of the scaled times at this ratio.
  double imbalance = 1;
  std::optional<std::string> warning;
};

// Coprime (c, g) within the unit caps minimizing
// |log(T_cpu(c) / T_dev(g))|; ties go to smaller c, then smaller g.
// Throws Error(kNonPositiveTime).
Ratio ComputeRatio(double cpu_time, double device_time, const ScalingModel& model);

struct BaseTimes {
  double cpu_time = 0;
  double device_time = 0;
  double transfer_time = 0;
};

struct ResourcePlan {
  int cpu_units = 1;
  int device_units = 1;
  int multiplier = 1;
  double ratio = 1;
  double est_cpu_time = 0;
  double est_device_time = 0;
  double transfer_time = 0;
  // max(est_cpu_time, est_device_time) + transfer_time
  double est_latency = 0;
  double cost = 0;
  bool operator==(const ResourcePlan&) const = default;
};

ResourcePlan PlanAt(const Ratio& ratio, int k, const ScalingModel& model, const BaseTimes& base);

// Smallest k >= min_k whose plan meets perf_target; Infeasible when none
// does within the caps (latency_unreachable) or when that plan costs more
// than budget (budget_exceeded).
ResourcePlan SizeResources(const Ratio& ratio, double perf_target, double budget,
                           const ScalingModel& model, const BaseTimes& base, int min_k = 1);

}  // namespace envadapt::resource

#endif  // ENVADAPT_RESOURCE_H_

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

#ifndef ENVADAPT_PIPELINE_H_
#define ENVADAPT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "envadapt/lifecycle.h"

// End-to-end adaptation flow. Each step reads the artifacts of the steps
// before it from the output directory and writes its own, so a full run and
// a chain of single-step runs leave identical files behind.
namespace envadapt::pipeline {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

struct PipelineConfig {
  // Paths are resolved against the directory holding the config file.
  std::filesystem::path source;
  std::filesystem::path testcases;
  std::filesystem::path cost_model;
  std::filesystem::path patterns;
  std::filesystem::path topology;
  std::filesystem::path app_model;
  std::filesystem::path scaling;
  std::filesystem::path ga;
  std::optional<std::filesystem::path> trace;

  std::string program_component = "app";
  double perf_target = 0;
  double budget = 0;
  double placement_bound = 0;
  int fpga_slots = 1;
  bool auto_approve = false;
  std::optional<uint64_t> seed;
  int max_retries = 3;
  lifecycle::Policy policy;
};

PipelineConfig ParseConfig(std::string_view json_text, const std::filesystem::path& base_dir);
PipelineConfig LoadConfig(const std::filesystem::path& path);

enum class Step { kAnalyze, kSearch, kTune, kPlace, kVerify, kOperate };
inline constexpr Step kAllSteps[] = {Step::kAnalyze, Step::kSearch, Step::kTune,
                                     Step::kPlace,   Step::kVerify, Step::kOperate};

const char* StepName(Step step);
std::optional<Step> StepFromName(std::string_view name);
std::string ArtifactName(Step step);

struct StepResult {
  int exit_code = kExitPass;
  std::string status;   // "ok", "infeasible", "failed", "declined", "skipped"
  std::string summary;  // human-readable lines
};

struct RunOptions {
  std::filesystem::path out_dir;
  // Approves a verified deployment; consulted unless auto_approve is set.
  std::function<bool(const std::string& summary)> approve;
};

// Errors from the step are rethrown with the step name prefixed.
StepResult RunStep(Step step, const PipelineConfig& config, const RunOptions& options);
StepResult RunFull(const PipelineConfig& config, const RunOptions& options);

// Rebuilds report.json from whichever artifacts exist in `out_dir`.
void WriteReport(const std::filesystem::path& out_dir);

// The adaptation environment and the deployed state the artifacts describe.
lifecycle::Environment LoadEnvironment(const PipelineConfig& config,
                                       const std::filesystem::path& out_dir);
lifecycle::SystemState LoadDeployedState(const std::filesystem::path& out_dir);

}  // namespace envadapt::pipeline

#endif  // ENVADAPT_PIPELINE_H_

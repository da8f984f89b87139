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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>

#include "envadapt/error.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/minilang/io.h"
#include "envadapt/minilang/parser.h"
#include "envadapt/pipeline.h"

namespace envadapt::cli {

namespace {

struct Overrides {
  std::string config;
  std::string out = "envadapt-out";
  bool yes = false;
  std::optional<uint64_t> seed;
  std::optional<double> perf_target;
  std::optional<double> budget;
  std::optional<double> placement_bound;
  std::optional<int> fpga_slots;
  std::optional<std::string> trace;
};

void AddPipelineFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "pipeline config (JSON)")->required();
  cmd->add_option("--out", o.out, "artifact directory")->capture_default_str();
  cmd->add_flag("--yes,-y", o.yes, "approve the verified deployment without asking");
  cmd->add_option("--seed", o.seed, "GA seed");
  cmd->add_option("--perf-target", o.perf_target, "required request latency");
  cmd->add_option("--budget", o.budget, "resource budget");
  cmd->add_option("--placement-bound", o.placement_bound, "placement latency bound");
  cmd->add_option("--fpga-slots", o.fpga_slots, "kernels that fit on the device at once");
  cmd->add_option("--trace", o.trace, "workload trace CSV for operate");
}

pipeline::PipelineConfig Resolve(const Overrides& o) {
  pipeline::PipelineConfig c = pipeline::LoadConfig(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.perf_target) c.perf_target = *o.perf_target;
  if (o.budget) c.budget = *o.budget;
  if (o.placement_bound) c.placement_bound = *o.placement_bound;
  if (o.fpga_slots) c.fpga_slots = *o.fpga_slots;
  if (o.trace) {
    if (!std::filesystem::exists(*o.trace)) {
      throw Error(ErrorCode::kIo, "trace: no such file " + *o.trace);
    }
    c.trace = *o.trace;
  }
  if (o.yes) c.auto_approve = true;
  return c;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"envadapt: adapt an ELC program to a heterogeneous environment"};
  app.require_subcommand(1);
  Overrides o;

  CLI::App* full = app.add_subcommand("full", "run every step");
  AddPipelineFlags(full, o);
  std::vector<std::pair<CLI::App*, pipeline::Step>> steps;
  const std::map<pipeline::Step, const char*> about = {
      {pipeline::Step::kAnalyze, "parse, analyze and substitute accelerator patterns"},
      {pipeline::Step::kSearch, "search offload patterns and insert transfers"},
      {pipeline::Step::kTune, "choose the CPU:device ratio and size it"},
      {pipeline::Step::kPlace, "place the application on the topology"},
      {pipeline::Step::kVerify, "run the testcases against the deployment"},
      {pipeline::Step::kOperate, "replay a workload trace and reconfigure"},
  };
  for (pipeline::Step s : pipeline::kAllSteps) {
    CLI::App* cmd = app.add_subcommand(pipeline::StepName(s), about.at(s));
    AddPipelineFlags(cmd, o);
    steps.emplace_back(cmd, s);
  }

  std::string program;
  std::string input;
  CLI::App* run = app.add_subcommand("run", "interpret an ELC program");
  run->add_option("program", program, "ELC source")->required();
  run->add_option("--input", input, "input binding (JSON)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : pipeline::kExitError;
  }

  pipeline::RunOptions options;
  options.approve = [&](const std::string& summary) {
    out << summary << "approve? [y/N] " << std::flush;
    std::string answer;
    if (!std::getline(in, answer)) return false;
    return answer == "y" || answer == "Y" || answer == "yes";
  };

  try {
    if (run->parsed()) {
      minilang::Ast ast = minilang::Parse(minilang::ReadFile(program));
      minilang::InputBinding binding;
      if (!input.empty()) binding = minilang::LoadInputBinding(input);
      out << minilang::FormatOutputTrace(minilang::Interpret(ast, binding).first);
      return 0;
    }
    options.out_dir = o.out;
    pipeline::PipelineConfig config = Resolve(o);
    pipeline::StepResult r;
    if (full->parsed()) {
      r = pipeline::RunFull(config, options);
    } else {
      auto it = std::find_if(steps.begin(), steps.end(),
                             [](const auto& p) { return p.first->parsed(); });
      r = pipeline::RunStep(it->second, config, options);
    }
    out << r.summary;
    out << "status: " << r.status << " (report in " << (options.out_dir / "report.json").string()
        << ")\n";
    return r.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return pipeline::kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return pipeline::kExitError;
  }
}

}  // namespace envadapt::cli

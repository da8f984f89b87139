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

#include "envadapt/pipeline.h"

#include <sstream>

#include "envadapt/gasearch.h"
#include "envadapt/json_io.h"
#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/io.h"
#include "envadapt/minilang/parser.h"
#include "envadapt/minilang/printer.h"
#include "envadapt/patterndb.h"
#include "envadapt/transfer.h"
#include "json_util.h"

namespace envadapt::pipeline {

namespace fs = std::filesystem;
using internal::json;
using minilang::Ast;

namespace {

constexpr const char* kReportName = "report.json";
constexpr const char* kLogName = "operate_log.jsonl";

fs::path RequiredPath(const json& j, const char* key, const fs::path& base) {
  fs::path p = base / internal::String(j, key);
  if (!fs::exists(p)) throw Error(ErrorCode::kIo, std::string(key) + ": no such file " + p.string());
  return p;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

json ReadArtifact(const fs::path& out_dir, Step step) {
  fs::path p = out_dir / ArtifactName(step);
  if (!fs::exists(p)) {
    throw Error(ErrorCode::kIo, "missing artifact " + ArtifactName(step) + "; run '" +
                                    StepName(step) + "' first");
  }
  json j = internal::ParseJson(minilang::ReadFile(p), ArtifactName(step));
  if (internal::Integer(j, "schema_version") != kSchemaVersion) {
    throw SchemaError("schema_version", ArtifactName(step) + " has an unsupported version");
  }
  return j;
}

void WriteArtifact(const fs::path& out_dir, Step step, json body, const std::string& status) {
  json doc = {{"schema_version", kSchemaVersion}, {"step", StepName(step)}, {"status", status}};
  doc.update(body);
  minilang::WriteFile(out_dir / ArtifactName(step), Dump(doc));
}

void RequireOk(const json& artifact, Step step) {
  if (internal::String(artifact, "status") != "ok") {
    throw Error(ErrorCode::kInfeasible,
                std::string(StepName(step)) + " did not complete; nothing to build on");
  }
}

patterndb::PatternDb LoadPatterns(const PipelineConfig& config) {
  return config.patterns.empty() ? patterndb::PatternDb() : patterndb::LoadDb(config.patterns);
}

std::vector<gasearch::WeightedInput> DesignInputs(const lifecycle::Environment& env) {
  std::vector<gasearch::WeightedInput> inputs;
  for (const auto& tc : env.testcases) {
    inputs.push_back({tc.input, static_cast<double>(tc.request_count)});
  }
  return inputs;
}

// Request-weighted simulated latency of the program under `plan`.
double MixLatency(const lifecycle::Environment& env, const lifecycle::SystemState& state) {
  perfsim::DeployablePlan plan{state.annotated, state.pattern, state.active_kernels,
                               state.resources, env.scaling};
  double total = 0;
  double sum = 0;
  for (const auto& [kind, w] : lifecycle::DesignMix(env)) {
    sum += w * perfsim::Measure(plan, lifecycle::FindTestcase(env, kind).input, 1, env.model).latency;
    total += w;
  }
  return total > 0 ? sum / total : 0;
}

// Search, tune and place artifacts describe a partial state; fill in as
// much as exists.
lifecycle::SystemState PartialState(const fs::path& out_dir, bool with_tune, bool with_place) {
  lifecycle::SystemState s;
  json search = ReadArtifact(out_dir, Step::kSearch);
  RequireOk(search, Step::kSearch);
  s.annotated = minilang::Parse(internal::String(search, "annotated_source"));
  s.pattern = json_io::PatternFromJson(internal::Field(search, "pattern"));
  for (const json& k : internal::Field(search, "active_kernels")) s.active_kernels.insert(k.get<std::string>());
  if (with_tune) {
    json tune = ReadArtifact(out_dir, Step::kTune);
    RequireOk(tune, Step::kTune);
    s.ratio = json_io::RatioFromJson(internal::Field(tune, "ratio"));
    s.resources = json_io::ResourcePlanFromJson(internal::Field(tune, "plan"));
  }
  if (with_place) {
    json place = ReadArtifact(out_dir, Step::kPlace);
    RequireOk(place, Step::kPlace);
    s.resources = json_io::ResourcePlanFromJson(internal::Field(place, "resources"));
    s.placement = json_io::PlacementPlanFromJson(internal::Field(place, "placement"));
  }
  return s;
}

StepResult Analyze(const PipelineConfig& config, const RunOptions& options) {
  Ast original = minilang::Parse(minilang::ReadFile(config.source));
  patterndb::PatternDb db = LoadPatterns(config);
  std::vector<patterndb::BlockMatch> matches = patterndb::MatchBlocks(original, db);
  Ast program = patterndb::SubstituteAll(original, matches);

  json jm = json::array();
  std::ostringstream summary;
  for (const auto& m : matches) {
    jm.push_back({{"pattern", m.pattern.name},
                  {"kernel_id", m.pattern.kernel_id},
                  {"similarity", m.similarity},
                  {"size", m.size},
                  {"region", m.region}});
    summary << "  matched " << m.pattern.name << " (similarity " << m.similarity << ") -> "
            << m.pattern.kernel_id << "\n";
  }
  json jl = json::array();
  int parallel = 0;
  for (const auto& l : minilang::Analyze(program)) {
    json e = {{"id", l.id}, {"depth", l.depth}, {"parallelizable", l.parallelizable}};
    if (l.parent) e["parent"] = *l.parent;
    if (!l.parallelizable) e["reason"] = l.reason;
    if (l.static_trip) e["static_trip"] = *l.static_trip;
    jl.push_back(std::move(e));
    parallel += l.parallelizable ? 1 : 0;
  }
  WriteArtifact(options.out_dir, Step::kAnalyze,
                {{"source", minilang::Print(program)},
                 {"matches", jm},
                 {"loops", jl},
                 {"kernels", lifecycle::KernelsIn(program)}},
                "ok");
  summary << "analyze: " << jl.size() << " loops, " << parallel << " parallelizable, "
          << matches.size() << " blocks substituted\n";
  return {kExitPass, "ok", summary.str()};
}

StepResult Search(const PipelineConfig& config, const RunOptions& options) {
  lifecycle::Environment env = LoadEnvironment(config, options.out_dir);
  gasearch::CandidateSpace space = gasearch::MakeCandidateSpace(minilang::Analyze(env.program));
  OffloadPattern none = OffloadPattern::None(space.loop_map);
  std::set<std::string> active =
      lifecycle::ChooseKernels(env, env.program, none, lifecycle::DesignMix(env));

  perfsim::SimulateOptions sim_options;
  sim_options.active_kernels = active;
  gasearch::SimulatedFitness sim(env.program, space, env.model, DesignInputs(env), sim_options,
                                 env.ga.penalty);
  gasearch::MemoFitness fitness([&sim](const OffloadPattern& p) { return sim(p); });
  json body;
  OffloadPattern best = none;
  double best_time = sim.baseline();
  if (space.bits() > 0) {
    gasearch::SearchResult r = gasearch::RunGa(space, env.ga, fitness);
    best = r.best;
    best_time = r.best_time;
    json history = json::array();
    for (const auto& g : r.history) history.push_back({{"best", g.best}, {"mean", g.mean}});
    body["history"] = history;
  }
  auto directives = transfer::ComputeDirectives(env.program, best);
  Ast annotated = transfer::InsertDirectives(env.program, directives);
  body.update({{"pattern", json_io::ToJson(best)},
               {"active_kernels", active},
               {"directives", json_io::ToJson(directives)},
               {"annotated_source", minilang::Print(annotated)},
               {"baseline_time", sim.baseline()},
               {"best_time", best_time},
               {"evaluations", fitness.evaluations()},
               {"cache_hits", fitness.cache_hits()}});
  WriteArtifact(options.out_dir, Step::kSearch, body, "ok");
  std::ostringstream summary;
  summary << "search: pattern " << best.Key() << ", time " << best_time << " (all-CPU "
          << sim.baseline() << "), " << directives.size() << " transfer directives";
  if (!active.empty()) {
    summary << ", kernels";
    for (const auto& k : active) summary << " " << k;
  }
  summary << "\n";
  return {kExitPass, "ok", summary.str()};
}

StepResult Tune(const PipelineConfig& config, const RunOptions& options) {
  lifecycle::Environment env = LoadEnvironment(config, options.out_dir);
  lifecycle::SystemState s = PartialState(options.out_dir, false, false);
  resource::BaseTimes base = lifecycle::MixBaseTimes(env, s.annotated, s.pattern,
                                                     s.active_kernels, lifecycle::DesignMix(env));
  resource::Ratio ratio = resource::ComputeRatio(base.cpu_time, base.device_time, env.scaling);
  json body = {{"base", json_io::ToJson(base)}, {"ratio", json_io::ToJson(ratio)}};
  std::ostringstream summary;
  summary << "tune: ratio " << ratio.cpu_units << ":" << ratio.device_units;
  if (ratio.warning) summary << " (" << *ratio.warning << ")";
  try {
    resource::ResourcePlan plan =
        resource::SizeResources(ratio, env.perf_target, env.budget, env.scaling, base, 1);
    body["plan"] = json_io::ToJson(plan);
    WriteArtifact(options.out_dir, Step::kTune, body, "ok");
    summary << ", plan " << plan.cpu_units << ":" << plan.device_units << " est latency "
            << plan.est_latency << " cost " << plan.cost << "\n";
    return {kExitPass, "ok", summary.str()};
  } catch (const Infeasible& e) {
    body["reason"] = InfeasibleReasonName(e.reason());
    body["detail"] = e.what();
    WriteArtifact(options.out_dir, Step::kTune, body, "infeasible");
    summary << ", infeasible: " << e.what() << "\n";
    return {kExitInfeasible, "infeasible", summary.str()};
  }
}

StepResult Place(const PipelineConfig& config, const RunOptions& options) {
  json tune = ReadArtifact(options.out_dir, Step::kTune);
  if (internal::String(tune, "status") != "ok") {
    WriteArtifact(options.out_dir, Step::kPlace, {{"detail", "resource sizing was infeasible"}},
                  "infeasible");
    return {kExitInfeasible, "infeasible", "place: skipped, resource sizing was infeasible\n"};
  }
  lifecycle::Environment env = LoadEnvironment(config, options.out_dir);
  lifecycle::SystemState s = PartialState(options.out_dir, true, false);
  resource::BaseTimes base = json_io::BaseTimesFromJson(internal::Field(tune, "base"));
  std::ostringstream summary;
  for (int retries = 0;; ++retries) {
    std::string failure;
    try {
      placement::AppModel app = lifecycle::AppFor(env, s.resources, MixLatency(env, s));
      s.placement = placement::SolvePlacement(
          env.topology, app, placement::SolveMode::MinCost(env.placement_bound));
    } catch (const Infeasible& e) {
      failure = e.what();
    }
    if (failure.empty()) {
      WriteArtifact(options.out_dir, Step::kPlace,
                    {{"resources", json_io::ToJson(s.resources)},
                     {"placement", json_io::ToJson(s.placement)},
                     {"retries", retries}},
                    "ok");
      summary << "place:";
      for (const auto& [comp, node] : s.placement.assign) summary << " " << comp << "@" << node;
      summary << ", latency " << s.placement.eval.latency << " cost " << s.placement.eval.cost;
      if (retries > 0) summary << " after " << retries << " resize(s)";
      summary << "\n";
      return {kExitPass, "ok", summary.str()};
    }
    std::string detail;
    if (retries >= config.max_retries) {
      detail = "no placement after " + std::to_string(retries) + " resizes: " + failure;
    } else {
      try {
        s.resources = resource::SizeResources(s.ratio, env.perf_target, env.budget, env.scaling,
                                              base, s.resources.multiplier + 1);
        continue;
      } catch (const Infeasible& e) {
        detail = std::string("resize failed: ") + e.what();
      }
    }
    WriteArtifact(options.out_dir, Step::kPlace, {{"retries", retries}, {"detail", detail}},
                  "infeasible");
    return {kExitInfeasible, "infeasible", "place: infeasible, " + detail + "\n"};
  }
}

StepResult Verify(const PipelineConfig& config, const RunOptions& options) {
  lifecycle::Environment env = LoadEnvironment(config, options.out_dir);
  lifecycle::SystemState s = PartialState(options.out_dir, true, true);
  Ast reference = minilang::Parse(minilang::ReadFile(config.source));
  lifecycle::VerificationReport report =
      lifecycle::VerifyDeployment(env, s, env.testcases, &reference);
  std::ostringstream summary;
  summary << "verify: " << report.cases.size() << " testcases, "
          << (report.pass ? "all pass" : "failing:");
  for (const auto& id : report.failing) summary << " " << id;
  summary << "; " << report.cpu_units << " cpu + " << report.device_units
          << " device units, cost " << report.resource_cost + report.placement_cost << "\n";
  json body = {{"report", json_io::ToJson(report)}};
  if (!report.pass) {
    body["approved"] = false;
    WriteArtifact(options.out_dir, Step::kVerify, body, "failed");
    return {kExitError, "failed", summary.str()};
  }
  bool approved = config.auto_approve || (options.approve && options.approve(summary.str()));
  body["approved"] = approved;
  std::string status = approved ? "ok" : "declined";
  WriteArtifact(options.out_dir, Step::kVerify, body, status);
  if (!approved) summary << "verify: deployment declined\n";
  return {approved ? kExitPass : kExitError, status, summary.str()};
}

StepResult OperateStep(const PipelineConfig& config, const RunOptions& options) {
  RequireOk(ReadArtifact(options.out_dir, Step::kVerify), Step::kVerify);
  if (!config.trace) {
    WriteArtifact(options.out_dir, Step::kOperate, json::object(), "skipped");
    return {kExitPass, "skipped", "operate: no trace configured\n"};
  }
  lifecycle::Environment env = LoadEnvironment(config, options.out_dir);
  lifecycle::SystemState s = LoadDeployedState(options.out_dir);
  lifecycle::Policy policy = config.policy;
  policy.auto_approve = policy.auto_approve || config.auto_approve;
  lifecycle::Approver approve;
  if (options.approve) {
    approve = [&options](const lifecycle::ReconfigProposal& p) {
      return options.approve(json_io::ToJson(p).dump());
    };
  }
  lifecycle::OperateResult r =
      lifecycle::Operate(env, s, lifecycle::LoadTrace(*config.trace), policy, approve);
  minilang::WriteFile(options.out_dir / kLogName, lifecycle::FormatLog(r.log));
  json proposals = json::array();
  json realized = json::array();
  for (const auto& e : r.log) {
    if (e.type == "proposal") proposals.push_back(json_io::ToJson(e));
    if (e.type == "realized") realized.push_back(json_io::ToJson(e));
  }
  WriteArtifact(options.out_dir, Step::kOperate,
                {{"requests", r.requests},
                 {"proposals", proposals},
                 {"realized", realized},
                 {"applied", r.applied},
                 {"final_version", r.final_state.version},
                 {"final_active_kernels", r.final_state.active_kernels},
                 {"log", kLogName}},
                "ok");
  std::ostringstream summary;
  summary << "operate: " << r.requests << " requests, " << r.proposals << " proposals, "
          << r.applied << " applied, final version " << r.final_state.version << "\n";
  return {kExitPass, "ok", summary.str()};
}

}  // namespace

PipelineConfig ParseConfig(std::string_view json_text, const fs::path& base_dir) {
  using namespace internal;
  json j = ParseJson(std::string(json_text), "pipeline config");
  PipelineConfig c;
  c.source = RequiredPath(j, "source", base_dir);
  c.testcases = RequiredPath(j, "testcases", base_dir);
  c.cost_model = RequiredPath(j, "cost_model", base_dir);
  c.topology = RequiredPath(j, "topology", base_dir);
  c.app_model = RequiredPath(j, "app_model", base_dir);
  c.scaling = RequiredPath(j, "scaling", base_dir);
  if (j.contains("patterns")) c.patterns = RequiredPath(j, "patterns", base_dir);
  if (j.contains("ga")) c.ga = RequiredPath(j, "ga", base_dir);
  if (j.contains("trace")) c.trace = RequiredPath(j, "trace", base_dir);
  c.program_component = String(j, "program_component", c.program_component);
  c.perf_target = Number(j, "perf_target", {}, 0.0);
  c.budget = Number(j, "budget", {}, 0.0);
  c.placement_bound = Number(j, "placement_bound", {}, 0.0);
  c.fpga_slots = static_cast<int>(Integer(j, "fpga_slots", c.fpga_slots, 0));
  c.auto_approve = Bool(j, "auto_approve", c.auto_approve);
  if (j.contains("seed")) c.seed = static_cast<uint64_t>(Integer(j, "seed", {}, 0));
  c.max_retries = static_cast<int>(Integer(j, "max_retries", c.max_retries, 0));
  if (j.contains("policy")) c.policy = lifecycle::ParsePolicy(j.at("policy"));
  return c;
}

PipelineConfig LoadConfig(const fs::path& path) {
  return ParseConfig(minilang::ReadFile(path), path.parent_path());
}

const char* StepName(Step step) {
  switch (step) {
    case Step::kAnalyze: return "analyze";
    case Step::kSearch: return "search";
    case Step::kTune: return "tune";
    case Step::kPlace: return "place";
    case Step::kVerify: return "verify";
    case Step::kOperate: return "operate";
  }
  return "?";
}

std::optional<Step> StepFromName(std::string_view name) {
  for (Step s : kAllSteps) {
    if (name == StepName(s)) return s;
  }
  return std::nullopt;
}

std::string ArtifactName(Step step) { return std::string(StepName(step)) + ".json"; }

lifecycle::Environment LoadEnvironment(const PipelineConfig& config, const fs::path& out_dir) {
  json analysis = ReadArtifact(out_dir, Step::kAnalyze);
  lifecycle::Environment env;
  env.program = minilang::Parse(internal::String(analysis, "source"));
  env.model = perfsim::WithDbFormulas(perfsim::LoadCostModel(config.cost_model), LoadPatterns(config));
  env.scaling = resource::LoadScaling(config.scaling);
  env.topology = placement::LoadTopology(config.topology);
  env.app = placement::LoadAppModel(config.app_model);
  env.program_component = config.program_component;
  if (!config.ga.empty()) env.ga = gasearch::LoadGaConfig(config.ga);
  if (config.seed) env.ga.seed = *config.seed;
  env.testcases = lifecycle::LoadTestcases(config.testcases);
  env.perf_target = config.perf_target;
  env.budget = config.budget;
  env.placement_bound = config.placement_bound;
  env.fpga_slots = config.fpga_slots;
  return env;
}

lifecycle::SystemState LoadDeployedState(const fs::path& out_dir) {
  return PartialState(out_dir, true, true);
}

void WriteReport(const fs::path& out_dir) {
  json steps = json::object();
  std::string status = "ok";
  std::string last;
  for (Step s : kAllSteps) {
    if (!fs::exists(out_dir / ArtifactName(s))) continue;
    json a = ReadArtifact(out_dir, s);
    std::string st = internal::String(a, "status");
    if (st != "skipped") status = st;
    last = StepName(s);
    steps[StepName(s)] = std::move(a);
  }
  int exit_code = kExitPass;
  if (status == "infeasible") exit_code = kExitInfeasible;
  if (status == "failed" || status == "declined") exit_code = kExitError;
  if (status == "ok") status = "pass";
  json report = {{"schema_version", kSchemaVersion},
                 {"status", status},
                 {"exit_code", exit_code},
                 {"last_step", last},
                 {"steps", steps}};
  minilang::WriteFile(out_dir / kReportName, Dump(report));
}

StepResult RunStep(Step step, const PipelineConfig& config, const RunOptions& options) {
  fs::create_directories(options.out_dir);
  // This step and everything after it is about to be recomputed.
  bool stale = false;
  for (Step s : kAllSteps) {
    stale = stale || s == step;
    if (stale) fs::remove(options.out_dir / ArtifactName(s));
  }
  fs::remove(options.out_dir / kLogName);
  StepResult r;
  try {
    switch (step) {
      case Step::kAnalyze: r = Analyze(config, options); break;
      case Step::kSearch: r = Search(config, options); break;
      case Step::kTune: r = Tune(config, options); break;
      case Step::kPlace: r = Place(config, options); break;
      case Step::kVerify: r = Verify(config, options); break;
      case Step::kOperate: r = OperateStep(config, options); break;
    }
  } catch (const Error& e) {
    WriteReport(options.out_dir);
    throw Error(e.code(), std::string(StepName(step)) + ": " + e.what());
  }
  WriteReport(options.out_dir);
  return r;
}

StepResult RunFull(const PipelineConfig& config, const RunOptions& options) {
  StepResult all;
  for (Step s : kAllSteps) {
    StepResult r = RunStep(s, config, options);
    all.summary += r.summary;
    all.exit_code = r.exit_code;
    if (r.status != "skipped") all.status = r.status == "ok" ? "pass" : r.status;
    if (r.exit_code != kExitPass) break;
  }
  return all;
}

}  // namespace envadapt::pipeline

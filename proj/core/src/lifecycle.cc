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

#include "envadapt/lifecycle.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "envadapt/json_io.h"
#include "envadapt/minilang/io.h"
#include "envadapt/transfer.h"
#include "json_util.h"

namespace envadapt::lifecycle {

using internal::json;
using minilang::Ast;
using minilang::Stmt;

bool Testcase::is_regression() const {
  return std::find(tags.begin(), tags.end(), "regression") != tags.end();
}

std::vector<Testcase> ParseTestcases(std::string_view json_text) {
  using namespace internal;
  json doc = ParseJson(std::string(json_text), "testcases");
  const json* list = doc.is_object() ? &Field(doc, "testcases") : &doc;
  if (!list->is_array()) throw SchemaError("testcases", "must be an array");
  std::vector<Testcase> out;
  std::set<std::string> ids;
  for (const json& j : *list) {
    Testcase tc;
    tc.id = String(j, "id");
    if (!ids.insert(tc.id).second) throw SchemaError("id", "duplicate testcase " + tc.id);
    if (j.contains("input")) tc.input = minilang::ParseInputBinding(j.at("input").dump());
    tc.request_count = Integer(j, "request_count", 1, 1);
    if (j.contains("required_latency") && !j.at("required_latency").is_null()) {
      tc.required_latency = Number(j, "required_latency", {}, 0.0);
    }
    if (j.contains("tags")) {
      for (const json& t : j.at("tags")) {
        if (!t.is_string()) throw SchemaError("tags", "must be strings");
        tc.tags.push_back(t.get<std::string>());
      }
    }
    if (j.contains("expected_output")) {
      minilang::OutputTrace trace;
      for (const json& v : j.at("expected_output")) {
        if (!v.is_number()) throw SchemaError("expected_output", "must be numbers");
        trace.push_back({v.get<double>(), v.is_number_integer()});
      }
      tc.expected_output = std::move(trace);
    }
    out.push_back(std::move(tc));
  }
  return out;
}

std::vector<Testcase> LoadTestcases(const std::filesystem::path& path) {
  return ParseTestcases(minilang::ReadFile(path));
}

Mix DesignMix(const Environment& env) {
  Mix mix;
  for (const Testcase& tc : env.testcases) mix[tc.id] += static_cast<double>(tc.request_count);
  return mix;
}

const Testcase& FindTestcase(const Environment& env, const std::string& kind) {
  for (const Testcase& tc : env.testcases) {
    if (tc.id == kind) return tc;
  }
  throw SchemaError("kind", "no testcase for request kind " + kind);
}

placement::AppModel AppFor(const Environment& env, const resource::ResourcePlan& plan,
                           double request_latency) {
  placement::AppModel app = env.app;
  for (placement::Component& c : app.components) {
    if (c.id != env.program_component) continue;
    c.demand = plan.cpu_units + plan.device_units;
    c.work = env.model.cpu_op_cost > 0 ? request_latency / env.model.cpu_op_cost * c.demand : 0;
    return app;
  }
  throw SchemaError("program_component", "app model has no component " + env.program_component);
}

KindLatency MeasureKind(const Environment& env, const SystemState& state, const Testcase& tc) {
  perfsim::DeployablePlan plan{state.annotated, state.pattern, state.active_kernels,
                               state.resources, env.scaling};
  KindLatency k;
  k.perf = perfsim::Measure(plan, tc.input, 1, env.model);
  placement::AppModel app = AppFor(env, state.resources, k.perf.latency);
  k.placement = placement::EvaluatePlacement(env.topology, app, state.placement.assign);
  k.latency = k.placement.latency;
  k.bottleneck = std::isfinite(k.placement.throughput) && k.placement.throughput > 0
                     ? 1 / k.placement.throughput
                     : 0;
  return k;
}

namespace {

// Per-kind measurements for one state, computed on first use.
class KindCache {
 public:
  KindCache(const Environment& env, const SystemState& state) : env_(env), state_(state) {}
  const KindLatency& Get(const std::string& kind) {
    auto it = cache_.find(kind);
    if (it == cache_.end()) {
      it = cache_.emplace(kind, MeasureKind(env_, state_, FindTestcase(env_, kind))).first;
    }
    return it->second;
  }

 private:
  const Environment& env_;
  const SystemState& state_;
  std::map<std::string, KindLatency> cache_;
};

double MixTotal(const Mix& mix) {
  double t = 0;
  for (const auto& [k, w] : mix) t += w;
  return t;
}

double Overload(KindCache& cache, const Mix& mix, double rate) {
  double total = MixTotal(mix);
  if (total <= 0) return 1;
  double bottleneck = 0;
  for (const auto& [kind, w] : mix) bottleneck += w / total * cache.Get(kind).bottleneck;
  return std::max(1.0, rate * bottleneck);
}

double Expected(KindCache& cache, const Mix& mix, double rate) {
  double total = MixTotal(mix);
  if (total <= 0) return 0;
  double mean = 0;
  for (const auto& [kind, w] : mix) mean += w / total * cache.Get(kind).latency;
  return mean * Overload(cache, mix, rate);
}

perfsim::SimulateOptions ActiveOptions(const std::set<std::string>& active) {
  perfsim::SimulateOptions o;
  o.active_kernels = active;
  return o;
}

}  // namespace

double OverloadFactor(const Environment& env, const SystemState& state, const Mix& mix,
                      double rate) {
  KindCache cache(env, state);
  return Overload(cache, mix, rate);
}

double ExpectedLatency(const Environment& env, const SystemState& state, const Mix& mix,
                       double rate) {
  KindCache cache(env, state);
  return Expected(cache, mix, rate);
}

resource::BaseTimes MixBaseTimes(const Environment& env, const Ast& annotated,
                                 const OffloadPattern& pattern,
                                 const std::set<std::string>& active, const Mix& mix) {
  resource::BaseTimes base;
  double total = MixTotal(mix);
  if (total <= 0) return base;
  for (const auto& [kind, w] : mix) {
    perfsim::ExecutionReport r = perfsim::Simulate(
        annotated, pattern, env.model, FindTestcase(env, kind).input, ActiveOptions(active));
    base.cpu_time += w / total * r.cpu_time;
    base.device_time += w / total * r.device_time;
    base.transfer_time += w / total * r.transfer_time;
  }
  return base;
}

std::set<std::string> KernelsIn(const Ast& ast) {
  std::set<std::string> out;
  minilang::WalkStmts(ast, [&](const Stmt& s, const auto&) {
    if (s.kind == Stmt::Kind::kAccel) out.insert(s.name);
  });
  return out;
}

std::set<std::string> ChooseKernels(const Environment& env, const Ast& annotated,
                                    const OffloadPattern& pattern, const Mix& mix) {
  std::vector<std::string> kernels;
  for (const std::string& k : KernelsIn(annotated)) kernels.push_back(k);
  const double total = MixTotal(mix);
  auto score = [&](const std::set<std::string>& active) {
    double t = 0;
    for (const auto& [kind, w] : mix) {
      t += w / total *
           perfsim::Simulate(annotated, pattern, env.model, FindTestcase(env, kind).input,
                             ActiveOptions(active))
               .total;
    }
    return t;
  };
  std::set<std::string> best;
  double best_time = score(best);
  const size_t slots = static_cast<size_t>(std::max(0, env.fpga_slots));
  // Subsets by size, each size in lexicographic order of kernel ids.
  for (size_t size = 1; size <= std::min(slots, kernels.size()); ++size) {
    std::vector<bool> pick(kernels.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<ptrdiff_t>(size), true);
    do {
      std::set<std::string> active;
      for (size_t i = 0; i < kernels.size(); ++i) {
        if (pick[i]) active.insert(kernels[i]);
      }
      double t = score(active);
      if (t < best_time) {
        best_time = t;
        best = std::move(active);
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return best;
}

std::optional<int64_t> FirstDiff(const minilang::OutputTrace& a, const minilang::OutputTrace& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (!(a[i] == b[i])) return static_cast<int64_t>(i);
  }
  if (a.size() != b.size()) return static_cast<int64_t>(n);
  return std::nullopt;
}

VerificationReport VerifyDeployment(const Environment& env, const SystemState& state,
                                    const std::vector<Testcase>& testcases, const Ast* reference) {
  VerificationReport report;
  for (const Testcase& tc : testcases) {
    KindLatency k = MeasureKind(env, state, tc);
    CaseResult c;
    c.id = tc.id;
    c.latency = k.latency;
    c.throughput = k.latency > 0 ? static_cast<double>(tc.request_count) /
                                       (static_cast<double>(tc.request_count) * k.latency)
                                 : 0;
    c.cpu_time = k.perf.cpu_time;
    c.device_time = k.perf.device_time;
    c.transfer_time = k.perf.transfer_time;
    c.latency_ok = !tc.required_latency || k.latency <= *tc.required_latency;
    if (tc.is_regression() && tc.expected_output) {
      c.first_diff = FirstDiff(*tc.expected_output, k.perf.output);
    } else if (reference != nullptr) {
      c.first_diff = FirstDiff(minilang::Interpret(*reference, tc.input).first, k.perf.output);
    }
    c.output_ok = !c.first_diff.has_value();
    if (!c.latency_ok || !c.output_ok) {
      report.pass = false;
      report.failing.push_back(tc.id);
    }
    report.cases.push_back(std::move(c));
  }
  report.cpu_units = state.resources.cpu_units;
  report.device_units = state.resources.device_units;
  report.resource_cost = state.resources.cost;
  report.placement_cost = state.placement.eval.cost;
  return report;
}

WorkloadTrace ParseTrace(std::string_view csv) {
  WorkloadTrace trace;
  std::istringstream in{std::string(csv)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (trace.empty() && line.rfind("time", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    auto bad = [&](const std::string& what) {
      return SchemaError("trace", "line " + std::to_string(line_no) + ": " + what);
    };
    if (cells.size() != 3) throw bad("expected time,kind,rate");
    TraceEvent e;
    try {
      size_t used = 0;
      e.time = std::stod(cells[0], &used);
      if (used != cells[0].size()) throw bad("bad time");
      e.rate = std::stod(cells[2], &used);
      if (used != cells[2].size()) throw bad("bad rate");
    } catch (const std::logic_error&) {
      throw bad("non-numeric field");
    }
    e.kind = cells[1];
    if (e.kind.empty()) throw bad("empty kind");
    if (e.rate < 0) throw bad("negative rate");
    if (!trace.empty() && e.time < trace.back().time) throw bad("time goes backwards");
    trace.push_back(std::move(e));
  }
  if (trace.empty() || trace.back().kind != "end") {
    throw SchemaError("trace", "last row must be <time>,end,0");
  }
  return trace;
}

WorkloadTrace LoadTrace(const std::filesystem::path& path) {
  return ParseTrace(minilang::ReadFile(path));
}

std::vector<Request> ExpandTrace(const WorkloadTrace& trace) {
  std::vector<Request> out;
  size_t i = 0;
  while (i < trace.size() && trace[i].kind != "end") {
    size_t j = i;
    while (j < trace.size() && trace[j].time == trace[i].time) ++j;
    if (j == trace.size()) break;
    const double t0 = trace[i].time;
    const double duration = trace[j].time - t0;
    std::vector<std::string> kinds;
    std::vector<int64_t> counts;
    Mix segment;
    double rate = 0;
    for (size_t k = i; k < j; ++k) {
      if (trace[k].kind == "end") continue;
      kinds.push_back(trace[k].kind);
      counts.push_back(std::llround(trace[k].rate * duration));
      segment[trace[k].kind] += trace[k].rate;
      rate += trace[k].rate;
    }
    int64_t total = 0;
    for (int64_t c : counts) total += c;
    std::vector<int64_t> current(kinds.size(), 0);
    for (int64_t n = 0; n < total; ++n) {
      size_t pick = 0;
      for (size_t k = 0; k < kinds.size(); ++k) {
        current[k] += counts[k];
        if (current[k] > current[pick]) pick = k;
      }
      current[pick] -= total;
      out.push_back({t0 + duration * static_cast<double>(n) / static_cast<double>(total),
                     kinds[pick], rate, segment});
    }
    i = j;
  }
  return out;
}

const char* ProposalKindName(ProposalKind kind) {
  switch (kind) {
    case ProposalKind::kResourceAmount: return "resource_amount";
    case ProposalKind::kPlacement: return "placement";
    case ProposalKind::kSoftLogic: return "soft_logic";
    case ProposalKind::kHardLogic: return "hard_logic";
  }
  return "?";
}

Policy ParsePolicy(const json& j) {
  using namespace internal;
  Policy p;
  if (j.is_null()) return p;
  p.window = static_cast<int>(Integer(j, "window", p.window, 1));
  p.period = Integer(j, "period", p.period, 0);
  p.latency_threshold = Number(j, "latency_threshold", p.latency_threshold, 0.0);
  p.min_gain = Number(j, "min_gain", p.min_gain, 0.0);
  p.auto_approve = Bool(j, "auto_approve", p.auto_approve);
  if (j.contains("penalties")) {
    const json& pen = j.at("penalties");
    if (!pen.is_object()) throw SchemaError("penalties", "must be an object");
    for (const auto& [key, value] : pen.items()) {
      if (key != "resource_amount" && key != "placement" && key != "soft_logic" &&
          key != "hard_logic") {
        throw SchemaError("penalties", "unknown proposal kind " + key);
      }
    }
    for (ProposalKind k : {ProposalKind::kResourceAmount, ProposalKind::kPlacement,
                           ProposalKind::kSoftLogic, ProposalKind::kHardLogic}) {
      p.penalties[k] = Number(pen, ProposalKindName(k), p.penalties[k], 0.0);
    }
  }
  return p;
}

namespace {

std::vector<gasearch::WeightedInput> MixInputs(const Environment& env, const Mix& mix) {
  std::vector<gasearch::WeightedInput> inputs;
  for (const auto& [kind, w] : mix) inputs.push_back({FindTestcase(env, kind).input, w});
  return inputs;
}

std::optional<SystemState> TryResources(const Environment& env, const SystemState& state,
                                        const Mix& mix, double rate) {
  resource::BaseTimes base = MixBaseTimes(env, state.annotated, state.pattern,
                                          state.active_kernels, mix);
  for (int k = 1; k * state.ratio.cpu_units <= env.scaling.max_cpu_units &&
                  k * state.ratio.device_units <= env.scaling.max_device_units;
       ++k) {
    SystemState next = state;
    next.resources = resource::PlanAt(state.ratio, k, env.scaling, base);
    if (next.resources.cost > env.budget) break;
    try {
      placement::AppModel app = AppFor(env, next.resources, next.resources.est_latency);
      next.placement.eval = placement::EvaluatePlacement(env.topology, app, next.placement.assign);
    } catch (const Error&) {
      continue;
    }
    if (next.resources.est_latency * OverloadFactor(env, next, mix, rate) <= env.perf_target) {
      if (k == state.resources.multiplier) return std::nullopt;
      return next;
    }
  }
  return std::nullopt;
}

std::optional<SystemState> TryPlacement(const Environment& env, const SystemState& state,
                                        const Mix& mix) {
  KindCache cache(env, state);
  double total = MixTotal(mix);
  double latency = 0;
  for (const auto& [kind, w] : mix) latency += w / total * cache.Get(kind).perf.latency;
  placement::AppModel app = AppFor(env, state.resources, latency);
  SystemState next = state;
  try {
    next.placement = placement::SolvePlacement(env.topology, app,
                                               placement::SolveMode::MinCost(env.placement_bound));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (next.placement.assign == state.placement.assign) return std::nullopt;
  return next;
}

std::optional<SystemState> TrySoftLogic(const Environment& env, const SystemState& state,
                                        const Mix& mix) {
  gasearch::CandidateSpace space = gasearch::MakeCandidateSpace(minilang::Analyze(env.program));
  if (space.bits() == 0) return std::nullopt;
  perfsim::SimulateOptions options = ActiveOptions(state.active_kernels);
  gasearch::SimulatedFitness sim(env.program, space, env.model, MixInputs(env, mix), options,
                                 env.ga.penalty);
  gasearch::MemoFitness fitness([&sim](const OffloadPattern& p) { return sim(p); });
  gasearch::SearchResult r = gasearch::RunGa(space, env.ga, fitness);
  if (r.best == state.pattern) return std::nullopt;
  SystemState next = state;
  next.pattern = r.best;
  next.annotated =
      transfer::InsertDirectives(env.program, transfer::ComputeDirectives(env.program, r.best));
  return next;
}

std::optional<SystemState> TryHardLogic(const Environment& env, const SystemState& state,
                                        const Mix& mix) {
  std::set<std::string> kernels = ChooseKernels(env, state.annotated, state.pattern, mix);
  if (kernels == state.active_kernels) return std::nullopt;
  SystemState next = state;
  next.active_kernels = std::move(kernels);
  return next;
}

}  // namespace

std::vector<ReconfigProposal> TrialCandidates(const Environment& env, const SystemState& state,
                                              const Mix& mix, double rate, const Policy& policy) {
  std::vector<ReconfigProposal> out;
  if (MixTotal(mix) <= 0) return out;
  const double current = ExpectedLatency(env, state, mix, rate);
  auto add = [&](ProposalKind kind, std::optional<SystemState> next) {
    if (!next) return;
    ReconfigProposal p;
    p.kind = kind;
    p.base_version = state.version;
    p.current_latency = current;
    p.expected_latency = ExpectedLatency(env, *next, mix, rate);
    p.expected_latency_gain = current > 0 ? (current - p.expected_latency) / current : 0;
    p.migration_penalty = policy.penalties.count(kind) ? policy.penalties.at(kind) : 0;
    p.net_gain = p.expected_latency_gain -
                 (current > 0 ? p.migration_penalty / (policy.window * current) : 0);
    p.expected_cost_delta = (next->resources.cost + next->placement.eval.cost) -
                            (state.resources.cost + state.placement.eval.cost);
    p.proposed = std::move(*next);
    out.push_back(std::move(p));
  };
  add(ProposalKind::kResourceAmount, TryResources(env, state, mix, rate));
  add(ProposalKind::kPlacement, TryPlacement(env, state, mix));
  add(ProposalKind::kSoftLogic, TrySoftLogic(env, state, mix));
  add(ProposalKind::kHardLogic, TryHardLogic(env, state, mix));
  return out;
}

std::optional<ReconfigProposal> TrialSimulate(const Environment& env, const SystemState& state,
                                              const Mix& mix, double rate, const Policy& policy) {
  std::optional<ReconfigProposal> best;
  for (ReconfigProposal& p : TrialCandidates(env, state, mix, rate, policy)) {
    if (p.net_gain <= policy.min_gain) continue;
    if (!best || p.net_gain > best->net_gain) best = std::move(p);
  }
  return best;
}

SystemState ApplyReconfig(const SystemState& state, const ReconfigProposal& proposal) {
  if (proposal.base_version != state.version) {
    throw Error(ErrorCode::kStaleProposal,
                "proposal was made against version " + std::to_string(proposal.base_version) +
                    ", system is at version " + std::to_string(state.version));
  }
  SystemState next = proposal.proposed;
  next.version = state.version + 1;
  return next;
}

namespace {

class Operator {
 public:
  Operator(const Environment& env, const SystemState& state, const Policy& policy,
           const Approver& approve)
      : env_(env), policy_(policy), approve_(approve), state_(state) {
    cache_ = std::make_unique<KindCache>(env_, state_);
  }

  OperateResult Run(const std::vector<Request>& requests) {
    for (const Request& r : requests) Step(r);
    OperateResult out;
    out.final_state = state_;
    out.log = std::move(log_);
    out.requests = static_cast<int64_t>(requests.size());
    out.proposals = proposals_;
    out.applied = applied_;
    return out;
  }

 private:
  struct Seen {
    std::string kind;
    double rate;
    double latency;
  };

  double Latency(KindCache& cache, const Request& r) {
    return cache.Get(r.kind).latency * Overload(cache, r.segment_mix, r.rate);
  }

  void Log(double time, const std::string& type, json data) {
    log_.push_back({static_cast<int64_t>(log_.size()), time, type, std::move(data)});
  }

  void Step(const Request& r) {
    ++served_;
    double latency = Latency(*cache_, r);
    if (pending_penalty_ > 0) {
      Log(r.time, "penalty", {{"seconds", pending_penalty_}, {"kind", r.kind}});
      latency += pending_penalty_;
      pending_penalty_ = 0;
    }
    window_.push_back({r.kind, r.rate, latency});
    if (static_cast<int>(window_.size()) > policy_.window) window_.pop_front();
    double mean = WindowMean();
    Log(r.time, "measure", {{"kind", r.kind}, {"latency", latency}, {"window_mean", mean}});
    if (realizing_) Realize(r, latency);

    std::string trigger;
    bool full = static_cast<int>(window_.size()) == policy_.window && since_apply_ >= policy_.window;
    ++since_apply_;
    if (full && mean > policy_.latency_threshold) {
      trigger = "threshold";
    } else if (policy_.period > 0 && served_ % policy_.period == 0) {
      trigger = "periodic";
    }
    if (trigger.empty() || window_.empty()) return;

    Mix mix;
    double rate = 0;
    for (const Seen& s : window_) {
      mix[s.kind] += 1;
      rate += s.rate;
    }
    rate /= static_cast<double>(window_.size());
    Log(r.time, "trigger", {{"reason", trigger}, {"window_mean", mean}, {"rate", rate}});
    std::optional<ReconfigProposal> p = TrialSimulate(env_, state_, mix, rate, policy_);
    if (!p) return;
    ++proposals_;
    Log(r.time, "proposal", json_io::ToJson(*p));
    bool yes = policy_.auto_approve || (approve_ && approve_(*p));
    Log(r.time, "decision", {{"approved", yes}});
    if (!yes) return;

    previous_ = std::make_unique<SystemState>(state_);
    previous_cache_ = std::make_unique<KindCache>(env_, *previous_);
    state_ = ApplyReconfig(state_, *p);
    cache_ = std::make_unique<KindCache>(env_, state_);
    ++applied_;
    Log(r.time, "apply", {{"kind", ProposalKindName(p->kind)}, {"version", state_.version}});
    pending_penalty_ = p->migration_penalty;
    realizing_ = true;
    predicted_gain_ = p->expected_latency_gain;
    predicted_net_ = p->net_gain;
    pre_mean_ = mean;
    realized_new_ = realized_old_ = 0;
    realized_n_ = 0;
    window_.clear();
    since_apply_ = 0;
  }

  void Realize(const Request& r, double latency) {
    realized_new_ += latency;
    realized_old_ += Latency(*previous_cache_, r);
    if (++realized_n_ < policy_.window) return;
    double post_mean = realized_new_ / realized_n_;
    Log(r.time, "realized",
        {{"requests", realized_n_},
         {"pre_window_mean", pre_mean_},
         {"post_window_mean", post_mean},
         {"counterfactual_mean", realized_old_ / realized_n_},
         {"predicted_gain", predicted_gain_},
         {"predicted_net_gain", predicted_net_},
         {"realized_net_gain", 1 - realized_new_ / realized_old_}});
    realizing_ = false;
  }

  double WindowMean() const {
    if (window_.empty()) return 0;
    double s = 0;
    for (const Seen& w : window_) s += w.latency;
    return s / static_cast<double>(window_.size());
  }

  const Environment& env_;
  const Policy& policy_;
  const Approver& approve_;
  SystemState state_;
  std::unique_ptr<KindCache> cache_;
  std::unique_ptr<SystemState> previous_;
  std::unique_ptr<KindCache> previous_cache_;
  std::deque<Seen> window_;
  std::vector<LogEvent> log_;
  int64_t served_ = 0;
  int64_t since_apply_ = 0;
  int64_t proposals_ = 0;
  int64_t applied_ = 0;
  double pending_penalty_ = 0;
  bool realizing_ = false;
  double predicted_gain_ = 0;
  double predicted_net_ = 0;
  double pre_mean_ = 0;
  double realized_new_ = 0;
  double realized_old_ = 0;
  int realized_n_ = 0;
};

}  // namespace

OperateResult Operate(const Environment& env, const SystemState& state, const WorkloadTrace& trace,
                      const Policy& policy, const Approver& approve) {
  Operator op(env, state, policy, approve);
  return op.Run(ExpandTrace(trace));
}

std::string FormatLog(const std::vector<LogEvent>& log) {
  std::string out;
  for (const LogEvent& e : log) {
    out += json_io::ToJson(e).dump();
    out += '\n';
  }
  return out;
}

}  // namespace envadapt::lifecycle

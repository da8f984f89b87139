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

#include "envadapt/json_io.h"

#include <cmath>
#include <limits>

#include "envadapt/error.h"
#include "json_util.h"

namespace envadapt::json_io {

using internal::Field;
using internal::Integer;
using internal::Number;
using internal::String;

namespace {

// JSON has no infinity; an unbounded throughput is written as null.
json Finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double NumberOrInf(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw SchemaError(key, "must be a number");
  return v.get<double>();
}

}  // namespace

json ToJson(const OffloadPattern& p) {
  return {{"bits", p.Key()}, {"loop_map", p.loop_map}};
}

OffloadPattern PatternFromJson(const json& j) {
  OffloadPattern p;
  const std::string bits = String(j, "bits");
  const json& map = Field(j, "loop_map");
  if (!map.is_array()) throw SchemaError("loop_map", "must be an array");
  for (const json& id : map) {
    if (!id.is_number_integer()) throw SchemaError("loop_map", "must hold loop ids");
    p.loop_map.push_back(id.get<minilang::LoopId>());
  }
  if (bits.size() != p.loop_map.size()) throw SchemaError("bits", "length differs from loop_map");
  for (char c : bits) {
    if (c != '0' && c != '1') throw SchemaError("bits", "must be a 0/1 string");
    p.bits.push_back(c == '1');
  }
  return p;
}

json ToJson(const std::vector<minilang::TransferDirective>& directives) {
  json out = json::array();
  for (const auto& d : directives) {
    out.push_back({{"kind", d.kind == minilang::TransferKind::kCopyIn ? "copyin" : "copyout"},
                   {"var", d.var},
                   {"anchor", d.anchor == minilang::kTopAnchor ? json("program") : json(d.anchor)}});
  }
  return out;
}

json ToJson(const resource::Ratio& r) {
  json j = {{"cpu_units", r.cpu_units}, {"device_units", r.device_units}, {"imbalance", r.imbalance}};
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

resource::Ratio RatioFromJson(const json& j) {
  resource::Ratio r;
  r.cpu_units = static_cast<int>(Integer(j, "cpu_units", {}, 1));
  r.device_units = static_cast<int>(Integer(j, "device_units", {}, 1));
  r.imbalance = Number(j, "imbalance", {}, 0.0);
  if (j.contains("warning")) r.warning = String(j, "warning");
  return r;
}

json ToJson(const resource::BaseTimes& b) {
  return {{"cpu_time", b.cpu_time}, {"device_time", b.device_time}, {"transfer_time", b.transfer_time}};
}

resource::BaseTimes BaseTimesFromJson(const json& j) {
  return {Number(j, "cpu_time", {}, 0.0), Number(j, "device_time", {}, 0.0),
          Number(j, "transfer_time", {}, 0.0)};
}

json ToJson(const resource::ResourcePlan& p) {
  return {{"cpu_units", p.cpu_units},         {"device_units", p.device_units},
          {"multiplier", p.multiplier},       {"ratio", p.ratio},
          {"est_cpu_time", p.est_cpu_time},   {"est_device_time", p.est_device_time},
          {"transfer_time", p.transfer_time}, {"est_latency", p.est_latency},
          {"cost", p.cost}};
}

resource::ResourcePlan ResourcePlanFromJson(const json& j) {
  resource::ResourcePlan p;
  p.cpu_units = static_cast<int>(Integer(j, "cpu_units", {}, 0));
  p.device_units = static_cast<int>(Integer(j, "device_units", {}, 0));
  p.multiplier = static_cast<int>(Integer(j, "multiplier", {}, 1));
  p.ratio = Number(j, "ratio", {}, 0.0);
  p.est_cpu_time = Number(j, "est_cpu_time", {}, 0.0);
  p.est_device_time = Number(j, "est_device_time", {}, 0.0);
  p.transfer_time = Number(j, "transfer_time", {}, 0.0);
  p.est_latency = Number(j, "est_latency", {}, 0.0);
  p.cost = Number(j, "cost", {}, 0.0);
  return p;
}

json ToJson(const placement::PlacementPlan& p) {
  return {{"assign", p.assign},
          {"latency", p.eval.latency},
          {"throughput", Finite(p.eval.throughput)},
          {"cost", p.eval.cost},
          {"compute_time", p.eval.compute_time},
          {"network_time", p.eval.network_time},
          {"objective_value", p.objective_value}};
}

placement::PlacementPlan PlacementPlanFromJson(const json& j) {
  placement::PlacementPlan p;
  const json& assign = Field(j, "assign");
  if (!assign.is_object()) throw SchemaError("assign", "must be an object");
  for (const auto& [comp, node] : assign.items()) {
    if (!node.is_string()) throw SchemaError("assign", "node ids must be strings");
    p.assign[comp] = node.get<std::string>();
  }
  p.eval.latency = Number(j, "latency", {}, 0.0);
  p.eval.throughput = NumberOrInf(j, "throughput");
  p.eval.cost = Number(j, "cost", {}, 0.0);
  p.eval.compute_time = Number(j, "compute_time", {}, 0.0);
  p.eval.network_time = Number(j, "network_time", {}, 0.0);
  p.objective_value = Number(j, "objective_value", {}, 0.0);
  return p;
}

json ToJson(const lifecycle::VerificationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    json jc = {{"id", c.id},
               {"latency", c.latency},
               {"throughput", c.throughput},
               {"cpu_time", c.cpu_time},
               {"device_time", c.device_time},
               {"transfer_time", c.transfer_time},
               {"latency_ok", c.latency_ok},
               {"output_ok", c.output_ok}};
    if (c.first_diff) jc["first_diff"] = *c.first_diff;
    cases.push_back(std::move(jc));
  }
  return {{"pass", r.pass},
          {"failing", r.failing},
          {"cases", cases},
          {"cpu_units", r.cpu_units},
          {"device_units", r.device_units},
          {"resource_cost", r.resource_cost},
          {"placement_cost", r.placement_cost}};
}

json ToJson(const lifecycle::ReconfigProposal& p) {
  using lifecycle::ProposalKind;
  const lifecycle::SystemState& s = p.proposed;
  json payload;
  switch (p.kind) {
    case ProposalKind::kResourceAmount:
      payload = {{"cpu_units", s.resources.cpu_units}, {"device_units", s.resources.device_units}};
      break;
    case ProposalKind::kPlacement:
      payload = {{"assign", s.placement.assign}};
      break;
    case ProposalKind::kSoftLogic:
      payload = {{"pattern", s.pattern.Key()}};
      break;
    case ProposalKind::kHardLogic:
      payload = {{"active_kernels", s.active_kernels}};
      break;
  }
  return {{"kind", lifecycle::ProposalKindName(p.kind)},
          {"base_version", p.base_version},
          {"payload", payload},
          {"current_latency", p.current_latency},
          {"expected_latency", p.expected_latency},
          {"expected_latency_gain", p.expected_latency_gain},
          {"net_gain", p.net_gain},
          {"expected_cost_delta", p.expected_cost_delta},
          {"migration_penalty", p.migration_penalty}};
}

json ToJson(const lifecycle::LogEvent& e) {
  return {{"seq", e.seq}, {"time", e.time}, {"type", e.type}, {"data", e.data}};
}

}  // namespace envadapt::json_io

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

#ifndef ENVADAPT_JSON_IO_H_
#define ENVADAPT_JSON_IO_H_

#include <nlohmann/json.hpp>

#include <vector>

#include "envadapt/lifecycle.h"
#include "envadapt/minilang/ast.h"
#include "envadapt/offload.h"
#include "envadapt/placement.h"
#include "envadapt/resource.h"

// JSON forms of the artifacts the pipeline passes between steps. Readers
// throw SchemaError on missing or mistyped fields.
namespace envadapt::json_io {

using nlohmann::json;

json ToJson(const OffloadPattern& p);
OffloadPattern PatternFromJson(const json& j);

json ToJson(const std::vector<minilang::TransferDirective>& directives);

json ToJson(const resource::Ratio& r);
resource::Ratio RatioFromJson(const json& j);

json ToJson(const resource::BaseTimes& b);
resource::BaseTimes BaseTimesFromJson(const json& j);

json ToJson(const resource::ResourcePlan& p);
resource::ResourcePlan ResourcePlanFromJson(const json& j);

json ToJson(const placement::PlacementPlan& p);
placement::PlacementPlan PlacementPlanFromJson(const json& j);

json ToJson(const lifecycle::VerificationReport& r);
json ToJson(const lifecycle::ReconfigProposal& p);
json ToJson(const lifecycle::LogEvent& e);

}  // namespace envadapt::json_io

#endif  // ENVADAPT_JSON_IO_H_

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

#include "envadapt/error.h"

namespace envadapt {

namespace {

std::string At(SourcePosition pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kUndeclaredVariable: return "UndeclaredVariable";
    case ErrorCode::kUnknownLoopId: return "UnknownLoopId";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kDivergentLoop: return "DivergentLoop";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kInputBinding: return "InputBinding";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kDuplicateKernel: return "DuplicateKernel";
    case ErrorCode::kRegionStale: return "RegionStale";
    case ErrorCode::kUnhousedKernel: return "UnhousedKernel";
    case ErrorCode::kPatternShapeMismatch: return "PatternShapeMismatch";
    case ErrorCode::kUnknownAnchor: return "UnknownAnchor";
    case ErrorCode::kEmptySpace: return "EmptySpace";
    case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::kNonPositiveTime: return "NonPositiveTime";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::kStaleProposal: return "StaleProposal";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

SyntaxError::SyntaxError(SourcePosition pos, const std::string& expected,
                         const std::string& found)
    : Error(ErrorCode::kSyntax,
            At(pos) + ": syntax error: expected " + expected + ", found " + found),
      pos_(pos),
      expected_(expected) {}

UndeclaredVariable::UndeclaredVariable(const std::string& name, SourcePosition pos)
    : Error(ErrorCode::kUndeclaredVariable,
            At(pos) + ": undeclared variable '" + name + "'"),
      name_(name),
      pos_(pos) {}

OutOfBounds::OutOfBounds(const std::string& array, long long index,
                         SourcePosition pos)
    : Error(ErrorCode::kOutOfBounds, At(pos) + ": index " + std::to_string(index) +
                                         " out of bounds for '" + array + "'"),
      array_(array),
      index_(index),
      pos_(pos) {}

DivergentLoop::DivergentLoop(int loop_id)
    : Error(ErrorCode::kDivergentLoop,
            "loop " + std::to_string(loop_id) + " exceeded its step budget"),
      loop_id_(loop_id) {}

SchemaError::SchemaError(const std::string& field, const std::string& problem)
    : Error(ErrorCode::kSchema, field + ": " + problem), field_(field) {}

const char* InfeasibleReasonName(InfeasibleReason reason) {
  switch (reason) {
    case InfeasibleReason::kLatencyUnreachable: return "latency_unreachable";
    case InfeasibleReason::kBudgetExceeded: return "budget_exceeded";
    case InfeasibleReason::kNoFeasibleAssignment: return "no_feasible_assignment";
  }
  return "unknown";
}

Infeasible::Infeasible(InfeasibleReason reason, const std::string& detail)
    : Error(ErrorCode::kInfeasible,
            std::string("infeasible (") + InfeasibleReasonName(reason) + "): " + detail),
      reason_(reason) {}

}  // namespace envadapt

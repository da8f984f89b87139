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

#ifndef ENVADAPT_ERROR_H_
#define ENVADAPT_ERROR_H_

#include <stdexcept>
#include <string>

namespace envadapt {

// Every failure surfaced by the library derives from Error and carries a
// stable code so callers (and the CLI exit-code mapping) can dispatch on it
// without string matching.
enum class ErrorCode {
  kSyntax,
  kUndeclaredVariable,
  kUnknownLoopId,
  kOutOfBounds,
  kDivergentLoop,
  kDivisionByZero,
  kInputBinding,
  kSchema,
  kDuplicateKernel,
  kRegionStale,
  kUnhousedKernel,
  kPatternShapeMismatch,
  kUnknownAnchor,
  kEmptySpace,
  kSpaceTooLarge,
  kNonPositiveTime,
  kInfeasible,
  kCapacityExceeded,
  kDisconnected,
  kSearchSpaceTooLarge,
  kStaleProposal,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct SourcePosition {
  int line = 0;
  int column = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourcePosition pos, const std::string& expected,
              const std::string& found);

  SourcePosition position() const { return pos_; }
  const std::string& expected() const { return expected_; }

 private:
  SourcePosition pos_;
  std::string expected_;
};

class UndeclaredVariable : public Error {
 public:
  UndeclaredVariable(const std::string& name, SourcePosition pos);

  const std::string& name() const { return name_; }
  SourcePosition position() const { return pos_; }

 private:
  std::string name_;
  SourcePosition pos_;
};

class OutOfBounds : public Error {
 public:
  OutOfBounds(const std::string& array, long long index, SourcePosition pos);

  const std::string& array() const { return array_; }
  long long index() const { return index_; }
  SourcePosition position() const { return pos_; }

 private:
  std::string array_;
  long long index_;
  SourcePosition pos_;
};

class DivergentLoop : public Error {
 public:
  explicit DivergentLoop(int loop_id);

  int loop_id() const { return loop_id_; }

 private:
  int loop_id_;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& field, const std::string& problem);

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Why a resource or placement problem has no solution. The pipeline uses the
// reason to decide whether the placement->sizing retry applies.
enum class InfeasibleReason {
  kLatencyUnreachable,
  kBudgetExceeded,
  kNoFeasibleAssignment,
};

const char* InfeasibleReasonName(InfeasibleReason reason);

class Infeasible : public Error {
 public:
  Infeasible(InfeasibleReason reason, const std::string& detail);

  InfeasibleReason reason() const { return reason_; }

 private:
  InfeasibleReason reason_;
};

}  // namespace envadapt

#endif  // ENVADAPT_ERROR_H_

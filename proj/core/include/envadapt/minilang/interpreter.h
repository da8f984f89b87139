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

#ifndef ENVADAPT_MINILANG_INTERPRETER_H_
#define ENVADAPT_MINILANG_INTERPRETER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "envadapt/minilang/ast.h"

namespace envadapt::minilang {

// Values for declared variables, keyed by name. Variables not bound here
// take their declared initializer, or zero.
struct InputBinding {
  std::map<std::string, std::variant<double, std::vector<double>>> values;
};

struct OutputValue {
  double value = 0;
  bool is_int = false;
  bool operator==(const OutputValue&) const = default;
};
using OutputTrace = std::vector<OutputValue>;

struct ProfileReport {
  std::map<LoopId, int64_t> iterations;
  std::map<LoopId, int64_t> ops;
  bool operator==(const ProfileReport&) const = default;
};

inline constexpr int64_t kDefaultStepBudget = 100'000'000;

struct InterpretOptions {
  // Maximum iterations of any single loop execution before DivergentLoop.
  int64_t step_budget = kDefaultStepBudget;
  // Loops whose iterations run last-to-first.
  std::set<LoopId> reversed;
};

using Memory = std::vector<std::vector<double>>;

// Initial memory image for `ast` under `input`: one vector per declaration.
// Throws Error(kInputBinding) for unknown names, scalar/array mismatches and
// wrong array lengths.
Memory InitialMemory(const Ast& ast, const InputBinding& input);

// Tree-walking executor. Subclasses observe execution through the hooks;
// every variable access goes through Read/Write.
//
// Operation accounting: each arithmetic or comparison operator, unary minus,
// array element read, store and output costs one op. Scalar reads and
// literals are free. For-loop headers (init, bound, step) are free; while
// and if conditions are charged. A block call is charged what the block
// reports.
class Machine {
 public:
  Machine(const Ast& ast, Memory memory, int64_t step_budget = kDefaultStepBudget);
  virtual ~Machine() = default;
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  void Run();

  const OutputTrace& output() const { return output_; }
  const Memory& memory() const { return memory_; }
  int64_t ops() const { return ops_; }

 protected:
  virtual double Read(VarId v, int64_t index) { return memory_[v][index]; }
  virtual void Write(VarId v, int64_t index, double value) { memory_[v][index] = value; }
  virtual bool Reversed(const Stmt& /*loop*/) { return false; }
  virtual void OnLoopEnter(const Stmt& /*loop*/) {}
  virtual void OnLoopExit(const Stmt& /*loop*/) {}
  virtual void OnIterBegin(const Stmt& /*loop*/) {}
  virtual void OnIterEnd(const Stmt& /*loop*/) {}
  virtual void OnAccelEnter(const Stmt& /*accel*/) {}
  virtual void OnAccelExit(const Stmt& /*accel*/) {}
  virtual void OnCall(const Stmt& /*call*/, int64_t /*ops*/) {}

  const Ast& ast_;
  Memory memory_;
  OutputTrace output_;
  int64_t ops_ = 0;

 private:
  void ExecBlock(const std::vector<Stmt>& stmts);
  void Exec(const Stmt& s);
  void ExecFor(const Stmt& s);
  void ExecWhile(const Stmt& s);
  void ExecCall(const Stmt& s);
  double Eval(const Expr& e);
  double EvalFree(const Expr& e);
  int64_t Index(const Expr& e, VarId array);
  void Store(VarId v, int64_t index, double value);
  void Tick(const Stmt& loop, int64_t& trips);

  int64_t step_budget_;
};

// Runs the program, returning its output trace and per-loop profile. Every
// loop of the Ast appears in the profile (zero when never reached).
std::pair<OutputTrace, ProfileReport> Interpret(const Ast& ast, const InputBinding& input,
                                                const InterpretOptions& options = {});

// Final memory after running the program; used by order-independence checks.
Memory RunToMemory(const Ast& ast, const InputBinding& input,
                   const InterpretOptions& options = {});

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_INTERPRETER_H_

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

#include "envadapt/minilang/interpreter.h"

#include <cmath>
#include <limits>

#include "envadapt/minilang/library.h"

namespace envadapt::minilang {

namespace {

double TruncateInt(double v) {
  if (!std::isfinite(v)) return 0;
  return std::trunc(v);
}

int64_t ToInt(double v) {
  constexpr double kLimit = 9.2e18;
  if (!std::isfinite(v) || v > kLimit || v < -kLimit) return 0;
  return static_cast<int64_t>(v);
}

int64_t WrapMul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

std::string Where(SourcePosition pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

}  // namespace

Memory InitialMemory(const Ast& ast, const InputBinding& input) {
  Memory mem;
  mem.reserve(ast.decls.size());
  for (const VarDecl& d : ast.decls) {
    double init = d.init.value_or(0.0);
    if (d.kind == ValueKind::kInt) init = TruncateInt(init);
    mem.emplace_back(static_cast<size_t>(d.element_count()), init);
  }
  for (const auto& [name, value] : input.values) {
    auto id = ast.Lookup(name);
    if (!id) throw Error(ErrorCode::kInputBinding, "input binds undeclared variable " + name);
    const VarDecl& d = ast.decls[*id];
    std::vector<double>& slot = mem[*id];
    if (const auto* scalar = std::get_if<double>(&value)) {
      if (d.is_array()) {
        throw Error(ErrorCode::kInputBinding, "array " + name + " bound to a scalar");
      }
      slot[0] = *scalar;
    } else {
      const auto& values = std::get<std::vector<double>>(value);
      if (!d.is_array()) {
        throw Error(ErrorCode::kInputBinding, "scalar " + name + " bound to a list");
      }
      if (static_cast<int64_t>(values.size()) != *d.length) {
        throw Error(ErrorCode::kInputBinding,
                    "array " + name + " has length " + std::to_string(*d.length) +
                        " but input has " + std::to_string(values.size()) + " values");
      }
      slot = values;
    }
    if (d.kind == ValueKind::kInt) {
      for (double& x : slot) x = TruncateInt(x);
    }
  }
  return mem;
}

Machine::Machine(const Ast& ast, Memory memory, int64_t step_budget)
    : ast_(ast), memory_(std::move(memory)), step_budget_(step_budget) {}

void Machine::Run() { ExecBlock(ast_.stmts); }

void Machine::ExecBlock(const std::vector<Stmt>& stmts) {
  for (const Stmt& s : stmts) Exec(s);
}

void Machine::Store(VarId v, int64_t index, double value) {
  if (ast_.decls[v].kind == ValueKind::kInt) value = TruncateInt(value);
  Write(v, index, value);
}

int64_t Machine::Index(const Expr& e, VarId array) {
  int64_t idx = ToInt(TruncateInt(Eval(e)));
  if (idx < 0 || idx >= *ast_.decls[array].length) {
    throw OutOfBounds(ast_.decls[array].name, idx, e.pos);
  }
  return idx;
}

double Machine::EvalFree(const Expr& e) {
  int64_t saved = ops_;
  double v = Eval(e);
  ops_ = saved;
  return v;
}

double Machine::Eval(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNumber:
      return e.number;
    case Expr::Kind::kVar:
      return Read(e.var, 0);
    case Expr::Kind::kIndex: {
      int64_t idx = Index(e.args[0], e.var);
      ++ops_;
      return Read(e.var, idx);
    }
    case Expr::Kind::kNeg: {
      double v = Eval(e.args[0]);
      ++ops_;
      return -v;
    }
    case Expr::Kind::kBinary:
      break;
  }
  double l = Eval(e.args[0]);
  double r = Eval(e.args[1]);
  ++ops_;
  switch (e.op) {
    case BinaryOp::kLt: return l < r;
    case BinaryOp::kLe: return l <= r;
    case BinaryOp::kGt: return l > r;
    case BinaryOp::kGe: return l >= r;
    case BinaryOp::kEq: return l == r;
    case BinaryOp::kNe: return l != r;
    default: break;
  }
  if (!e.is_int) {
    switch (e.op) {
      case BinaryOp::kAdd: return l + r;
      case BinaryOp::kSub: return l - r;
      case BinaryOp::kMul: return l * r;
      case BinaryOp::kDiv: return l / r;
      default: break;
    }
  }
  int64_t a = ToInt(l);
  int64_t b = ToInt(r);
  switch (e.op) {
    case BinaryOp::kAdd:
      return static_cast<double>(static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b)));
    case BinaryOp::kSub:
      return static_cast<double>(static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b)));
    case BinaryOp::kMul:
      return static_cast<double>(WrapMul(a, b));
    case BinaryOp::kDiv:
    case BinaryOp::kMod:
      if (b == 0) {
        throw Error(ErrorCode::kDivisionByZero, Where(e.pos) + ": integer division by zero");
      }
      if (a == std::numeric_limits<int64_t>::min() && b == -1) {
        return e.op == BinaryOp::kDiv ? static_cast<double>(a) : 0.0;
      }
      return static_cast<double>(e.op == BinaryOp::kDiv ? a / b : a % b);
    default:
      return 0;
  }
}

void Machine::Tick(const Stmt& loop, int64_t& trips) {
  if (++trips > step_budget_) throw DivergentLoop(loop.loop_id);
}

void Machine::Exec(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::kAssign: {
      if (s.exprs.size() == 2) {
        int64_t idx = Index(s.exprs[0], s.var);
        double v = Eval(s.exprs[1]);
        ++ops_;
        Store(s.var, idx, v);
      } else {
        double v = Eval(s.exprs[0]);
        ++ops_;
        Store(s.var, 0, v);
      }
      return;
    }
    case Stmt::Kind::kFor:
      ExecFor(s);
      return;
    case Stmt::Kind::kWhile:
      ExecWhile(s);
      return;
    case Stmt::Kind::kIf:
      if (Eval(s.exprs[0]) != 0) {
        ExecBlock(s.body);
      } else {
        ExecBlock(s.else_body);
      }
      return;
    case Stmt::Kind::kCall:
      ExecCall(s);
      return;
    case Stmt::Kind::kOutput: {
      double v = Eval(s.exprs[0]);
      ++ops_;
      output_.push_back({v, s.exprs[0].is_int});
      return;
    }
    case Stmt::Kind::kAccel:
      OnAccelEnter(s);
      ExecBlock(s.body);
      OnAccelExit(s);
      return;
  }
}

void Machine::ExecFor(const Stmt& s) {
  OnLoopEnter(s);
  Store(s.var, 0, EvalFree(s.exprs[0]));
  int64_t trips = 0;
  if (!Reversed(s)) {
    while (Read(s.var, 0) < EvalFree(s.exprs[1])) {
      Tick(s, trips);
      OnIterBegin(s);
      ExecBlock(s.body);
      OnIterEnd(s);
      Store(s.var, 0, Read(s.var, 0) + EvalFree(s.exprs[2]));
    }
  } else {
    // Only loops with a fixed bound and step are reversed; the sequence of
    // loop-variable values is materialized first.
    double bound = EvalFree(s.exprs[1]);
    double step = EvalFree(s.exprs[2]);
    std::vector<double> values;
    double v = Read(s.var, 0);
    while (v < bound) {
      Tick(s, trips);
      values.push_back(v);
      Store(s.var, 0, v + step);
      v = Read(s.var, 0);
    }
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
      Store(s.var, 0, *it);
      OnIterBegin(s);
      ExecBlock(s.body);
      OnIterEnd(s);
    }
    Store(s.var, 0, v);
  }
  OnLoopExit(s);
}

void Machine::ExecWhile(const Stmt& s) {
  OnLoopEnter(s);
  int64_t trips = 0;
  while (Eval(s.exprs[0]) != 0) {
    Tick(s, trips);
    OnIterBegin(s);
    ExecBlock(s.body);
    OnIterEnd(s);
  }
  OnLoopExit(s);
}

void Machine::ExecCall(const Stmt& s) {
  const BlockSignature* sig = FindBlock(s.name);
  std::vector<std::vector<double>> arrays;
  BlockArgs args;
  for (size_t k = 0; k < s.exprs.size(); ++k) {
    const Expr& e = s.exprs[k];
    if (sig->params[k] == ParamKind::kScalar) {
      args.scalars.push_back(Eval(e));
      continue;
    }
    const int64_t n = *ast_.decls[e.var].length;
    std::vector<double> copy(static_cast<size_t>(n));
    if (sig->params[k] != ParamKind::kArrayOut) {
      for (int64_t i = 0; i < n; ++i) copy[i] = Read(e.var, i);
    } else {
      copy = memory_[e.var];
    }
    arrays.push_back(std::move(copy));
  }
  for (auto& a : arrays) args.arrays.emplace_back(a);
  int64_t ops = RunBlock(s.name, args);
  ops_ += ops;
  size_t a = 0;
  for (size_t k = 0; k < s.exprs.size(); ++k) {
    ParamKind p = sig->params[k];
    if (p == ParamKind::kScalar) continue;
    if (p != ParamKind::kArrayIn) {
      VarId v = s.exprs[k].var;
      for (size_t i = 0; i < arrays[a].size(); ++i) Store(v, static_cast<int64_t>(i), arrays[a][i]);
    }
    ++a;
  }
  OnCall(s, ops);
}

namespace {

class Profiler : public Machine {
 public:
  Profiler(const Ast& ast, Memory mem, const InterpretOptions& options)
      : Machine(ast, std::move(mem), options.step_budget),
        reversed_(options.reversed),
        iterations_(ast.loop_count, 0),
        loop_ops_(ast.loop_count, 0),
        entered_at_(ast.loop_count, 0) {}

  ProfileReport Report() const {
    ProfileReport r;
    for (LoopId id = 0; id < ast_.loop_count; ++id) {
      r.iterations[id] = iterations_[id];
      r.ops[id] = loop_ops_[id];
    }
    return r;
  }

 protected:
  bool Reversed(const Stmt& loop) override {
    return loop.loop_id >= 0 && reversed_.count(loop.loop_id) > 0;
  }
  void OnLoopEnter(const Stmt& loop) override {
    if (loop.loop_id >= 0) entered_at_[loop.loop_id] = ops_;
  }
  void OnLoopExit(const Stmt& loop) override {
    if (loop.loop_id >= 0) loop_ops_[loop.loop_id] += ops_ - entered_at_[loop.loop_id];
  }
  void OnIterBegin(const Stmt& loop) override {
    if (loop.loop_id >= 0) ++iterations_[loop.loop_id];
  }

 private:
  const std::set<LoopId>& reversed_;
  std::vector<int64_t> iterations_;
  std::vector<int64_t> loop_ops_;
  std::vector<int64_t> entered_at_;
};

}  // namespace

std::pair<OutputTrace, ProfileReport> Interpret(const Ast& ast, const InputBinding& input,
                                                const InterpretOptions& options) {
  Profiler p(ast, InitialMemory(ast, input), options);
  p.Run();
  return {p.output(), p.Report()};
}

Memory RunToMemory(const Ast& ast, const InputBinding& input, const InterpretOptions& options) {
  Profiler p(ast, InitialMemory(ast, input), options);
  p.Run();
  return p.memory();
}

}  // namespace envadapt::minilang

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

#ifndef ENVADAPT_MINILANG_AST_H_
#define ENVADAPT_MINILANG_AST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envadapt/error.h"

namespace envadapt::minilang {

using LoopId = int;
using VarId = int;

// Directive anchor meaning "the whole program" rather than a loop.
inline constexpr LoopId kTopAnchor = -1;

enum class ValueKind { kInt, kFloat };

struct VarDecl {
  std::string name;
  ValueKind kind = ValueKind::kInt;
  std::optional<int64_t> length;  // nullopt for scalars
  std::optional<double> init;     // scalars only
  bool implicit = false;          // loop variable introduced by a for header
  SourcePosition pos;

  bool is_array() const { return length.has_value(); }
  int64_t element_count() const { return length.value_or(1); }
  bool operator==(const VarDecl& o) const {
    return name == o.name && kind == o.kind && length == o.length &&
           init == o.init && implicit == o.implicit;
  }
};

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kMod, kLt, kLe, kGt, kGe, kEq, kNe };

const char* BinaryOpText(BinaryOp op);

struct Expr {
  enum class Kind { kNumber, kVar, kIndex, kNeg, kBinary };

  Kind kind = Kind::kNumber;
  BinaryOp op = BinaryOp::kAdd;
  double number = 0;
  VarId var = -1;
  bool is_int = true;       // static type of the expression
  std::vector<Expr> args;   // kIndex: {index}; kNeg: {operand}; kBinary: {lhs, rhs}
  SourcePosition pos;

  bool operator==(const Expr& o) const {
    return kind == o.kind && op == o.op && number == o.number && var == o.var &&
           is_int == o.is_int && args == o.args;
  }
};

enum class TransferKind { kCopyIn, kCopyOut };

// Data-region directive attached to a loop (or to the program when anchor is
// kTopAnchor): copy-ins run on entry, copy-outs on exit.
struct TransferDirective {
  TransferKind kind = TransferKind::kCopyIn;
  std::string var;
  LoopId anchor = kTopAnchor;

  auto operator<=>(const TransferDirective&) const = default;
};

struct Stmt {
  enum class Kind { kAssign, kFor, kWhile, kIf, kCall, kOutput, kAccel };

  Kind kind = Kind::kAssign;
  // kAssign: target variable; kFor: loop variable.
  VarId var = -1;
  // kAssign: {value} or {index, value}; kFor: {init, bound, step};
  // kWhile/kIf: {cond}; kCall: args; kOutput: {value}.
  std::vector<Expr> exprs;
  // kCall: block name; kAccel: kernel id.
  std::string name;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  bool has_else = false;
  // kAccel: element count the kernel cost formula is evaluated at.
  int64_t size = 0;
  LoopId loop_id = -1;
  std::vector<TransferDirective> directives;
  SourcePosition pos;

  bool is_loop() const { return kind == Kind::kFor || kind == Kind::kWhile; }
  bool operator==(const Stmt& o) const {
    return kind == o.kind && var == o.var && exprs == o.exprs && name == o.name &&
           body == o.body && else_body == o.else_body &&
           has_else == o.has_else && size == o.size && loop_id == o.loop_id &&
           directives == o.directives;
  }
};

struct Ast {
  std::vector<VarDecl> decls;
  std::vector<Stmt> stmts;
  std::vector<TransferDirective> program_directives;
  int loop_count = 0;

  std::optional<VarId> Lookup(const std::string& name) const;
  bool operator==(const Ast& o) const {
    return decls == o.decls && stmts == o.stmts &&
           program_directives == o.program_directives &&
           loop_count == o.loop_count;
  }
};

// Reassigns dense preorder loop ids; returns the loop count.
int NumberLoops(Ast& ast);

// Preorder visitation of every statement with its loop-ancestor chain
// (innermost last). Accelerator calls are opaque: their retained bodies are
// not visited and carry no loop ids.
template <typename Fn>
void WalkStmts(const std::vector<Stmt>& stmts, std::vector<const Stmt*>& loops,
               Fn&& fn) {
  for (const Stmt& s : stmts) {
    fn(s, loops);
    if (s.kind == Stmt::Kind::kAccel) continue;
    if (s.is_loop()) loops.push_back(&s);
    WalkStmts(s.body, loops, fn);
    WalkStmts(s.else_body, loops, fn);
    if (s.is_loop()) loops.pop_back();
  }
}

template <typename Fn>
void WalkStmts(const Ast& ast, Fn&& fn) {
  std::vector<const Stmt*> loops;
  WalkStmts(ast.stmts, loops, fn);
}

// Loop statements indexed by id. Pointers are into the Ast passed in and are
// invalidated when it is modified.
std::vector<const Stmt*> IndexLoops(const Ast& ast);

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_AST_H_

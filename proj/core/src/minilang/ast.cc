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

#include "envadapt/minilang/ast.h"

namespace envadapt::minilang {

namespace {

void ClearLoopIds(std::vector<Stmt>& stmts) {
  for (Stmt& s : stmts) {
    s.loop_id = -1;
    s.directives.clear();
    ClearLoopIds(s.body);
    ClearLoopIds(s.else_body);
  }
}

void Number(std::vector<Stmt>& stmts, int& next) {
  for (Stmt& s : stmts) {
    if (s.kind == Stmt::Kind::kAccel) {
      s.loop_id = -1;
      ClearLoopIds(s.body);
      continue;
    }
    if (s.is_loop()) {
      s.loop_id = next++;
      for (TransferDirective& d : s.directives) d.anchor = s.loop_id;
    } else {
      s.loop_id = -1;
    }
    Number(s.body, next);
    Number(s.else_body, next);
  }
}

}  // namespace

const char* BinaryOpText(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
  }
  return "?";
}

std::optional<VarId> Ast::Lookup(const std::string& name) const {
  for (size_t i = 0; i < decls.size(); ++i) {
    if (decls[i].name == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

int NumberLoops(Ast& ast) {
  int next = 0;
  Number(ast.stmts, next);
  ast.loop_count = next;
  return next;
}

std::vector<const Stmt*> IndexLoops(const Ast& ast) {
  std::vector<const Stmt*> out(ast.loop_count, nullptr);
  WalkStmts(ast, [&](const Stmt& s, const std::vector<const Stmt*>&) {
    if (s.is_loop() && s.loop_id >= 0 && s.loop_id < ast.loop_count) {
      out[s.loop_id] = &s;
    }
  });
  return out;
}

}  // namespace envadapt::minilang

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

#ifndef ENVADAPT_MINILANG_ANALYSIS_H_
#define ENVADAPT_MINILANG_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "envadapt/minilang/ast.h"

namespace envadapt::minilang {

struct LoopInfo {
  LoopId id = 0;
  int depth = 0;
  std::optional<LoopId> parent;
  bool is_for = true;
  std::set<std::string> defs;
  std::set<std::string> uses;
  bool parallelizable = false;
  std::string reason;  // empty iff parallelizable
  std::optional<int64_t> static_trip;
};

// Variables written and read by a statement list. Path-insensitive: both
// branches of every `if` contribute. A for header writes its loop variable
// and reads it (compare and step) along with the header expressions.
struct DefUse {
  std::set<VarId> defs;
  std::set<VarId> uses;
};
DefUse CollectDefUse(const std::vector<Stmt>& stmts);
void CollectExprUses(const Expr& e, std::set<VarId>& uses);
// Def/use of `s` alone, without nested statements. Accelerator calls include
// their whole reference body since it is opaque to statement walks.
DefUse DirectDefUse(const Stmt& s);

// One record per loop, in preorder (index == LoopId).
std::vector<LoopInfo> Analyze(const Ast& ast);

// Conservative parallelizability test for loop `id`:
//  - for loops only, with a positive integer literal step and an int
//    loop variable;
//  - body has no while loop, output statement or functional-block call;
//  - no scalar is written in the body (loop variables of nested for loops
//    are private and exempt);
//  - every array written is indexed as `v + c` with one offset c, and every
//    read of that array uses the same offset;
//  - the loop bound does not read anything the body writes.
// Throws Error(kUnknownLoopId) for an id not in the Ast.
std::pair<bool, std::string> CheckParallelizable(const Ast& ast, LoopId id);

// If `index` is `v`, `v + c`, `c + v` or `v - c` for integer literal c,
// returns c.
std::optional<int64_t> LoopOffset(const Expr& index, VarId loop_var);

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_ANALYSIS_H_

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

#include "envadapt/minilang/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "envadapt/minilang/library.h"
#include "envadapt/minilang/printer.h"

namespace envadapt::minilang {

namespace {

void DefUseInto(const std::vector<Stmt>& stmts, DefUse& du);

void DefUseStmt(const Stmt& s, DefUse& du) {
  switch (s.kind) {
    case Stmt::Kind::kAssign:
      du.defs.insert(s.var);
      for (const Expr& e : s.exprs) CollectExprUses(e, du.uses);
      break;
    case Stmt::Kind::kFor:
      du.defs.insert(s.var);
      du.uses.insert(s.var);
      for (const Expr& e : s.exprs) CollectExprUses(e, du.uses);
      break;
    case Stmt::Kind::kWhile:
    case Stmt::Kind::kIf:
    case Stmt::Kind::kOutput:
      for (const Expr& e : s.exprs) CollectExprUses(e, du.uses);
      break;
    case Stmt::Kind::kCall: {
      const BlockSignature* sig = FindBlock(s.name);
      for (size_t k = 0; k < s.exprs.size(); ++k) {
        ParamKind p = sig ? sig->params[k] : ParamKind::kArrayInOut;
        const Expr& e = s.exprs[k];
        switch (p) {
          case ParamKind::kScalar: CollectExprUses(e, du.uses); break;
          case ParamKind::kArrayIn: du.uses.insert(e.var); break;
          case ParamKind::kArrayOut: du.defs.insert(e.var); break;
          case ParamKind::kArrayInOut:
            du.uses.insert(e.var);
            du.defs.insert(e.var);
            break;
        }
      }
      break;
    }
    case Stmt::Kind::kAccel:
      break;
  }
  DefUseInto(s.body, du);
  DefUseInto(s.else_body, du);
}

void DefUseInto(const std::vector<Stmt>& stmts, DefUse& du) {
  for (const Stmt& s : stmts) DefUseStmt(s, du);
}

std::set<std::string> Names(const Ast& ast, const std::set<VarId>& ids) {
  std::set<std::string> out;
  for (VarId v : ids) out.insert(ast.decls[v].name);
  return out;
}

struct ArrayAccess {
  const Expr* index;
};

// Everything the parallelizability rules need, gathered in one body walk.
struct BodyFacts {
  bool has_while = false;
  bool has_output = false;
  bool has_call = false;
  std::set<VarId> private_vars;              // nested for loop variables
  std::vector<VarId> scalar_writes;          // source order
  std::set<VarId> scalar_reads;
  std::map<VarId, std::vector<const Expr*>> array_writes;
  std::map<VarId, std::vector<const Expr*>> array_reads;
  std::set<VarId> all_writes;
};

// An index `v + rest + c` where `rest` is a sum of terms the loop never
// writes. Two such indices name the same element iff both parts match.
struct AffineIndex {
  std::vector<std::string> rest;  // sorted signed terms
  int64_t offset = 0;
  bool operator==(const AffineIndex&) const = default;
};

bool Reads(const Expr& e, const std::set<VarId>& vars) {
  if ((e.kind == Expr::Kind::kVar || e.kind == Expr::Kind::kIndex) && vars.count(e.var)) {
    return true;
  }
  for (const Expr& a : e.args) {
    if (Reads(a, vars)) return true;
  }
  return false;
}

bool AffineTerms(const Ast& ast, const Expr& e, bool negate, VarId loop_var,
                 const std::set<VarId>& variant, int& var_count, AffineIndex& out) {
  if (e.kind == Expr::Kind::kBinary && (e.op == BinaryOp::kAdd || e.op == BinaryOp::kSub)) {
    return AffineTerms(ast, e.args[0], negate, loop_var, variant, var_count, out) &&
           AffineTerms(ast, e.args[1], e.op == BinaryOp::kSub ? !negate : negate, loop_var,
                       variant, var_count, out);
  }
  if (e.kind == Expr::Kind::kVar && e.var == loop_var) {
    ++var_count;
    return !negate;
  }
  if (e.kind == Expr::Kind::kNumber && e.is_int) {
    out.offset += negate ? -static_cast<int64_t>(e.number) : static_cast<int64_t>(e.number);
    return true;
  }
  std::set<VarId> banned = variant;
  banned.insert(loop_var);
  if (!e.is_int || Reads(e, banned)) return false;
  out.rest.push_back((negate ? "-" : "+") + PrintExpr(ast, e));
  return true;
}

std::optional<AffineIndex> Affine(const Ast& ast, const Expr& index, VarId loop_var,
                                  const std::set<VarId>& variant) {
  AffineIndex out;
  int var_count = 0;
  if (!AffineTerms(ast, index, false, loop_var, variant, var_count, out) || var_count != 1) {
    return std::nullopt;
  }
  std::sort(out.rest.begin(), out.rest.end());
  return out;
}

void ExprReads(const Expr& e, BodyFacts& f) {
  switch (e.kind) {
    case Expr::Kind::kNumber: break;
    case Expr::Kind::kVar: f.scalar_reads.insert(e.var); break;
    case Expr::Kind::kIndex:
      f.array_reads[e.var].push_back(&e.args[0]);
      ExprReads(e.args[0], f);
      break;
    default:
      for (const Expr& a : e.args) ExprReads(a, f);
  }
}

void Gather(const std::vector<Stmt>& stmts, BodyFacts& f) {
  for (const Stmt& s : stmts) {
    switch (s.kind) {
      case Stmt::Kind::kAssign:
        f.all_writes.insert(s.var);
        if (s.exprs.size() == 2) {
          f.array_writes[s.var].push_back(&s.exprs[0]);
          ExprReads(s.exprs[0], f);
        } else {
          f.scalar_writes.push_back(s.var);
        }
        ExprReads(s.exprs.back(), f);
        break;
      case Stmt::Kind::kFor:
        f.private_vars.insert(s.var);
        f.all_writes.insert(s.var);
        for (const Expr& e : s.exprs) ExprReads(e, f);
        break;
      case Stmt::Kind::kWhile:
        f.has_while = true;
        ExprReads(s.exprs[0], f);
        break;
      case Stmt::Kind::kIf:
        ExprReads(s.exprs[0], f);
        break;
      case Stmt::Kind::kOutput:
        f.has_output = true;
        ExprReads(s.exprs[0], f);
        break;
      case Stmt::Kind::kCall:
      case Stmt::Kind::kAccel:
        f.has_call = true;
        break;
    }
    Gather(s.body, f);
    Gather(s.else_body, f);
  }
}

}  // namespace

void CollectExprUses(const Expr& e, std::set<VarId>& uses) {
  if (e.kind == Expr::Kind::kVar || e.kind == Expr::Kind::kIndex) uses.insert(e.var);
  for (const Expr& a : e.args) CollectExprUses(a, uses);
}

DefUse DirectDefUse(const Stmt& s) {
  if (s.kind == Stmt::Kind::kAccel) return CollectDefUse(s.body);
  Stmt shallow;
  shallow.kind = s.kind;
  shallow.var = s.var;
  shallow.exprs = s.exprs;
  shallow.name = s.name;
  DefUse du;
  DefUseStmt(shallow, du);
  return du;
}

DefUse CollectDefUse(const std::vector<Stmt>& stmts) {
  DefUse du;
  DefUseInto(stmts, du);
  return du;
}

std::optional<int64_t> LoopOffset(const Expr& index, VarId loop_var) {
  auto is_var = [&](const Expr& e) {
    return e.kind == Expr::Kind::kVar && e.var == loop_var;
  };
  auto is_lit = [](const Expr& e) {
    return e.kind == Expr::Kind::kNumber && e.is_int;
  };
  if (is_var(index)) return 0;
  if (index.kind != Expr::Kind::kBinary) return std::nullopt;
  const Expr& l = index.args[0];
  const Expr& r = index.args[1];
  if (index.op == BinaryOp::kAdd) {
    if (is_var(l) && is_lit(r)) return static_cast<int64_t>(r.number);
    if (is_lit(l) && is_var(r)) return static_cast<int64_t>(l.number);
  }
  if (index.op == BinaryOp::kSub && is_var(l) && is_lit(r)) {
    return -static_cast<int64_t>(r.number);
  }
  return std::nullopt;
}

std::pair<bool, std::string> CheckParallelizable(const Ast& ast, LoopId id) {
  std::vector<const Stmt*> loops = IndexLoops(ast);
  if (id < 0 || id >= static_cast<LoopId>(loops.size()) || loops[id] == nullptr) {
    throw Error(ErrorCode::kUnknownLoopId, "unknown loop id " + std::to_string(id));
  }
  const Stmt& loop = *loops[id];
  const auto& name = [&](VarId v) -> const std::string& { return ast.decls[v].name; };
  if (loop.kind != Stmt::Kind::kFor) return {false, "while loop"};
  if (ast.decls[loop.var].kind != ValueKind::kInt) {
    return {false, "non-integer loop variable " + name(loop.var)};
  }
  const Expr& step = loop.exprs[2];
  if (step.kind != Expr::Kind::kNumber || !step.is_int || step.number <= 0) {
    return {false, "non-constant step"};
  }

  BodyFacts f;
  Gather(loop.body, f);
  if (f.has_while) return {false, "contains while loop"};
  if (f.has_output) return {false, "contains output statement"};
  if (f.has_call) return {false, "contains functional block call"};

  for (VarId v : f.scalar_writes) {
    if (v == loop.var) return {false, "loop variable " + name(v) + " modified in body"};
    if (f.private_vars.count(v)) continue;
    if (f.scalar_reads.count(v)) return {false, "scalar recurrence on " + name(v)};
    return {false, "scalar write to " + name(v)};
  }
  for (const auto& [array, writes] : f.array_writes) {
    std::optional<AffineIndex> offset;
    for (const Expr* idx : writes) {
      auto c = Affine(ast, *idx, loop.var, f.all_writes);
      if (!c) return {false, "non-unit index form on " + name(array)};
      if (offset && *offset != *c) return {false, "conflicting writes to " + name(array)};
      offset = c;
    }
    auto reads = f.array_reads.find(array);
    if (reads == f.array_reads.end()) continue;
    for (const Expr* idx : reads->second) {
      auto c = Affine(ast, *idx, loop.var, f.all_writes);
      if (!c || *c != *offset) {
        return {false, "loop-carried dependence on " + name(array)};
      }
    }
  }
  std::set<VarId> bound_uses;
  CollectExprUses(loop.exprs[1], bound_uses);
  for (VarId v : bound_uses) {
    if (f.all_writes.count(v)) return {false, "loop bound depends on " + name(v)};
  }
  return {true, ""};
}

std::vector<LoopInfo> Analyze(const Ast& ast) {
  std::vector<LoopInfo> out(ast.loop_count);
  WalkStmts(ast, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
    if (!s.is_loop()) return;
    LoopInfo& info = out[s.loop_id];
    info.id = s.loop_id;
    info.depth = static_cast<int>(chain.size());
    if (!chain.empty()) info.parent = chain.back()->loop_id;
    info.is_for = s.kind == Stmt::Kind::kFor;

    DefUse body = CollectDefUse(s.body);
    std::set<VarId> uses = body.uses;
    for (const Expr& e : s.exprs) CollectExprUses(e, uses);
    std::set<VarId> defs = body.defs;
    if (info.is_for) {
      uses.insert(s.var);
      defs.erase(s.var);
    }
    info.defs = Names(ast, defs);
    info.uses = Names(ast, uses);

    auto [ok, why] = CheckParallelizable(ast, s.loop_id);
    info.parallelizable = ok;
    info.reason = why;

    if (info.is_for) {
      const Expr& init = s.exprs[0];
      const Expr& bound = s.exprs[1];
      const Expr& step = s.exprs[2];
      if (init.kind == Expr::Kind::kNumber && bound.kind == Expr::Kind::kNumber &&
          step.kind == Expr::Kind::kNumber && step.number > 0) {
        double trips = std::ceil((bound.number - init.number) / step.number);
        info.static_trip = trips > 0 ? static_cast<int64_t>(trips) : 0;
      }
    }
  });
  return out;
}

}  // namespace envadapt::minilang

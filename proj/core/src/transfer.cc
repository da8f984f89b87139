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

#include "envadapt/transfer.h"

#include <algorithm>
#include <map>

#include "envadapt/minilang/analysis.h"

namespace envadapt::transfer {

using minilang::Ast;
using minilang::DefUse;
using minilang::LoopId;
using minilang::Stmt;
using minilang::TransferKind;
using minilang::VarId;

namespace {

void Merge(DefUse& into, const DefUse& from) {
  into.defs.insert(from.defs.begin(), from.defs.end());
  into.uses.insert(from.uses.begin(), from.uses.end());
}

// Accesses performed by host code within `s`, including `s`'s own header.
void HostAccess(const Stmt& s, const std::set<LoopId>& offloaded, DefUse& du) {
  Merge(du, minilang::DirectDefUse(s));
  if (s.kind == Stmt::Kind::kAccel) return;
  if (s.is_loop() && offloaded.count(s.loop_id)) return;
  for (const Stmt& c : s.body) HostAccess(c, offloaded, du);
  for (const Stmt& c : s.else_body) HostAccess(c, offloaded, du);
}

void PrivateVars(const Stmt& loop, std::set<VarId>& out) {
  if (loop.kind == Stmt::Kind::kFor) out.insert(loop.var);
  for (const Stmt& c : loop.body) PrivateVars(c, out);
  for (const Stmt& c : loop.else_body) PrivateVars(c, out);
}

struct OffloadSite {
  const Stmt* loop;
  std::vector<const Stmt*> chain;  // enclosing loops, innermost last
};

std::vector<OffloadSite> Sites(const Ast& ast, const std::set<LoopId>& offloaded) {
  std::vector<OffloadSite> sites;
  minilang::WalkStmts(ast, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
    if (s.is_loop() && offloaded.count(s.loop_id)) sites.push_back({&s, chain});
  });
  return sites;
}

// Preorder position and subtree end for every statement reachable by a walk.
struct Layout {
  std::vector<const Stmt*> order;
  std::map<const Stmt*, std::pair<size_t, size_t>> span;

  explicit Layout(const Ast& ast) { Visit(ast.stmts); }

  void Visit(const std::vector<Stmt>& stmts) {
    for (const Stmt& s : stmts) {
      size_t begin = order.size();
      order.push_back(&s);
      if (s.kind != Stmt::Kind::kAccel) {
        Visit(s.body);
        Visit(s.else_body);
      }
      span[&s] = {begin, order.size()};
    }
  }
};

// Whether anything may read `v` after `site.loop` finishes: a statement later
// in program order, or any statement of a loop enclosing it.
bool ReadAfter(const Layout& layout, const OffloadSite& site, VarId v) {
  const Stmt* root = site.chain.empty() ? site.loop : site.chain.front();
  if (!site.chain.empty()) {
    DefUse du = minilang::DirectDefUse(*root);
    Merge(du, minilang::CollectDefUse(root->body));
    if (du.uses.count(v)) return true;
  }
  for (size_t i = layout.span.at(root).second; i < layout.order.size(); ++i) {
    if (minilang::DirectDefUse(*layout.order[i]).uses.count(v)) return true;
  }
  return false;
}

LoopId Hoist(const OffloadSite& site, VarId v, const std::set<LoopId>& offloaded,
             bool blocked_by_reads) {
  LoopId anchor = site.loop->loop_id;
  for (auto it = site.chain.rbegin(); it != site.chain.rend(); ++it) {
    DefUse host;
    HostAccess(**it, offloaded, host);
    if (host.defs.count(v) || (blocked_by_reads && host.uses.count(v))) break;
    anchor = (*it)->loop_id;
  }
  return anchor;
}

std::vector<TransferDirective> Finish(std::set<TransferDirective> set) {
  return {set.begin(), set.end()};
}

}  // namespace

DeviceAccess DeviceAccessOf(const Stmt& loop) {
  DefUse body = minilang::CollectDefUse(loop.body);
  std::set<VarId> priv;
  PrivateVars(loop, priv);
  DeviceAccess a;
  for (VarId v : body.uses) {
    if (!priv.count(v)) a.reads.insert(v);
  }
  for (VarId v : body.defs) {
    if (!priv.count(v)) a.writes.insert(v);
  }
  return a;
}

std::vector<TransferDirective> ComputeDirectives(const Ast& ast, const OffloadPattern& pattern) {
  ValidatePattern(ast, pattern);
  std::set<LoopId> offloaded = pattern.Offloaded();
  Layout layout(ast);
  std::set<TransferDirective> out;
  for (const OffloadSite& site : Sites(ast, offloaded)) {
    DeviceAccess access = DeviceAccessOf(*site.loop);
    for (VarId v : access.reads) {
      out.insert({TransferKind::kCopyIn, ast.decls[v].name, Hoist(site, v, offloaded, false)});
    }
    for (VarId v : access.writes) {
      if (!ReadAfter(layout, site, v)) continue;
      out.insert({TransferKind::kCopyOut, ast.decls[v].name, Hoist(site, v, offloaded, true)});
    }
  }
  return Finish(std::move(out));
}

std::vector<TransferDirective> NaiveDirectives(const Ast& ast, const OffloadPattern& pattern) {
  ValidatePattern(ast, pattern);
  std::set<TransferDirective> out;
  for (const OffloadSite& site : Sites(ast, pattern.Offloaded())) {
    DeviceAccess access = DeviceAccessOf(*site.loop);
    LoopId id = site.loop->loop_id;
    for (VarId v : access.reads) out.insert({TransferKind::kCopyIn, ast.decls[v].name, id});
    for (VarId v : access.writes) out.insert({TransferKind::kCopyOut, ast.decls[v].name, id});
  }
  return Finish(std::move(out));
}

namespace {

void AttachInto(std::vector<Stmt>& stmts, std::map<LoopId, std::vector<TransferDirective>>& pending) {
  for (Stmt& s : stmts) {
    if (s.kind == Stmt::Kind::kAccel) continue;
    if (s.is_loop()) {
      auto it = pending.find(s.loop_id);
      if (it != pending.end()) {
        std::set<TransferDirective> merged(s.directives.begin(), s.directives.end());
        merged.insert(it->second.begin(), it->second.end());
        s.directives.assign(merged.begin(), merged.end());
        pending.erase(it);
      }
    }
    AttachInto(s.body, pending);
    AttachInto(s.else_body, pending);
  }
}

void StripInto(std::vector<Stmt>& stmts) {
  for (Stmt& s : stmts) {
    s.directives.clear();
    StripInto(s.body);
    StripInto(s.else_body);
  }
}

}  // namespace

Ast InsertDirectives(const Ast& ast, const std::vector<TransferDirective>& directives) {
  Ast out = ast;
  std::map<LoopId, std::vector<TransferDirective>> pending;
  std::set<TransferDirective> top(out.program_directives.begin(), out.program_directives.end());
  for (const TransferDirective& d : directives) {
    if (!out.Lookup(d.var)) throw UndeclaredVariable(d.var, {});
    if (d.anchor == minilang::kTopAnchor) {
      top.insert(d);
    } else if (d.anchor < 0 || d.anchor >= out.loop_count) {
      throw Error(ErrorCode::kUnknownAnchor, "no loop with id " + std::to_string(d.anchor));
    } else {
      pending[d.anchor].push_back(d);
    }
  }
  out.program_directives.assign(top.begin(), top.end());
  AttachInto(out.stmts, pending);
  if (!pending.empty()) {
    throw Error(ErrorCode::kUnknownAnchor,
                "no loop with id " + std::to_string(pending.begin()->first));
  }
  return out;
}

Ast StripDirectives(const Ast& ast) {
  Ast out = ast;
  out.program_directives.clear();
  StripInto(out.stmts);
  return out;
}

}  // namespace envadapt::transfer

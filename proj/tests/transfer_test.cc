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


#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/minilang/io.h"
#include "envadapt/minilang/library.h"
#include "envadapt/minilang/parser.h"
#include "envadapt/minilang/printer.h"
#include "envadapt/offload.h"
#include "envadapt/perfsim.h"
#include "envadapt/transfer.h"
#include "support/test_support.h"

namespace envadapt::transfer {
namespace {

using minilang::Ast;
using minilang::Expr;
using minilang::InputBinding;
using minilang::LoopId;
using minilang::Parse;
using minilang::Stmt;
using minilang::TransferKind;
using minilang::VarId;

OffloadPattern PatternFor(const Ast& ast, std::set<LoopId> loops) {
  OffloadPattern p = OffloadPattern::None(ParallelizableLoops(minilang::Analyze(ast)));
  for (size_t i = 0; i < p.loop_map.size(); ++i) p.bits[i] = loops.count(p.loop_map[i]) > 0;
  return p;
}

perfsim::CostModel EventModel() {
  perfsim::CostModel m;
  m.cpu_op_cost = 1;
  m.gpu_speedup = 4;
  m.kernel_launch = 1;
  m.xfer_latency = 10;
  m.xfer_per_byte = 0.01;
  return m;
}

int64_t EventsFor(const Ast& ast, const OffloadPattern& p, std::vector<TransferDirective> dirs,
                  const std::string& var) {
  std::erase_if(dirs, [&](const TransferDirective& d) { return d.var != var; });
  return perfsim::Simulate(InsertDirectives(ast, dirs), p, EventModel(), {}).transfer_events;
}

constexpr const char* kNestedReadOnly =
    "float a[16]; float b[16]; float s = 0;"
    "for(i=0;i<16;i=i+1){ b[i] = i; }"
    "for(t=0;t<50;t=t+1){ for(i=0;i<16;i=i+1){ a[i] = b[i] * 2; } s = s + a[0]; }"
    "output s;";

TEST(ComputeDirectives, TopLevelLoopAnchorsAtItself) {
  Ast ast = Parse("float a[8]; float b[8]; for(i=0;i<8;i=i+1){ b[i]=i; }"
                  "for(i=0;i<8;i=i+1){ a[i]=b[i]+1; } output a[3];");
  OffloadPattern p = PatternFor(ast, {1});
  std::vector<TransferDirective> want = {{TransferKind::kCopyIn, "b", 1},
                                         {TransferKind::kCopyOut, "a", 1}};
  EXPECT_EQ(ComputeDirectives(ast, p), want);
  EXPECT_EQ(NaiveDirectives(ast, p), want);
}

TEST(ComputeDirectives, HoistsReadOnlyInputToOuterLoop) {
  Ast ast = Parse(kNestedReadOnly);
  OffloadPattern p = PatternFor(ast, {2});
  std::vector<TransferDirective> dirs = ComputeDirectives(ast, p);
  EXPECT_NE(std::find(dirs.begin(), dirs.end(), TransferDirective{TransferKind::kCopyIn, "b", 1}),
            dirs.end());
  // a is read by the outer body every iteration, so its copy-out stays inside.
  EXPECT_NE(std::find(dirs.begin(), dirs.end(), TransferDirective{TransferKind::kCopyOut, "a", 2}),
            dirs.end());
  EXPECT_EQ(EventsFor(ast, p, dirs, "b"), 1);
  EXPECT_EQ(EventsFor(ast, p, NaiveDirectives(ast, p), "b"), 50);
}

TEST(ComputeDirectives, HostWriteInOuterBodyBlocksHoisting) {
  Ast ast = Parse(
      "float a[16]; float b[16]; float s = 0;"
      "for(t=0;t<50;t=t+1){ b[0] = t; for(i=0;i<16;i=i+1){ a[i] = b[i] * 2; } s = s + a[1]; }"
      "output s;");
  OffloadPattern p = PatternFor(ast, {1});
  std::vector<TransferDirective> dirs = ComputeDirectives(ast, p);
  EXPECT_NE(std::find(dirs.begin(), dirs.end(), TransferDirective{TransferKind::kCopyIn, "b", 1}),
            dirs.end());
  Ast annotated = InsertDirectives(ast, dirs);
  std::mt19937_64 rng(41);
  for (int n = 0; n < 20; ++n) {
    InputBinding in = testing::FuzzInput(ast, rng);
    ShadowResult shadow = RunShadow(annotated, p, in);
    EXPECT_EQ(shadow.fault_count, 0);
    EXPECT_TRUE(testing::SameBits(shadow.output, minilang::Interpret(ast, in).first));
  }
}

TEST(ComputeDirectives, CopyOutWhenReadAfter) {
  Ast ast = Parse("float a[8]; for(i=0;i<8;i=i+1){ a[i]=i*2; } output a[7];");
  EXPECT_EQ(ComputeDirectives(ast, PatternFor(ast, {0})),
            (std::vector<TransferDirective>{{TransferKind::kCopyOut, "a", 0}}));
  Ast unused = Parse("float a[8]; for(i=0;i<8;i=i+1){ a[i]=i*2; }");
  EXPECT_TRUE(ComputeDirectives(unused, PatternFor(unused, {0})).empty());
}

TEST(ComputeDirectives, CopyOutRuleAlsoBlocksOnHostReads) {
  // The outer body only reads c, which would not stop a copy-in but does
  // stop the copy-out from leaving the inner loop.
  Ast ast = Parse(
      "float c[8]; float s = 0;"
      "for(t=0;t<4;t=t+1){ for(i=0;i<8;i=i+1){ c[i] = i + t; } s = s + c[2]; }"
      "output s;");
  std::vector<TransferDirective> dirs = ComputeDirectives(ast, PatternFor(ast, {1}));
  EXPECT_EQ(dirs, (std::vector<TransferDirective>{{TransferKind::kCopyIn, "t", 1},
                                                  {TransferKind::kCopyOut, "c", 1}}));
  Ast quiet = Parse(
      "float c[8]; float s = 0;"
      "for(t=0;t<4;t=t+1){ for(i=0;i<8;i=i+1){ c[i] = i * 3; } s = s + 1; }"
      "output c[2];");
  EXPECT_EQ(ComputeDirectives(quiet, PatternFor(quiet, {1})),
            (std::vector<TransferDirective>{{TransferKind::kCopyOut, "c", 0}}));
}

TEST(NaiveDirectives, EverythingAtTheOffloadedLoop) {
  Ast ast = Parse(
      "float a[16]; float b[16];"
      "for(t=0;t<50;t=t+1){ for(i=0;i<16;i=i+1){ a[i] = b[i] * 2; } }");
  OffloadPattern p = PatternFor(ast, {1});
  std::vector<TransferDirective> naive = NaiveDirectives(ast, p);
  EXPECT_EQ(naive, (std::vector<TransferDirective>{{TransferKind::kCopyIn, "b", 1},
                                                   {TransferKind::kCopyOut, "a", 1}}));
  Ast annotated = InsertDirectives(ast, naive);
  EXPECT_EQ(perfsim::Simulate(annotated, p, EventModel(), {}).transfer_events, 100);
  EXPECT_TRUE(NaiveDirectives(ast, PatternFor(ast, {})).empty());
  EXPECT_TRUE(ComputeDirectives(ast, PatternFor(ast, {})).empty());
}

TEST(InsertDirectives, AttachesMergesAndRoundTrips) {
  Ast ast = Parse("float a[8]; float b[8]; for(i=0;i<8;i=i+1){ a[i]=b[i]; } output a[0];");
  Ast one = InsertDirectives(ast, {{TransferKind::kCopyIn, "b", 0}});
  EXPECT_EQ(one.stmts[0].directives.size(), 1u);
  Ast merged = InsertDirectives(one, {{TransferKind::kCopyIn, "b", 0}, {TransferKind::kCopyIn, "b", 0}});
  EXPECT_EQ(merged.stmts[0].directives.size(), 1u);
  Ast both = InsertDirectives(ast, ComputeDirectives(ast, PatternFor(ast, {0})));
  std::string text = minilang::Print(both);
  EXPECT_NE(text.find("#pragma xfer copyin(b)"), std::string::npos);
  EXPECT_NE(text.find("#pragma xfer copyout(a)"), std::string::npos);
  EXPECT_EQ(Parse(text), both);
  EXPECT_EQ(StripDirectives(both), ast);
}

TEST(InsertDirectives, UnknownAnchor) {
  Ast ast = Parse("float a[8]; for(i=0;i<8;i=i+1){ a[i]=i; }");
  try {
    InsertDirectives(ast, {{TransferKind::kCopyIn, "a", 7}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownAnchor);
  }
  Ast top = InsertDirectives(ast, {{TransferKind::kCopyIn, "a", minilang::kTopAnchor}});
  EXPECT_EQ(top.program_directives.size(), 1u);
  EXPECT_EQ(Parse(minilang::Print(top)), top);
}

TEST(Shadow, MissingDirectivesFault) {
  Ast ast = Parse("float a[8]; float b[8]; for(i=0;i<8;i=i+1){ a[i]=b[i]+1; } output a[0];");
  OffloadPattern p = PatternFor(ast, {0});
  ShadowResult bare = RunShadow(ast, p, {});
  EXPECT_GT(bare.fault_count, 0);
  ASSERT_FALSE(bare.faults.empty());
  EXPECT_TRUE(bare.faults[0].on_device);
  EXPECT_EQ(bare.faults[0].var, "b");
  Ast in_only = InsertDirectives(ast, {{TransferKind::kCopyIn, "b", 0}});
  ShadowResult stale = RunShadow(in_only, p, {});
  ASSERT_GT(stale.fault_count, 0);
  EXPECT_FALSE(stale.faults[0].on_device);
  EXPECT_EQ(stale.faults[0].var, "a");
}

// Independent legality check of each anchor against the two hoisting rules,
// written from the rule text rather than from the library helpers.
struct HostTouches {
  std::set<VarId> writes, reads;
};

void ExprReads(const Expr& e, std::set<VarId>& out) {
  if (e.kind == Expr::Kind::kVar || e.kind == Expr::Kind::kIndex) out.insert(e.var);
  for (const Expr& a : e.args) ExprReads(a, out);
}

void Host(const Stmt& s, const std::set<LoopId>& offloaded, HostTouches& h) {
  if (s.is_loop() && offloaded.count(s.loop_id)) return;
  switch (s.kind) {
    case Stmt::Kind::kAssign:
      h.writes.insert(s.var);
      if (s.exprs.size() == 2) h.reads.insert(s.var);
      for (const Expr& e : s.exprs) ExprReads(e, h.reads);
      break;
    case Stmt::Kind::kFor:
      h.writes.insert(s.var);
      h.reads.insert(s.var);
      for (const Expr& e : s.exprs) ExprReads(e, h.reads);
      break;
    case Stmt::Kind::kCall: {
      const minilang::BlockSignature* sig = minilang::FindBlock(s.name);
      for (size_t i = 0; i < s.exprs.size(); ++i) {
        ExprReads(s.exprs[i], h.reads);
        if (sig && i < sig->params.size() && sig->params[i] != minilang::ParamKind::kArrayIn &&
            sig->params[i] != minilang::ParamKind::kScalar) {
          h.writes.insert(s.exprs[i].var);
        }
      }
      break;
    }
    default:
      for (const Expr& e : s.exprs) ExprReads(e, h.reads);
  }
  for (const Stmt& c : s.body) Host(c, offloaded, h);
  for (const Stmt& c : s.else_body) Host(c, offloaded, h);
}

struct Chain {
  const Stmt* loop;
  std::vector<const Stmt*> ancestors;  // outermost first
};

void Collect(const std::vector<Stmt>& stmts, std::vector<const Stmt*>& up,
             std::map<LoopId, Chain>& out) {
  for (const Stmt& s : stmts) {
    if (s.is_loop()) {
      out[s.loop_id] = {&s, up};
      up.push_back(&s);
    }
    Collect(s.body, up, out);
    Collect(s.else_body, up, out);
    if (s.is_loop()) up.pop_back();
  }
}

::testing::AssertionResult AnchorsLegal(const Ast& ast, const OffloadPattern& p,
                                        const std::vector<TransferDirective>& dirs) {
  std::map<LoopId, Chain> chains;
  std::vector<const Stmt*> up;
  Collect(ast.stmts, up, chains);
  std::set<LoopId> off = p.Offloaded();
  for (const TransferDirective& d : dirs) {
    VarId v = *ast.Lookup(d.var);
    bool copy_in = d.kind == TransferKind::kCopyIn;
    auto blocked = [&](const Stmt* loop) {
      HostTouches h;
      Host(*loop, off, h);
      return h.writes.count(v) || (!copy_in && h.reads.count(v));
    };
    bool justified = false;
    for (LoopId l : off) {
      const Chain& c = chains.at(l);
      if (d.anchor == l) {
        // Anchored at the loop itself: the directly enclosing loop must block.
        justified = c.ancestors.empty() || blocked(c.ancestors.back());
      }
      for (size_t i = 0; i < c.ancestors.size() && !justified; ++i) {
        if (c.ancestors[i]->loop_id != d.anchor) continue;
        bool ok = true;
        for (size_t j = i; j < c.ancestors.size(); ++j) ok = ok && !blocked(c.ancestors[j]);
        bool maximal = i == 0 || blocked(c.ancestors[i - 1]);
        justified = ok && maximal;
      }
      if (justified) break;
    }
    if (!justified) {
      return ::testing::AssertionFailure() << (copy_in ? "copyin(" : "copyout(") << d.var
                                           << ") at loop " << d.anchor;
    }
  }
  return ::testing::AssertionSuccess();
}

std::vector<OffloadPattern> ValidPatterns(const Ast& ast, std::mt19937_64& rng, int count) {
  std::vector<LoopId> map = ParallelizableLoops(minilang::Analyze(ast));
  std::vector<OffloadPattern> out;
  for (int n = 0; n < count * 4 && static_cast<int>(out.size()) < count; ++n) {
    OffloadPattern p = OffloadPattern::FromMask(map, map.empty() ? 0 : rng() % (uint64_t{1} << map.size()));
    if (IsShapeValid(ast, p)) out.push_back(p);
  }
  return out;
}

TEST(Properties, AnchorsLegalAndHoistingDominates) {
  std::mt19937_64 rng(42);
  std::vector<std::filesystem::path> programs = testing::ProgramsIn("programs/corpus");
  for (const auto& p : testing::ProgramsIn("programs/ga")) programs.push_back(p);
  programs.push_back(testing::DataPath("programs/nested.elc"));
  for (const auto& path : programs) {
    SCOPED_TRACE(path.filename().string());
    Ast ast = Parse(minilang::ReadFile(path));
    for (const OffloadPattern& p : ValidPatterns(ast, rng, 8)) {
      std::vector<TransferDirective> dirs = ComputeDirectives(ast, p);
      EXPECT_TRUE(AnchorsLegal(ast, p, dirs)) << p.Key();
      int64_t hoisted = perfsim::Simulate(InsertDirectives(ast, dirs), p, EventModel(), {}).transfer_events;
      int64_t naive = perfsim::Simulate(InsertDirectives(ast, NaiveDirectives(ast, p)), p,
                                        EventModel(), {}).transfer_events;
      EXPECT_LE(hoisted, naive) << p.Key();
    }
  }
}

TEST(Properties, ShadowMemoryAgreesOnCorpus) {
  std::mt19937_64 rng(43);
  for (const auto& path : testing::ProgramsIn("programs/corpus")) {
    SCOPED_TRACE(path.filename().string());
    Ast ast = Parse(minilang::ReadFile(path));
    for (const OffloadPattern& p : ValidPatterns(ast, rng, 5)) {
      Ast annotated = InsertDirectives(ast, ComputeDirectives(ast, p));
      for (int n = 0; n < 3; ++n) {
        InputBinding in = testing::FuzzInput(ast, rng);
        ShadowResult r = RunShadow(annotated, p, in);
        EXPECT_EQ(r.fault_count, 0) << p.Key();
        EXPECT_TRUE(testing::SameBits(r.output, minilang::Interpret(ast, in).first)) << p.Key();
      }
    }
  }
}

}  // namespace
}  // namespace envadapt::transfer

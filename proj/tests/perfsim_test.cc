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


#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/minilang/io.h"
#include "envadapt/minilang/parser.h"
#include "envadapt/offload.h"
#include "envadapt/perfsim.h"
#include "envadapt/transfer.h"
#include "support/test_support.h"

namespace envadapt::perfsim {
namespace {

using minilang::Ast;
using minilang::InputBinding;
using minilang::Parse;
using minilang::TransferDirective;
using minilang::TransferKind;

constexpr const char* kMapLoop =
    "float a[1000]; float b[1000]; for(i=0;i<1000;i=i+1){ a[i]=b[i]*2; }";

CostModel UnitModel() {
  CostModel m;
  m.cpu_op_cost = 1;
  m.gpu_speedup = 10;
  m.kernel_launch = 100;
  m.xfer_latency = 50;
  m.xfer_per_byte = 0.01;
  m.elem_bytes = 8;
  return m;
}

OffloadPattern PatternFor(const Ast& ast, uint64_t mask) {
  return OffloadPattern::FromMask(ParallelizableLoops(minilang::Analyze(ast)), mask);
}

Ast Annotate(const Ast& ast, const OffloadPattern& p) {
  return transfer::InsertDirectives(ast, transfer::ComputeDirectives(ast, p));
}

void ExpectAdditive(const ExecutionReport& r) {
  EXPECT_EQ(r.total, r.cpu_time + r.device_time + r.transfer_time);
  EXPECT_GE(r.cpu_time, 0);
  EXPECT_GE(r.device_time, 0);
  EXPECT_GE(r.transfer_time, 0);
}

TEST(Simulate, AllCpuMapLoop) {
  Ast ast = Parse(kMapLoop);
  ExecutionReport r = Simulate(ast, PatternFor(ast, 0), UnitModel(), {});
  EXPECT_EQ(r.cpu_ops, 3000);
  EXPECT_EQ(r.cpu_time, 3000);
  EXPECT_EQ(r.device_time, 0);
  EXPECT_EQ(r.transfer_time, 0);
  EXPECT_EQ(r.total, 3000);
}

TEST(Simulate, OffloadedMapLoopHandComputed) {
  Ast ast = Parse(kMapLoop);
  std::vector<TransferDirective> dirs = {{TransferKind::kCopyIn, "b", 0},
                                         {TransferKind::kCopyOut, "a", 0}};
  Ast annotated = transfer::InsertDirectives(ast, dirs);
  ExecutionReport r = Simulate(annotated, PatternFor(ast, 1), UnitModel(), {});
  EXPECT_DOUBLE_EQ(r.device_time, 100 + 300);
  EXPECT_DOUBLE_EQ(r.transfer_time, 2 * (50 + 80));
  EXPECT_EQ(r.transfer_events, 2);
  EXPECT_EQ(r.transfer_bytes, 16000);
  EXPECT_DOUBLE_EQ(r.cpu_time, 0);
  EXPECT_DOUBLE_EQ(r.total, 660);
  // Once a is read afterwards the computed directives are the hand-written ones.
  Ast read_after = Parse(std::string(kMapLoop) + " output a[0];");
  EXPECT_EQ(transfer::ComputeDirectives(read_after, PatternFor(read_after, 1)), dirs);
}

TEST(Simulate, EmptyProgramIsAllZero) {
  Ast ast = Parse("");
  ExecutionReport r = Simulate(ast, PatternFor(ast, 0), UnitModel(), {});
  EXPECT_EQ(r.total, 0);
  EXPECT_EQ(r.transfer_events, 0);
  EXPECT_TRUE(r.output.empty());
}

TEST(Simulate, ShapeErrors) {
  Ast seq = Parse("float a[8]; for(i=1;i<8;i=i+1){ a[i]=a[i-1]; }");
  OffloadPattern bogus;
  bogus.loop_map = {0};
  bogus.bits = {true};
  try {
    Simulate(seq, bogus, UnitModel(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPatternShapeMismatch);
  }
  Ast nested = Parse("float a[8]; for(t=0;t<2;t=t+1){ for(i=0;i<8;i=i+1){ a[i]=i; } }");
  OffloadPattern both;
  both.loop_map = {0, 1};
  both.bits = {true, true};
  EXPECT_FALSE(IsShapeValid(nested, both));
  EXPECT_THROW(Simulate(nested, both, UnitModel(), {}), Error);
}

TEST(Simulate, UnhousedKernel) {
  Ast ast = testing::LoadProgram("programs/fft_renamed.elc");
  patterndb::PatternDb db = patterndb::LoadDb(testing::DataPath("patterns.json"));
  Ast sub = patterndb::SubstituteAll(ast, patterndb::MatchBlocks(ast, db));
  try {
    Simulate(sub, PatternFor(sub, 0), UnitModel(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnhousedKernel);
  }
  SimulateOptions inactive;
  inactive.active_kernels = std::set<std::string>{};
  ExecutionReport cpu = Simulate(sub, PatternFor(sub, 0), UnitModel(), {}, inactive);
  EXPECT_EQ(cpu.device_time, 0);
}

TEST(Measure, LatencyAndThroughput) {
  Ast ast = Parse(kMapLoop);
  DeployablePlan plan;
  plan.pattern = PatternFor(ast, 1);
  plan.annotated = Annotate(ast, plan.pattern);
  ExecutionReport r = Simulate(plan.annotated, plan.pattern, UnitModel(), {});
  PerfMeasurement one = Measure(plan, {}, 1, UnitModel());
  EXPECT_EQ(one.latency, r.total);
  PerfMeasurement ten = Measure(plan, {}, 10, UnitModel());
  EXPECT_DOUBLE_EQ(ten.throughput, 10.0 / (10.0 * r.total));
  PerfMeasurement again = Measure(plan, {}, 10, UnitModel());
  EXPECT_EQ(ten.latency, again.latency);
  EXPECT_EQ(ten.throughput, again.throughput);
}

TEST(Measure, ResourcesScaleComputeButNotTransfer) {
  Ast ast = Parse(kMapLoop);
  DeployablePlan plan;
  plan.pattern = PatternFor(ast, 1);
  plan.annotated = Annotate(ast, plan.pattern);
  resource::ResourcePlan res;
  res.cpu_units = 1;
  res.device_units = 4;
  plan.resources = res;
  PerfMeasurement m = Measure(plan, {}, 1, UnitModel());
  // Only b is copied in since nothing reads a afterwards.
  EXPECT_DOUBLE_EQ(m.latency, std::max(0.0, 400.0 / 4) + (50 + 80));
}

TEST(CostModelJson, RoundTripAndValidation) {
  CostModel m = UnitModel();
  m.accel_formulas["k"] = {0.5, 0.25};
  CostModel back = ParseCostModel(DumpCostModel(m));
  EXPECT_EQ(back.cpu_op_cost, m.cpu_op_cost);
  EXPECT_EQ(back.xfer_per_byte, m.xfer_per_byte);
  EXPECT_EQ(back.accel_formulas.at("k"), m.accel_formulas.at("k"));
  EXPECT_THROW(ParseCostModel(R"({"cpu_op_cost": 1, "gpu_speedup": 0})"), SchemaError);
  EXPECT_THROW(ParseCostModel(R"({"cpu_op_cost": -1, "gpu_speedup": 2})"), SchemaError);
  CostModel shipped = LoadCostModel(testing::DataPath("costmodel.json"));
  EXPECT_EQ(shipped.elem_bytes, 8);
}

TEST(Noise, SeededAndReproducible) {
  Ast ast = Parse(kMapLoop);
  CostModel m = UnitModel();
  m.noise_sigma = 0.05;
  m.noise_seed = 3;
  OffloadPattern p = PatternFor(ast, 1);
  Ast annotated = Annotate(ast, p);
  ExecutionReport a = Simulate(annotated, p, m, {});
  ExecutionReport b = Simulate(annotated, p, m, {});
  EXPECT_EQ(a.total, b.total);
  EXPECT_NE(a.total, Simulate(annotated, p, UnitModel(), {}).total);
}

// Random shape-valid patterns for every corpus program.
std::vector<OffloadPattern> SamplePatterns(const Ast& ast, std::mt19937_64& rng, int count) {
  std::vector<minilang::LoopId> map = ParallelizableLoops(minilang::Analyze(ast));
  std::vector<OffloadPattern> out = {OffloadPattern::None(map)};
  uint64_t space = map.size() >= 63 ? ~uint64_t{0} : (uint64_t{1} << map.size());
  for (int n = 0; n < count * 4 && static_cast<int>(out.size()) < count; ++n) {
    OffloadPattern p = OffloadPattern::FromMask(map, space ? rng() % space : 0);
    if (IsShapeValid(ast, p)) out.push_back(p);
  }
  return out;
}

TEST(Properties, AdditivityAndSemanticPreservationOverCorpus) {
  CostModel model = LoadCostModel(testing::DataPath("costmodel.json"));
  model = WithDbFormulas(model, patterndb::LoadDb(testing::DataPath("patterns.json")));
  std::mt19937_64 rng(31);
  for (const auto& path : testing::ProgramsIn("programs/corpus")) {
    SCOPED_TRACE(path.filename().string());
    Ast ast = Parse(minilang::ReadFile(path));
    for (const OffloadPattern& p : SamplePatterns(ast, rng, 6)) {
      Ast annotated = Annotate(ast, p);
      InputBinding in = testing::FuzzInput(ast, rng);
      ExecutionReport r = Simulate(annotated, p, model, in);
      ExpectAdditive(r);
      EXPECT_TRUE(testing::SameBits(r.output, minilang::Interpret(ast, in).first)) << p.Key();
    }
  }
}

TEST(Properties, MonotoneInOpCostAndSpeedup) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.1, 10);
  std::vector<std::string> programs = {"programs/corpus/saxpy.elc", "programs/corpus/jacobi.elc",
                                       "programs/corpus/blur2d.elc", "programs/nested.elc"};
  for (const std::string& name : programs) {
    Ast ast = testing::LoadProgram(name);
    for (const OffloadPattern& p : SamplePatterns(ast, rng, 4)) {
      Ast annotated = Annotate(ast, p);
      for (int n = 0; n < 10; ++n) {
        CostModel m = UnitModel();
        m.cpu_op_cost = u(rng);
        m.gpu_speedup = u(rng);
        CostModel pricier = m;
        pricier.cpu_op_cost *= 1 + u(rng);
        CostModel faster = m;
        faster.gpu_speedup *= 1 + u(rng);
        ExecutionReport base = Simulate(annotated, p, m, {});
        EXPECT_GE(Simulate(annotated, p, pricier, {}).cpu_time, base.cpu_time);
        EXPECT_LE(Simulate(annotated, p, faster, {}).device_time, base.device_time);
      }
    }
  }
}

}  // namespace
}  // namespace envadapt::perfsim

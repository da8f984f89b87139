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

#ifndef ENVADAPT_TRANSFER_H_
#define ENVADAPT_TRANSFER_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "envadapt/minilang/ast.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/offload.h"

namespace envadapt::transfer {

using minilang::TransferDirective;

// Variables an offloaded loop reads and writes in device memory: its body's
// uses and defs minus the loop variables it regenerates (its own and those
// of nested for loops). The header is evaluated on the host.
struct DeviceAccess {
  std::set<minilang::VarId> reads;
  std::set<minilang::VarId> writes;
};
DeviceAccess DeviceAccessOf(const minilang::Stmt& loop);

// Hoisted directives for every offloaded loop L:
//  copyin(v) for each device read v, anchored at the outermost loop of the
//    chain from L upward in which host code writes v nowhere (loop headers
//    included); L itself when its parent writes v.
//  copyout(v) for each device write v that may be read after L (later in
//    program order, or anywhere in a loop enclosing L), anchored like
//    copyin but also blocked by host reads of v.
// Host code is everything outside offloaded loop bodies; accelerator calls
// count as host code. Duplicates are merged; the result is sorted.
// Throws Error(kPatternShapeMismatch).
std::vector<TransferDirective> ComputeDirectives(const minilang::Ast& ast,
                                                 const OffloadPattern& pattern);

// Per-loop transfers with no hoisting: copyin of every device read and
// copyout of every device write, anchored at the offloaded loop.
std::vector<TransferDirective> NaiveDirectives(const minilang::Ast& ast,
                                               const OffloadPattern& pattern);

// Attaches directives before their anchor loops (kTopAnchor goes to the
// program header). Throws Error(kUnknownAnchor) and UndeclaredVariable.
minilang::Ast InsertDirectives(const minilang::Ast& ast,
                               const std::vector<TransferDirective>& directives);

// Drops every directive, including program-level ones.
minilang::Ast StripDirectives(const minilang::Ast& ast);

// Host/device split-memory interpreter. Each element carries a validity bit
// per memory: a host write invalidates the device copy and vice versa;
// copyin copies valid host elements to the device, copyout copies valid
// device elements back. Reading an invalid element is a fault. Offloaded
// loops' bodies run against device memory; their regenerated loop
// variables are written to both.
struct ShadowFault {
  std::string var;
  int64_t index = 0;
  bool on_device = false;
  minilang::LoopId loop = minilang::kTopAnchor;  // innermost enclosing loop
};

struct ShadowResult {
  minilang::OutputTrace output;
  int64_t fault_count = 0;
  std::vector<ShadowFault> faults;  // first few, for diagnostics
};

ShadowResult RunShadow(const minilang::Ast& annotated, const OffloadPattern& pattern,
                       const minilang::InputBinding& input,
                       int64_t step_budget = minilang::kDefaultStepBudget);

}  // namespace envadapt::transfer

#endif  // ENVADAPT_TRANSFER_H_

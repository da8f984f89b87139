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

#ifndef ENVADAPT_OFFLOAD_H_
#define ENVADAPT_OFFLOAD_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/ast.h"

namespace envadapt {

// Bit i selects the i-th parallelizable loop (loop_map[i]) for offload.
struct OffloadPattern {
  std::vector<bool> bits;
  std::vector<minilang::LoopId> loop_map;

  static OffloadPattern None(std::vector<minilang::LoopId> loop_map);
  static OffloadPattern FromMask(std::vector<minilang::LoopId> loop_map, uint64_t mask);

  std::set<minilang::LoopId> Offloaded() const;
  // "0101..." in ordinal order.
  std::string Key() const;
  uint64_t Mask() const;
  bool operator==(const OffloadPattern&) const = default;
};

// Parallelizable LoopIds in preorder.
std::vector<minilang::LoopId> ParallelizableLoops(const std::vector<minilang::LoopInfo>& info);

// Throws Error(kPatternShapeMismatch) when a set bit names a loop that is
// missing or not parallelizable, or two set bits are nested.
void ValidatePattern(const minilang::Ast& ast, const OffloadPattern& pattern);
bool IsShapeValid(const minilang::Ast& ast, const OffloadPattern& pattern);

}  // namespace envadapt

#endif  // ENVADAPT_OFFLOAD_H_

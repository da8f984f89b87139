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

#include "envadapt/offload.h"

namespace envadapt {

using minilang::Ast;
using minilang::LoopId;
using minilang::Stmt;

OffloadPattern OffloadPattern::None(std::vector<LoopId> loop_map) {
  OffloadPattern p;
  p.bits.assign(loop_map.size(), false);
  p.loop_map = std::move(loop_map);
  return p;
}

OffloadPattern OffloadPattern::FromMask(std::vector<LoopId> loop_map, uint64_t mask) {
  OffloadPattern p = None(std::move(loop_map));
  for (size_t i = 0; i < p.bits.size(); ++i) p.bits[i] = (mask >> i) & 1;
  return p;
}

std::set<LoopId> OffloadPattern::Offloaded() const {
  std::set<LoopId> out;
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.insert(loop_map.at(i));
  }
  return out;
}

std::string OffloadPattern::Key() const {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

uint64_t OffloadPattern::Mask() const {
  uint64_t m = 0;
  for (size_t i = 0; i < bits.size() && i < 64; ++i) {
    if (bits[i]) m |= uint64_t{1} << i;
  }
  return m;
}

std::vector<LoopId> ParallelizableLoops(const std::vector<minilang::LoopInfo>& info) {
  std::vector<LoopId> out;
  for (const auto& l : info) {
    if (l.parallelizable) out.push_back(l.id);
  }
  return out;
}

void ValidatePattern(const Ast& ast, const OffloadPattern& pattern) {
  if (pattern.bits.size() != pattern.loop_map.size()) {
    throw Error(ErrorCode::kPatternShapeMismatch, "pattern bits and loop map differ in length");
  }
  std::set<LoopId> on = pattern.Offloaded();
  for (LoopId id : on) {
    if (id < 0 || id >= ast.loop_count) {
      throw Error(ErrorCode::kPatternShapeMismatch, "pattern names unknown loop " + std::to_string(id));
    }
    auto [ok, why] = minilang::CheckParallelizable(ast, id);
    if (!ok) {
      throw Error(ErrorCode::kPatternShapeMismatch,
                  "loop " + std::to_string(id) + " is not parallelizable: " + why);
    }
  }
  std::string clash;
  minilang::WalkStmts(ast, [&](const Stmt& s, const std::vector<const Stmt*>& chain) {
    if (!clash.empty() || !s.is_loop() || !on.count(s.loop_id)) return;
    for (const Stmt* outer : chain) {
      if (on.count(outer->loop_id)) {
        clash = "loops " + std::to_string(outer->loop_id) + " and " +
                std::to_string(s.loop_id) + " are nested";
      }
    }
  });
  if (!clash.empty()) throw Error(ErrorCode::kPatternShapeMismatch, clash);
}

bool IsShapeValid(const Ast& ast, const OffloadPattern& pattern) {
  try {
    ValidatePattern(ast, pattern);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace envadapt

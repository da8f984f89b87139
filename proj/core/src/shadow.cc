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

#include "envadapt/transfer.h"

namespace envadapt::transfer {

using minilang::Ast;
using minilang::LoopId;
using minilang::Stmt;
using minilang::TransferDirective;
using minilang::TransferKind;
using minilang::VarId;

namespace {

constexpr size_t kKeptFaults = 16;

void LoopVars(const Stmt& s, std::set<VarId>& out) {
  if (s.kind == Stmt::Kind::kFor) out.insert(s.var);
  for (const Stmt& c : s.body) LoopVars(c, out);
  for (const Stmt& c : s.else_body) LoopVars(c, out);
}

class ShadowMachine : public minilang::Machine {
 public:
  ShadowMachine(const Ast& ast, minilang::Memory mem, const std::set<LoopId>& offloaded,
                int64_t step_budget)
      : Machine(ast, std::move(mem), step_budget), offloaded_(offloaded) {
    device_ = memory_;
    for (const auto& v : memory_) {
      host_valid_.emplace_back(v.size(), 1);
      device_valid_.emplace_back(v.size(), 0);
    }
  }

  ShadowResult Execute() {
    for (const TransferDirective& d : ast_.program_directives) {
      if (d.kind == TransferKind::kCopyIn) CopyIn(d.var);
    }
    Run();
    for (const TransferDirective& d : ast_.program_directives) {
      if (d.kind == TransferKind::kCopyOut) CopyOut(d.var);
    }
    result_.output = output_;
    return result_;
  }

 protected:
  double Read(VarId v, int64_t i) override {
    if (IsPrivate(v)) return memory_[v][i];
    if (on_device_) {
      if (!device_valid_[v][i]) Fault(v, i, true);
      return device_[v][i];
    }
    if (!host_valid_[v][i]) Fault(v, i, false);
    return memory_[v][i];
  }

  void Write(VarId v, int64_t i, double value) override {
    if (IsPrivate(v)) {
      memory_[v][i] = device_[v][i] = value;
      host_valid_[v][i] = device_valid_[v][i] = 1;
    } else if (on_device_) {
      device_[v][i] = value;
      device_valid_[v][i] = 1;
      host_valid_[v][i] = 0;
    } else {
      memory_[v][i] = value;
      host_valid_[v][i] = 1;
      device_valid_[v][i] = 0;
    }
  }

  void OnLoopEnter(const Stmt& loop) override {
    for (const TransferDirective& d : loop.directives) {
      if (d.kind == TransferKind::kCopyIn) CopyIn(d.var);
    }
    if (Offloaded(loop)) {
      current_ = &loop;
      private_.clear();
      LoopVars(loop, private_);
    }
    if (loop.loop_id >= 0) loops_.push_back(loop.loop_id);
  }

  void OnLoopExit(const Stmt& loop) override {
    if (loop.loop_id >= 0) loops_.pop_back();
    if (current_ == &loop) {
      current_ = nullptr;
      private_.clear();
    }
    for (const TransferDirective& d : loop.directives) {
      if (d.kind == TransferKind::kCopyOut) CopyOut(d.var);
    }
  }

  void OnIterBegin(const Stmt& loop) override {
    if (current_ == &loop) on_device_ = true;
  }

  void OnIterEnd(const Stmt& loop) override {
    if (current_ == &loop) on_device_ = false;
  }

 private:
  bool Offloaded(const Stmt& loop) const {
    return loop.loop_id >= 0 && offloaded_.count(loop.loop_id) > 0;
  }
  bool IsPrivate(VarId v) const { return current_ != nullptr && private_.count(v) > 0; }

  void CopyIn(const std::string& name) {
    VarId v = *ast_.Lookup(name);
    for (size_t i = 0; i < memory_[v].size(); ++i) {
      device_valid_[v][i] = host_valid_[v][i];
      if (host_valid_[v][i]) device_[v][i] = memory_[v][i];
    }
  }

  void CopyOut(const std::string& name) {
    VarId v = *ast_.Lookup(name);
    for (size_t i = 0; i < memory_[v].size(); ++i) {
      if (!device_valid_[v][i]) continue;
      memory_[v][i] = device_[v][i];
      host_valid_[v][i] = 1;
    }
  }

  void Fault(VarId v, int64_t i, bool device) {
    ++result_.fault_count;
    if (result_.faults.size() < kKeptFaults) {
      result_.faults.push_back(
          {ast_.decls[v].name, i, device, loops_.empty() ? minilang::kTopAnchor : loops_.back()});
    }
  }

  const std::set<LoopId>& offloaded_;
  minilang::Memory device_;
  std::vector<std::vector<char>> host_valid_;
  std::vector<std::vector<char>> device_valid_;
  const Stmt* current_ = nullptr;
  std::set<VarId> private_;
  bool on_device_ = false;
  std::vector<LoopId> loops_;
  ShadowResult result_;
};

}  // namespace

ShadowResult RunShadow(const Ast& annotated, const OffloadPattern& pattern,
                       const minilang::InputBinding& input, int64_t step_budget) {
  ValidatePattern(annotated, pattern);
  std::set<LoopId> offloaded = pattern.Offloaded();
  ShadowMachine m(annotated, minilang::InitialMemory(annotated, input), offloaded, step_budget);
  return m.Execute();
}

}  // namespace envadapt::transfer

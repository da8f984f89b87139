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

#ifndef ENVADAPT_MINILANG_LIBRARY_H_
#define ENVADAPT_MINILANG_LIBRARY_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace envadapt::minilang {

// Built-in functional blocks reachable through `call name(args)`. These stand
// in for the library routines an application would link against (FFT, dense
// matrix multiply, database access paths).
enum class ParamKind { kArrayIn, kArrayOut, kArrayInOut, kScalar };

struct BlockSignature {
  std::string_view name;
  std::vector<ParamKind> params;
};

const BlockSignature* FindBlock(std::string_view name);

// Arguments as seen by a block implementation: arrays by reference, scalars
// by value (in parameter order, arrays and scalars interleaved).
struct BlockArgs {
  std::vector<std::span<double>> arrays;
  std::vector<double> scalars;
};

// Executes the block in place and returns the operation count charged to
// it. Throws envadapt::Error on argument violations.
int64_t RunBlock(std::string_view name, BlockArgs& args);

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_LIBRARY_H_

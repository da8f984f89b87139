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


#ifndef ENVADAPT_TESTS_SUPPORT_TEST_SUPPORT_H_
#define ENVADAPT_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "envadapt/minilang/ast.h"
#include "envadapt/minilang/interpreter.h"

namespace envadapt::testing {

std::filesystem::path DataDir();
std::filesystem::path DataPath(const std::string& relative);

minilang::Ast LoadProgram(const std::string& relative);

// Sorted .elc files directly under data/<relative>.
std::vector<std::filesystem::path> ProgramsIn(const std::string& relative);

// Arrays only: float elements uniform in [-10, 10], int elements in [0, 4).
// Scalars keep their declared initializers since the corpus uses them as
// sizes and accumulators.
minilang::InputBinding FuzzInput(const minilang::Ast& ast, std::mt19937_64& rng);

// Equality on the bit patterns, so NaN outputs compare equal to themselves.
bool SameBits(const minilang::OutputTrace& a, const minilang::OutputTrace& b);
bool SameBits(const minilang::Memory& a, const minilang::Memory& b);

std::filesystem::path ScratchDir(const std::string& name);

}  // namespace envadapt::testing

#endif  // ENVADAPT_TESTS_SUPPORT_TEST_SUPPORT_H_

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

#ifndef ENVADAPT_MINILANG_PARSER_H_
#define ENVADAPT_MINILANG_PARSER_H_

#include <string>
#include <string_view>

#include "envadapt/minilang/ast.h"

namespace envadapt::minilang {

struct SourceProgram {
  std::string name;
  std::string text;
};

// Parses ELC source. Declarations precede statements; loop variables that
// are not declared explicitly are introduced as implicit int scalars in
// order of first appearance. Throws SyntaxError or UndeclaredVariable.
Ast Parse(std::string_view source);
inline Ast Parse(const SourceProgram& program) { return Parse(program.text); }

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_PARSER_H_

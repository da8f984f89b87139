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

#ifndef ENVADAPT_MINILANG_PRINTER_H_
#define ENVADAPT_MINILANG_PRINTER_H_

#include <string>
#include <vector>

#include "envadapt/minilang/ast.h"
#include "envadapt/minilang/lexer.h"

namespace envadapt::minilang {

// Canonical ELC text. Parse(Print(ast)) == ast for every parsed Ast,
// including attached `#pragma xfer` directives and accelerator calls.
std::string Print(const Ast& ast);
std::string PrintExpr(const Ast& ast, const Expr& e);
std::string FormatNumber(double value, bool is_int);

// The token stream Print would produce for `stmts`, without directives or
// layout. Used for clone signatures.
std::vector<Token> StmtTokens(const Ast& ast, const std::vector<Stmt>& stmts);

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_PRINTER_H_

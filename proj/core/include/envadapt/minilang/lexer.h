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

#ifndef ENVADAPT_MINILANG_LEXER_H_
#define ENVADAPT_MINILANG_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "envadapt/error.h"

namespace envadapt::minilang {

enum class TokenKind {
  kIdent,
  kKeyword,
  kInt,
  kFloat,
  kPunct,   // operators and delimiters
  kPragma,  // whole "#pragma xfer ..." line, text holds the remainder
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  SourcePosition pos;
};

bool IsKeyword(std::string_view word);

// Splits ELC source into tokens. `//` comments are dropped; the only
// preprocessor-like line accepted is `#pragma xfer ...`.
std::vector<Token> Tokenize(std::string_view source);

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_LEXER_H_

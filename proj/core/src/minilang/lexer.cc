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

#include "envadapt/minilang/lexer.h"

#include <array>
#include <cctype>

namespace envadapt::minilang {

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {
    "int", "float", "for", "while", "if", "else", "call", "output", "accel",
    "size"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

bool IsKeyword(std::string_view word) {
  for (std::string_view k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> Tokenize(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePosition pos{line, col};
    if (c == '#') {
      size_t end = src.find('\n', i);
      if (end == std::string_view::npos) end = src.size();
      std::string_view text = src.substr(i, end - i);
      constexpr std::string_view kPrefix = "#pragma xfer";
      if (text.substr(0, kPrefix.size()) != kPrefix) {
        throw SyntaxError(pos, "'#pragma xfer'", std::string(text));
      }
      std::string rest(text.substr(kPrefix.size()));
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) {
        rest.pop_back();
      }
      size_t first = rest.find_first_not_of(" \t");
      rest = first == std::string::npos ? std::string() : rest.substr(first);
      out.push_back({TokenKind::kPragma, rest, pos});
      advance(end - i);
      continue;
    }
    if (IsIdentStart(c)) {
      size_t j = i;
      while (j < src.size() && IsIdentChar(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      TokenKind kind = IsKeyword(word) ? TokenKind::kKeyword : TokenKind::kIdent;
      out.push_back({kind, word, pos});
      advance(j - i);
      continue;
    }
    if (IsDigit(c) || (c == '.' && i + 1 < src.size() && IsDigit(src[i + 1]))) {
      size_t j = i;
      bool is_float = false;
      while (j < src.size() && IsDigit(src[j])) ++j;
      if (j < src.size() && src[j] == '.') {
        is_float = true;
        ++j;
        while (j < src.size() && IsDigit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && IsDigit(src[k])) {
          is_float = true;
          j = k;
          while (j < src.size() && IsDigit(src[j])) ++j;
        }
      }
      out.push_back({is_float ? TokenKind::kFloat : TokenKind::kInt,
                     std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    static constexpr std::array<std::string_view, 4> kTwoChar = {"<=", ">=", "==", "!="};
    bool matched = false;
    if (i + 1 < src.size()) {
      std::string_view two = src.substr(i, 2);
      for (std::string_view op : kTwoChar) {
        if (op == two) {
          out.push_back({TokenKind::kPunct, std::string(two), pos});
          advance(2);
          matched = true;
          break;
        }
      }
    }
    if (matched) continue;
    static constexpr std::string_view kSingle = "+-*/%<>=()[]{};,";
    if (kSingle.find(c) != std::string_view::npos) {
      out.push_back({TokenKind::kPunct, std::string(1, c), pos});
      advance(1);
      continue;
    }
    throw SyntaxError(pos, "token", std::string(1, c));
  }
  out.push_back({TokenKind::kEnd, "", {line, col}});
  return out;
}

}  // namespace envadapt::minilang

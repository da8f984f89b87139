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

#include "envadapt/minilang/parser.h"

#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "envadapt/minilang/lexer.h"
#include "envadapt/minilang/library.h"

namespace envadapt::minilang {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Ast Run() {
    while (Peek().kind == TokenKind::kKeyword &&
           (Peek().text == "int" || Peek().text == "float")) {
      ParseDecl();
    }
    while (Peek().kind == TokenKind::kPragma &&
           Peek().text.rfind("program", 0) == 0) {
      Token t = Next();
      ast_.program_directives.push_back(
          ParsePragma(t, t.text.substr(std::string("program").size())));
    }
    while (Peek().kind != TokenKind::kEnd) {
      ast_.stmts.push_back(ParseStmt());
    }
    NumberLoops(ast_);
    return std::move(ast_);
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[k];
  }
  Token Next() {
    Token t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool IsPunct(std::string_view p) const {
    return Peek().kind == TokenKind::kPunct && Peek().text == p;
  }
  bool IsKeyword(std::string_view k) const {
    return Peek().kind == TokenKind::kKeyword && Peek().text == k;
  }
  static std::string Describe(const Token& t) {
    return t.kind == TokenKind::kEnd ? std::string("end of input")
                                     : "'" + t.text + "'";
  }
  [[noreturn]] void Fail(const std::string& expected) const {
    throw SyntaxError(Peek().pos, expected, Describe(Peek()));
  }
  Token Expect(std::string_view punct) {
    if (!IsPunct(punct)) Fail("'" + std::string(punct) + "'");
    return Next();
  }
  Token ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(kw)) Fail("'" + std::string(kw) + "'");
    return Next();
  }
  Token ExpectIdent() {
    if (Peek().kind != TokenKind::kIdent) Fail("identifier");
    return Next();
  }

  VarId Resolve(const Token& name) const {
    auto id = ast_.Lookup(name.text);
    if (!id) throw UndeclaredVariable(name.text, name.pos);
    return *id;
  }
  const VarDecl& Decl(VarId id) const { return ast_.decls[id]; }

  static double ParseNumber(const Token& t) {
    if (t.kind == TokenKind::kInt) {
      long long v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc()) throw SyntaxError(t.pos, "integer literal", t.text);
      return static_cast<double>(v);
    }
    return std::stod(t.text);
  }

  void ParseDecl() {
    Token type = Next();
    Token name = ExpectIdent();
    if (ast_.Lookup(name.text)) {
      throw SyntaxError(name.pos, "new variable name", "redeclared '" + name.text + "'");
    }
    VarDecl d;
    d.name = name.text;
    d.kind = type.text == "int" ? ValueKind::kInt : ValueKind::kFloat;
    d.pos = name.pos;
    if (IsPunct("[")) {
      Next();
      if (Peek().kind != TokenKind::kInt) Fail("array length");
      Token len = Next();
      int64_t n = static_cast<int64_t>(ParseNumber(len));
      if (n <= 0) throw SyntaxError(len.pos, "positive array length", len.text);
      d.length = n;
      Expect("]");
    } else if (IsPunct("=")) {
      Next();
      bool neg = false;
      if (IsPunct("-")) {
        Next();
        neg = true;
      }
      if (Peek().kind != TokenKind::kInt && Peek().kind != TokenKind::kFloat) {
        Fail("numeric initializer");
      }
      double v = ParseNumber(Next());
      if (d.kind == ValueKind::kInt) v = static_cast<double>(static_cast<int64_t>(v));
      d.init = neg ? -v : v;
    }
    Expect(";");
    ast_.decls.push_back(std::move(d));
  }

  TransferDirective ParsePragma(const Token& t, std::string text) {
    // text: "copyin(v)" / "copyout(v)", possibly with surrounding blanks.
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    text = trim(text);
    TransferDirective d;
    std::string rest;
    if (text.rfind("copyin", 0) == 0) {
      d.kind = TransferKind::kCopyIn;
      rest = text.substr(6);
    } else if (text.rfind("copyout", 0) == 0) {
      d.kind = TransferKind::kCopyOut;
      rest = text.substr(7);
    } else {
      throw SyntaxError(t.pos, "copyin(...) or copyout(...)", text);
    }
    rest = trim(rest);
    if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') {
      throw SyntaxError(t.pos, "'(variable)'", rest);
    }
    d.var = trim(rest.substr(1, rest.size() - 2));
    if (!ast_.Lookup(d.var)) throw UndeclaredVariable(d.var, t.pos);
    d.anchor = kTopAnchor;
    return d;
  }

  std::vector<Stmt> ParseBlock() {
    Expect("{");
    std::vector<Stmt> out;
    while (!IsPunct("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail("'}'");
      out.push_back(ParseStmt());
    }
    Next();
    return out;
  }

  Stmt ParseStmt() {
    std::vector<TransferDirective> pragmas;
    while (Peek().kind == TokenKind::kPragma) {
      Token t = Next();
      pragmas.push_back(ParsePragma(t, t.text));
    }
    Stmt s;
    if (!pragmas.empty() && !IsKeyword("for") && !IsKeyword("while")) {
      Fail("loop after '#pragma xfer'");
    }
    s.pos = Peek().pos;
    if (IsKeyword("for")) {
      s = ParseFor();
    } else if (IsKeyword("while")) {
      Next();
      s.kind = Stmt::Kind::kWhile;
      Expect("(");
      s.exprs.push_back(ParseExpr());
      Expect(")");
      s.body = ParseBlock();
    } else if (IsKeyword("if")) {
      Next();
      s.kind = Stmt::Kind::kIf;
      Expect("(");
      s.exprs.push_back(ParseExpr());
      Expect(")");
      s.body = ParseBlock();
      if (IsKeyword("else")) {
        Next();
        s.has_else = true;
        s.else_body = ParseBlock();
      }
    } else if (IsKeyword("call")) {
      Next();
      s = ParseCall();
    } else if (IsKeyword("output")) {
      Next();
      s.kind = Stmt::Kind::kOutput;
      s.exprs.push_back(ParseExpr());
      Expect(";");
    } else if (IsKeyword("accel")) {
      Next();
      s.kind = Stmt::Kind::kAccel;
      s.name = ExpectIdent().text;
      ExpectKeyword("size");
      Expect("(");
      if (Peek().kind != TokenKind::kInt) Fail("integer size");
      s.size = static_cast<int64_t>(ParseNumber(Next()));
      Expect(")");
      s.body = ParseBlock();
    } else if (Peek().kind == TokenKind::kIdent) {
      s = ParseAssign();
      Expect(";");
    } else {
      Fail("statement");
    }
    s.directives = std::move(pragmas);
    return s;
  }

  Stmt ParseAssign() {
    Stmt s;
    s.kind = Stmt::Kind::kAssign;
    Token name = ExpectIdent();
    s.pos = name.pos;
    s.var = Resolve(name);
    if (IsPunct("[")) {
      if (!Decl(s.var).is_array()) {
        throw SyntaxError(name.pos, "array", "scalar '" + name.text + "' indexed");
      }
      Next();
      s.exprs.push_back(ParseExpr());
      Expect("]");
    } else if (Decl(s.var).is_array()) {
      throw SyntaxError(name.pos, "'['", "array '" + name.text + "' assigned without index");
    }
    Expect("=");
    s.exprs.push_back(ParseExpr());
    return s;
  }

  Stmt ParseFor() {
    Stmt s;
    s.kind = Stmt::Kind::kFor;
    s.pos = ExpectKeyword("for").pos;
    Expect("(");
    Token var = ExpectIdent();
    auto existing = ast_.Lookup(var.text);
    if (!existing) {
      VarDecl d;
      d.name = var.text;
      d.kind = ValueKind::kInt;
      d.implicit = true;
      d.pos = var.pos;
      ast_.decls.push_back(d);
      existing = static_cast<VarId>(ast_.decls.size() - 1);
    } else if (Decl(*existing).is_array()) {
      throw SyntaxError(var.pos, "scalar loop variable", "array '" + var.text + "'");
    }
    s.var = *existing;
    Expect("=");
    s.exprs.push_back(ParseExpr());
    Expect(";");
    ExpectSameVar(var.text);
    Expect("<");
    s.exprs.push_back(ParseExpr());
    Expect(";");
    ExpectSameVar(var.text);
    Expect("=");
    ExpectSameVar(var.text);
    Expect("+");
    s.exprs.push_back(ParseExpr());
    Expect(")");
    s.body = ParseBlock();
    return s;
  }

  void ExpectSameVar(const std::string& name) {
    if (Peek().kind != TokenKind::kIdent || Peek().text != name) {
      Fail("loop variable '" + name + "'");
    }
    Next();
  }

  Stmt ParseCall() {
    Stmt s;
    s.kind = Stmt::Kind::kCall;
    Token name = ExpectIdent();
    s.pos = name.pos;
    s.name = name.text;
    const BlockSignature* sig = FindBlock(name.text);
    if (sig == nullptr) {
      throw SyntaxError(name.pos, "known functional block", "'" + name.text + "'");
    }
    Expect("(");
    for (size_t k = 0; k < sig->params.size(); ++k) {
      if (k > 0) Expect(",");
      if (sig->params[k] == ParamKind::kScalar) {
        s.exprs.push_back(ParseExpr());
        continue;
      }
      Token arg = ExpectIdent();
      Expr e;
      e.kind = Expr::Kind::kVar;
      e.pos = arg.pos;
      e.var = Resolve(arg);
      if (!Decl(e.var).is_array()) {
        throw SyntaxError(arg.pos, "array argument", "scalar '" + arg.text + "'");
      }
      e.is_int = Decl(e.var).kind == ValueKind::kInt;
      s.exprs.push_back(std::move(e));
    }
    Expect(")");
    Expect(";");
    return s;
  }

  // Expressions --------------------------------------------------------------

  static bool CmpOp(const std::string& t, BinaryOp* op) {
    static const std::pair<const char*, BinaryOp> kOps[] = {
        {"<", BinaryOp::kLt}, {"<=", BinaryOp::kLe}, {">", BinaryOp::kGt},
        {">=", BinaryOp::kGe}, {"==", BinaryOp::kEq}, {"!=", BinaryOp::kNe}};
    for (auto& [text, o] : kOps) {
      if (t == text) {
        *op = o;
        return true;
      }
    }
    return false;
  }

  static Expr Binary(BinaryOp op, Expr lhs, Expr rhs, SourcePosition pos) {
    Expr e;
    e.kind = Expr::Kind::kBinary;
    e.op = op;
    e.pos = pos;
    switch (op) {
      case BinaryOp::kLt: case BinaryOp::kLe: case BinaryOp::kGt:
      case BinaryOp::kGe: case BinaryOp::kEq: case BinaryOp::kNe:
        e.is_int = true;
        break;
      default:
        e.is_int = lhs.is_int && rhs.is_int;
    }
    if (op == BinaryOp::kMod && !e.is_int) {
      throw SyntaxError(pos, "integer operands for '%'", "float operand");
    }
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr ParseExpr() {
    Expr lhs = ParseAdditive();
    BinaryOp op;
    while (Peek().kind == TokenKind::kPunct && CmpOp(Peek().text, &op)) {
      SourcePosition pos = Next().pos;
      lhs = Binary(op, std::move(lhs), ParseAdditive(), pos);
    }
    return lhs;
  }

  Expr ParseAdditive() {
    Expr lhs = ParseTerm();
    while (IsPunct("+") || IsPunct("-")) {
      Token t = Next();
      BinaryOp op = t.text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      lhs = Binary(op, std::move(lhs), ParseTerm(), t.pos);
    }
    return lhs;
  }

  Expr ParseTerm() {
    Expr lhs = ParseUnary();
    while (IsPunct("*") || IsPunct("/") || IsPunct("%")) {
      Token t = Next();
      BinaryOp op = t.text == "*" ? BinaryOp::kMul
                    : t.text == "/" ? BinaryOp::kDiv
                                    : BinaryOp::kMod;
      lhs = Binary(op, std::move(lhs), ParseUnary(), t.pos);
    }
    return lhs;
  }

  Expr ParseUnary() {
    if (IsPunct("-")) {
      Token t = Next();
      Expr e;
      e.kind = Expr::Kind::kNeg;
      e.pos = t.pos;
      e.args.push_back(ParseUnary());
      e.is_int = e.args[0].is_int;
      return e;
    }
    return ParsePrimary();
  }

  Expr ParsePrimary() {
    const Token& t = Peek();
    if (t.kind == TokenKind::kInt || t.kind == TokenKind::kFloat) {
      Token lit = Next();
      Expr e;
      e.kind = Expr::Kind::kNumber;
      e.number = ParseNumber(lit);
      e.is_int = lit.kind == TokenKind::kInt;
      e.pos = lit.pos;
      return e;
    }
    if (t.kind == TokenKind::kIdent) {
      Token name = Next();
      Expr e;
      e.pos = name.pos;
      e.var = Resolve(name);
      const VarDecl& d = Decl(e.var);
      e.is_int = d.kind == ValueKind::kInt;
      if (IsPunct("[")) {
        if (!d.is_array()) {
          throw SyntaxError(name.pos, "array", "scalar '" + name.text + "' indexed");
        }
        Next();
        e.kind = Expr::Kind::kIndex;
        e.args.push_back(ParseExpr());
        Expect("]");
      } else if (d.is_array()) {
        throw SyntaxError(name.pos, "'['", "array '" + name.text + "' used without index");
      } else {
        e.kind = Expr::Kind::kVar;
      }
      return e;
    }
    if (IsPunct("(")) {
      Next();
      Expr e = ParseExpr();
      Expect(")");
      return e;
    }
    Fail("expression");
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  Ast ast_;
};

}  // namespace

Ast Parse(std::string_view source) { return Parser(Tokenize(source)).Run(); }

}  // namespace envadapt::minilang

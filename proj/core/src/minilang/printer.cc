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

#include "envadapt/minilang/printer.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace envadapt::minilang {

namespace {

int Precedence(const Expr& e) {
  if (e.kind != Expr::Kind::kBinary) return e.kind == Expr::Kind::kNeg ? 4 : 5;
  switch (e.op) {
    case BinaryOp::kAdd: case BinaryOp::kSub: return 2;
    case BinaryOp::kMul: case BinaryOp::kDiv: case BinaryOp::kMod: return 3;
    default: return 1;
  }
}

// Emits expression tokens; the printer and the clone signature share this so
// the two can never disagree on parenthesization.
void EmitExpr(const Ast& ast, const Expr& e, std::vector<Token>& out) {
  auto punct = [&](const char* p) { out.push_back({TokenKind::kPunct, p, {}}); };
  switch (e.kind) {
    case Expr::Kind::kNumber:
      out.push_back({e.is_int ? TokenKind::kInt : TokenKind::kFloat,
                     FormatNumber(e.number, e.is_int), {}});
      return;
    case Expr::Kind::kVar:
      out.push_back({TokenKind::kIdent, ast.decls[e.var].name, {}});
      return;
    case Expr::Kind::kIndex:
      out.push_back({TokenKind::kIdent, ast.decls[e.var].name, {}});
      punct("[");
      EmitExpr(ast, e.args[0], out);
      punct("]");
      return;
    case Expr::Kind::kNeg: {
      punct("-");
      bool paren = Precedence(e.args[0]) < 4;
      if (paren) punct("(");
      EmitExpr(ast, e.args[0], out);
      if (paren) punct(")");
      return;
    }
    case Expr::Kind::kBinary: {
      int p = Precedence(e);
      bool lp = Precedence(e.args[0]) < p;
      bool rp = Precedence(e.args[1]) <= p;
      if (lp) punct("(");
      EmitExpr(ast, e.args[0], out);
      if (lp) punct(")");
      out.push_back({TokenKind::kPunct, BinaryOpText(e.op), {}});
      if (rp) punct("(");
      EmitExpr(ast, e.args[1], out);
      if (rp) punct(")");
      return;
    }
  }
}

std::string Join(const std::vector<Token>& toks) {
  std::string s;
  for (size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    bool tight_before = t.text == "]" || t.text == ")" || t.text == "[" ||
                        (i > 0 && (toks[i - 1].text == "(" || toks[i - 1].text == "["));
    // Unary minus hugs its operand.
    bool after_unary = i > 0 && toks[i - 1].text == "-" &&
                       (i == 1 || toks[i - 2].kind == TokenKind::kPunct) &&
                       !(i >= 2 && (toks[i - 2].text == ")" || toks[i - 2].text == "]"));
    if (i > 0 && !tight_before && !after_unary) s += ' ';
    s += t.text;
  }
  return s;
}

void EmitStmts(const Ast& ast, const std::vector<Stmt>& stmts, std::vector<Token>& out);

void EmitStmt(const Ast& ast, const Stmt& s, std::vector<Token>& out) {
  auto punct = [&](const char* p) { out.push_back({TokenKind::kPunct, p, {}}); };
  auto kw = [&](const char* k) { out.push_back({TokenKind::kKeyword, k, {}}); };
  auto ident = [&](const std::string& n) { out.push_back({TokenKind::kIdent, n, {}}); };
  auto block = [&](const std::vector<Stmt>& body) {
    punct("{");
    EmitStmts(ast, body, out);
    punct("}");
  };
  switch (s.kind) {
    case Stmt::Kind::kAssign:
      ident(ast.decls[s.var].name);
      if (s.exprs.size() == 2) {
        punct("[");
        EmitExpr(ast, s.exprs[0], out);
        punct("]");
      }
      punct("=");
      EmitExpr(ast, s.exprs.back(), out);
      punct(";");
      return;
    case Stmt::Kind::kFor: {
      const std::string& v = ast.decls[s.var].name;
      kw("for");
      punct("(");
      ident(v);
      punct("=");
      EmitExpr(ast, s.exprs[0], out);
      punct(";");
      ident(v);
      punct("<");
      EmitExpr(ast, s.exprs[1], out);
      punct(";");
      ident(v);
      punct("=");
      ident(v);
      punct("+");
      EmitExpr(ast, s.exprs[2], out);
      punct(")");
      block(s.body);
      return;
    }
    case Stmt::Kind::kWhile:
      kw("while");
      punct("(");
      EmitExpr(ast, s.exprs[0], out);
      punct(")");
      block(s.body);
      return;
    case Stmt::Kind::kIf:
      kw("if");
      punct("(");
      EmitExpr(ast, s.exprs[0], out);
      punct(")");
      block(s.body);
      if (s.has_else) {
        kw("else");
        block(s.else_body);
      }
      return;
    case Stmt::Kind::kCall:
      kw("call");
      ident(s.name);
      punct("(");
      for (size_t i = 0; i < s.exprs.size(); ++i) {
        if (i > 0) punct(",");
        EmitExpr(ast, s.exprs[i], out);
      }
      punct(")");
      punct(";");
      return;
    case Stmt::Kind::kOutput:
      kw("output");
      EmitExpr(ast, s.exprs[0], out);
      punct(";");
      return;
    case Stmt::Kind::kAccel:
      kw("accel");
      ident(s.name);
      kw("size");
      punct("(");
      out.push_back({TokenKind::kInt, std::to_string(s.size), {}});
      punct(")");
      block(s.body);
      return;
  }
}

void EmitStmts(const Ast& ast, const std::vector<Stmt>& stmts, std::vector<Token>& out) {
  for (const Stmt& s : stmts) EmitStmt(ast, s, out);
}

std::string DirectiveText(const TransferDirective& d) {
  return std::string(d.kind == TransferKind::kCopyIn ? "copyin(" : "copyout(") +
         d.var + ")";
}

class Writer {
 public:
  explicit Writer(const Ast& ast) : ast_(ast) {}

  std::string Run() {
    for (const VarDecl& d : ast_.decls) {
      if (d.implicit) continue;
      out_ += d.kind == ValueKind::kInt ? "int " : "float ";
      out_ += d.name;
      if (d.length) out_ += "[" + std::to_string(*d.length) + "]";
      if (d.init) out_ += " = " + FormatNumber(*d.init, d.kind == ValueKind::kInt);
      out_ += ";\n";
    }
    for (const TransferDirective& d : ast_.program_directives) {
      out_ += "#pragma xfer program " + DirectiveText(d) + "\n";
    }
    Stmts(ast_.stmts, 0);
    return out_;
  }

 private:
  void Line(int depth, const std::string& text) {
    out_.append(static_cast<size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }
  std::string E(const Expr& e) { return PrintExpr(ast_, e); }

  void Block(const std::vector<Stmt>& body, int depth) { Stmts(body, depth + 1); }

  void Stmts(const std::vector<Stmt>& stmts, int depth) {
    for (const Stmt& s : stmts) Statement(s, depth);
  }

  void Statement(const Stmt& s, int depth) {
    for (const TransferDirective& d : s.directives) {
      Line(depth, "#pragma xfer " + DirectiveText(d));
    }
    switch (s.kind) {
      case Stmt::Kind::kAssign: {
        std::string lhs = ast_.decls[s.var].name;
        if (s.exprs.size() == 2) lhs += "[" + E(s.exprs[0]) + "]";
        Line(depth, lhs + " = " + E(s.exprs.back()) + ";");
        return;
      }
      case Stmt::Kind::kFor: {
        const std::string& v = ast_.decls[s.var].name;
        Line(depth, "for (" + v + " = " + E(s.exprs[0]) + "; " + v + " < " +
                        E(s.exprs[1]) + "; " + v + " = " + v + " + " +
                        E(s.exprs[2]) + ") {");
        Block(s.body, depth);
        Line(depth, "}");
        return;
      }
      case Stmt::Kind::kWhile:
        Line(depth, "while (" + E(s.exprs[0]) + ") {");
        Block(s.body, depth);
        Line(depth, "}");
        return;
      case Stmt::Kind::kIf:
        Line(depth, "if (" + E(s.exprs[0]) + ") {");
        Block(s.body, depth);
        if (s.has_else) {
          Line(depth, "} else {");
          Block(s.else_body, depth);
        }
        Line(depth, "}");
        return;
      case Stmt::Kind::kCall: {
        std::string args;
        for (size_t i = 0; i < s.exprs.size(); ++i) {
          if (i > 0) args += ", ";
          args += E(s.exprs[i]);
        }
        Line(depth, "call " + s.name + "(" + args + ");");
        return;
      }
      case Stmt::Kind::kOutput:
        Line(depth, "output " + E(s.exprs[0]) + ";");
        return;
      case Stmt::Kind::kAccel:
        Line(depth, "accel " + s.name + " size(" + std::to_string(s.size) + ") {");
        Block(s.body, depth);
        Line(depth, "}");
        return;
    }
  }

  const Ast& ast_;
  std::string out_;
};

}  // namespace

std::string FormatNumber(double value, bool is_int) {
  if (is_int) return std::to_string(static_cast<long long>(value));
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, end);
  if (std::isfinite(value) && s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string PrintExpr(const Ast& ast, const Expr& e) {
  std::vector<Token> toks;
  EmitExpr(ast, e, toks);
  return Join(toks);
}

std::vector<Token> StmtTokens(const Ast& ast, const std::vector<Stmt>& stmts) {
  std::vector<Token> out;
  EmitStmts(ast, stmts, out);
  return out;
}

std::string Print(const Ast& ast) { return Writer(ast).Run(); }

}  // namespace envadapt::minilang

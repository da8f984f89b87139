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

#include "envadapt/patterndb.h"

#include <algorithm>
#include <functional>
#include <set>

#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/io.h"
#include "envadapt/minilang/parser.h"
#include "envadapt/minilang/printer.h"
#include "json_util.h"

namespace envadapt::patterndb {

using minilang::Ast;
using minilang::Stmt;
using minilang::Token;
using minilang::TokenKind;
using internal::json;

PatternDb::PatternDb(std::vector<PatternRecord> records) : records_(std::move(records)) {
  std::set<std::string> kernels;
  for (PatternRecord& r : records_) {
    if (r.name.empty()) throw SchemaError("name", "must be non-empty");
    if (r.kernel_id.empty()) throw SchemaError("kernel_id", "must be non-empty");
    if (!(r.min_similarity > 0 && r.min_similarity <= 1)) {
      throw SchemaError("min_similarity", "must be in (0, 1]");
    }
    if (!(r.cost.fixed >= 0)) throw SchemaError("fixed_cost", "must be >= 0");
    if (!(r.cost.per_element >= 0)) throw SchemaError("per_element_cost", "must be >= 0");
    if (!kernels.insert(r.kernel_id).second) {
      throw Error(ErrorCode::kDuplicateKernel, "duplicate kernel_id " + r.kernel_id);
    }
    Ast ref;
    try {
      ref = minilang::Parse(r.reference_source);
    } catch (const Error& e) {
      throw SchemaError("reference_source", std::string(r.name) + ": " + e.what());
    }
    r.signature = TokenSignature(ref, ref.stmts);
  }
}

const PatternRecord* PatternDb::FindKernel(std::string_view kernel_id) const {
  for (const PatternRecord& r : records_) {
    if (r.kernel_id == kernel_id) return &r;
  }
  return nullptr;
}

PatternDb ParseDb(std::string_view json_text) {
  json doc = internal::ParseJson(std::string(json_text), "patterns");
  const json* list = &doc;
  if (doc.is_object()) list = &internal::Field(doc, "patterns");
  if (!list->is_array()) throw SchemaError("patterns", "must be an array of records");
  std::vector<PatternRecord> records;
  for (const json& j : *list) {
    PatternRecord r;
    r.name = internal::String(j, "name");
    r.reference_source = internal::String(j, "reference_source");
    r.kernel_id = internal::String(j, "kernel_id");
    r.cost.fixed = internal::Number(j, "fixed_cost");
    r.cost.per_element = internal::Number(j, "per_element_cost");
    r.min_similarity = internal::Number(j, "min_similarity", kDefaultMinSimilarity);
    records.push_back(std::move(r));
  }
  return PatternDb(std::move(records));
}

PatternDb LoadDb(const std::filesystem::path& path) {
  return ParseDb(minilang::ReadFile(path));
}

std::string DumpDb(const PatternDb& db) {
  json list = json::array();
  for (const PatternRecord& r : db.records()) {
    list.push_back({{"name", r.name},
                    {"reference_source", r.reference_source},
                    {"kernel_id", r.kernel_id},
                    {"fixed_cost", r.cost.fixed},
                    {"per_element_cost", r.cost.per_element},
                    {"min_similarity", r.min_similarity}});
  }
  return json{{"patterns", list}}.dump(2);
}

std::vector<std::string> TokenSignature(const Ast& ast, const std::vector<Stmt>& region) {
  std::vector<std::string> sig;
  for (const Token& t : minilang::StmtTokens(ast, region)) {
    switch (t.kind) {
      case TokenKind::kIdent: sig.emplace_back("ID"); break;
      case TokenKind::kInt:
      case TokenKind::kFloat: sig.emplace_back("NUM"); break;
      default:
        if (t.text != ";") sig.push_back(t.text);
    }
  }
  return sig;
}

size_t LcsLength(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0);
  std::vector<size_t> cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double Similarity(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return static_cast<double>(LcsLength(a, b)) / static_cast<double>(longest);
}

namespace {

struct Region {
  StmtPath path;
  const Stmt* stmt;
};

void Candidates(const std::vector<Stmt>& stmts, StmtPath& path, bool in_loop,
                const PatternDb& db, std::vector<Region>& out) {
  for (size_t i = 0; i < stmts.size(); ++i) {
    const Stmt& s = stmts[i];
    path.push_back(i);
    if (s.is_loop() && !in_loop) out.push_back({path, &s});
    if (s.kind == Stmt::Kind::kCall) {
      for (const PatternRecord& r : db.records()) {
        if (r.name == s.name) {
          out.push_back({path, &s});
          break;
        }
      }
    }
    if (s.kind != Stmt::Kind::kAccel) {
      Candidates(s.body, path, in_loop || s.is_loop(), db, out);
      path.back() += kElseOffset;
      Candidates(s.else_body, path, in_loop || s.is_loop(), db, out);
    }
    path.pop_back();
  }
}

bool Overlaps(const StmtPath& a, const StmtPath& b) {
  size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<ptrdiff_t>(n), b.begin());
}

uint64_t Fingerprint(const Ast& ast, const Stmt& s) {
  std::string raw;
  for (const Token& t : minilang::StmtTokens(ast, {s})) {
    raw += t.text;
    raw += ' ';
  }
  return std::hash<std::string>{}(raw);
}

int64_t LargestArray(const Ast& ast, const Stmt& s) {
  minilang::DefUse du = minilang::CollectDefUse({s});
  int64_t size = 0;
  for (const std::set<minilang::VarId>* vars : {&du.defs, &du.uses}) {
    for (minilang::VarId v : *vars) {
      if (ast.decls[v].is_array()) size = std::max(size, *ast.decls[v].length);
    }
  }
  return size;
}

std::vector<Stmt>* Container(std::vector<Stmt>& top, const StmtPath& path) {
  std::vector<Stmt>* list = &top;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    size_t idx = path[k] % kElseOffset;
    if (idx >= list->size()) return nullptr;
    Stmt& s = (*list)[idx];
    list = path[k] >= kElseOffset ? &s.else_body : &s.body;
  }
  return list;
}

}  // namespace

std::vector<BlockMatch> MatchBlocks(const Ast& ast, const PatternDb& db) {
  std::vector<Region> regions;
  StmtPath path;
  Candidates(ast.stmts, path, false, db, regions);

  std::vector<BlockMatch> found;
  for (size_t order = 0; order < regions.size(); ++order) {
    const Region& region = regions[order];
    std::vector<std::string> sig;
    if (region.stmt->kind != Stmt::Kind::kCall) sig = TokenSignature(ast, {*region.stmt});
    const PatternRecord* best = nullptr;
    double best_sim = -1;
    for (const PatternRecord& r : db.records()) {
      double sim = region.stmt->kind == Stmt::Kind::kCall
                       ? (r.name == region.stmt->name ? 1.0 : 0.0)
                       : Similarity(sig, r.signature);
      if (sim >= r.min_similarity && sim > best_sim) {
        best = &r;
        best_sim = sim;
      }
    }
    if (best == nullptr) continue;
    found.push_back({*best, region.path, best_sim, LargestArray(ast, *region.stmt),
                     Fingerprint(ast, *region.stmt)});
  }
  // Candidates are generated in source order, so a stable sort keeps source
  // order among equal similarities.
  std::stable_sort(found.begin(), found.end(), [](const BlockMatch& a, const BlockMatch& b) {
    return a.similarity > b.similarity;
  });
  std::vector<BlockMatch> kept;
  for (BlockMatch& m : found) {
    bool clash = std::any_of(kept.begin(), kept.end(), [&](const BlockMatch& k) {
      return Overlaps(k.region, m.region);
    });
    if (!clash) kept.push_back(std::move(m));
  }
  return kept;
}

Ast Substitute(const Ast& ast, const BlockMatch& match) {
  Ast out = ast;
  auto stale = [&] {
    return Error(ErrorCode::kRegionStale, "region of match for " + match.pattern.name +
                                              " no longer present");
  };
  if (match.region.empty()) throw stale();
  std::vector<Stmt>* list = Container(out.stmts, match.region);
  size_t idx = match.region.back() % kElseOffset;
  if (list == nullptr || idx >= list->size()) throw stale();
  Stmt& target = (*list)[idx];
  if (Fingerprint(out, target) != match.fingerprint) throw stale();

  Stmt accel;
  accel.kind = Stmt::Kind::kAccel;
  accel.name = match.pattern.kernel_id;
  accel.size = match.size;
  accel.pos = target.pos;
  accel.body.push_back(std::move(target));
  target = std::move(accel);
  minilang::NumberLoops(out);
  return out;
}

Ast SubstituteAll(const Ast& ast, const std::vector<BlockMatch>& matches) {
  Ast out = ast;
  for (const BlockMatch& m : matches) out = Substitute(out, m);
  return out;
}

}  // namespace envadapt::patterndb

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

#ifndef ENVADAPT_PATTERNDB_H_
#define ENVADAPT_PATTERNDB_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "envadapt/minilang/ast.h"

namespace envadapt::patterndb {

inline constexpr double kDefaultMinSimilarity = 0.8;

struct CostFormula {
  double fixed = 0;        // seconds per invocation
  double per_element = 0;  // seconds per element
  bool operator==(const CostFormula&) const = default;
};

struct PatternRecord {
  std::string name;
  std::string reference_source;
  std::vector<std::string> signature;
  std::string kernel_id;
  CostFormula cost;
  double min_similarity = kDefaultMinSimilarity;
};

class PatternDb {
 public:
  PatternDb() = default;
  // Validates every record and computes signatures from reference_source.
  // Throws SchemaError or Error(kDuplicateKernel).
  explicit PatternDb(std::vector<PatternRecord> records);

  const std::vector<PatternRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const PatternRecord* FindKernel(std::string_view kernel_id) const;

 private:
  std::vector<PatternRecord> records_;
};

PatternDb ParseDb(std::string_view json_text);
PatternDb LoadDb(const std::filesystem::path& path);
std::string DumpDb(const PatternDb& db);

// Normalized token stream: identifiers become ID, numeric literals NUM,
// keywords and operators stay verbatim. Statement terminators are dropped.
std::vector<std::string> TokenSignature(const minilang::Ast& ast,
                                        const std::vector<minilang::Stmt>& region);

size_t LcsLength(const std::vector<std::string>& a, const std::vector<std::string>& b);
// LCS(a, b) / max(|a|, |b|); 1 for two empty sequences.
double Similarity(const std::vector<std::string>& a, const std::vector<std::string>& b);

// A statement located by its index path from the top-level list through
// nested bodies. `else` bodies are entered with an index offset of
// kElseOffset.
using StmtPath = std::vector<size_t>;
inline constexpr size_t kElseOffset = size_t{1} << 32;

struct BlockMatch {
  PatternRecord pattern;
  StmtPath region;
  double similarity = 0;
  // Declared element count of the largest array the region touches.
  int64_t size = 0;
  // Hash of the region's raw tokens at match time.
  uint64_t fingerprint = 0;
};

// Candidate regions are maximal loop nests and block calls named like a
// pattern (which score 1.0). Each region keeps its best pattern among those
// whose threshold it meets; overlapping regions are resolved greedily by
// descending similarity. Result is sorted by similarity, descending, then
// source order.
std::vector<BlockMatch> MatchBlocks(const minilang::Ast& ast, const PatternDb& db);

// Replaces the matched region by an accelerator call that retains the region
// as its reference body, then renumbers loops. Throws Error(kRegionStale)
// when the region no longer matches the fingerprint.
minilang::Ast Substitute(const minilang::Ast& ast, const BlockMatch& match);

// Applies every match in order, bottom-up so earlier paths stay valid.
minilang::Ast SubstituteAll(const minilang::Ast& ast, const std::vector<BlockMatch>& matches);

}  // namespace envadapt::patterndb

#endif  // ENVADAPT_PATTERNDB_H_

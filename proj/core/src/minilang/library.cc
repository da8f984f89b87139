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

#include "envadapt/minilang/library.h"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "envadapt/error.h"

namespace envadapt::minilang {

namespace {

using P = ParamKind;

const std::array<BlockSignature, 4>& Blocks() {
  static const std::array<BlockSignature, 4> kBlocks = {{
      {"fft", {P::kArrayInOut, P::kArrayInOut, P::kScalar}},
      {"matmul", {P::kArrayIn, P::kArrayIn, P::kArrayOut, P::kScalar}},
      {"sql_scan", {P::kArrayIn, P::kArrayIn, P::kArrayOut, P::kScalar}},
      {"kv_lookup", {P::kArrayIn, P::kArrayIn, P::kArrayOut, P::kScalar}},
  }};
  return kBlocks;
}

[[noreturn]] void BadArgs(std::string_view block, const std::string& what) {
  throw Error(ErrorCode::kInputBinding, std::string(block) + ": " + what);
}

int64_t CountArg(std::string_view block, double v) {
  if (!(v >= 0) || v != std::floor(v)) {
    BadArgs(block, "size must be a non-negative integer");
  }
  return static_cast<int64_t>(v);
}

void NeedLength(std::string_view block, std::span<double> a, int64_t n) {
  if (static_cast<int64_t>(a.size()) < n) {
    BadArgs(block, "array of length " + std::to_string(a.size()) +
                       " is shorter than " + std::to_string(n));
  }
}

int64_t Fft(BlockArgs& args) {
  std::span<double> re = args.arrays[0];
  std::span<double> im = args.arrays[1];
  int64_t n = CountArg("fft", args.scalars[0]);
  if (n > 0 && !std::has_single_bit(static_cast<uint64_t>(n))) {
    BadArgs("fft", "size must be a power of two");
  }
  NeedLength("fft", re, n);
  NeedLength("fft", im, n);
  if (n < 2) return 0;
  for (int64_t i = 1, j = 0; i < n; ++i) {
    int64_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  for (int64_t len = 2; len <= n; len <<= 1) {
    double ang = -2 * std::numbers::pi / static_cast<double>(len);
    for (int64_t i = 0; i < n; i += len) {
      for (int64_t k = 0; k < len / 2; ++k) {
        double wr = std::cos(ang * k);
        double wi = std::sin(ang * k);
        int64_t u = i + k;
        int64_t v = u + len / 2;
        double tr = re[v] * wr - im[v] * wi;
        double ti = re[v] * wi + im[v] * wr;
        re[v] = re[u] - tr;
        im[v] = im[u] - ti;
        re[u] += tr;
        im[u] += ti;
      }
    }
  }
  int64_t log2n = std::countr_zero(static_cast<uint64_t>(n));
  return 5 * n * log2n;
}

int64_t Matmul(BlockArgs& args) {
  int64_t n = CountArg("matmul", args.scalars[0]);
  for (auto& a : args.arrays) NeedLength("matmul", a, n * n);
  std::span<double> a = args.arrays[0];
  std::span<double> b = args.arrays[1];
  std::span<double> c = args.arrays[2];
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      double acc = 0;
      for (int64_t k = 0; k < n; ++k) acc += a[i * n + k] * b[k * n + j];
      c[i * n + j] = acc;
    }
  }
  return 2 * n * n * n;
}

// Counts, for each probe key, the table rows equal to it (a full scan per
// key, as an unindexed relational query would do).
int64_t SqlScan(BlockArgs& args) {
  std::span<double> table = args.arrays[0];
  std::span<double> keys = args.arrays[1];
  std::span<double> out = args.arrays[2];
  int64_t n = CountArg("sql_scan", args.scalars[0]);
  NeedLength("sql_scan", keys, n);
  NeedLength("sql_scan", out, n);
  for (int64_t j = 0; j < n; ++j) {
    int64_t hits = 0;
    for (double row : table) hits += row == keys[j];
    out[j] = static_cast<double>(hits);
  }
  return 2 * static_cast<int64_t>(table.size()) * n;
}

// Hashes each key into the table and returns the stored value. Charged as a
// hash plus a walk over a collision bucket of table.size()/16 entries.
int64_t KvLookup(BlockArgs& args) {
  std::span<double> table = args.arrays[0];
  std::span<double> keys = args.arrays[1];
  std::span<double> out = args.arrays[2];
  int64_t n = CountArg("kv_lookup", args.scalars[0]);
  NeedLength("kv_lookup", keys, n);
  NeedLength("kv_lookup", out, n);
  if (table.empty()) BadArgs("kv_lookup", "empty table");
  const auto size = static_cast<uint64_t>(table.size());
  for (int64_t j = 0; j < n; ++j) {
    auto key = static_cast<uint64_t>(static_cast<int64_t>(keys[j]));
    out[j] = table[(key * 2654435761ULL) % size];
  }
  int64_t bucket = static_cast<int64_t>(table.size()) / 16;
  return n * (8 + 3 * bucket);
}

}  // namespace

const BlockSignature* FindBlock(std::string_view name) {
  for (const BlockSignature& b : Blocks()) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

int64_t RunBlock(std::string_view name, BlockArgs& args) {
  const BlockSignature* sig = FindBlock(name);
  if (sig == nullptr) {
    throw Error(ErrorCode::kSyntax, "unknown functional block " + std::string(name));
  }
  if (name == "fft") return Fft(args);
  if (name == "matmul") return Matmul(args);
  if (name == "sql_scan") return SqlScan(args);
  return KvLookup(args);
}

}  // namespace envadapt::minilang

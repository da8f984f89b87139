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

#ifndef ENVADAPT_GASEARCH_H_
#define ENVADAPT_GASEARCH_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envadapt/minilang/analysis.h"
#include "envadapt/minilang/interpreter.h"
#include "envadapt/offload.h"
#include "envadapt/perfsim.h"

namespace envadapt::gasearch {

struct CandidateSpace {
  std::vector<minilang::LoopId> loop_map;
  size_t bits() const { return loop_map.size(); }
  // 2^n, before excluding nested combinations.
  double size() const;
};

CandidateSpace MakeCandidateSpace(const std::vector<minilang::LoopInfo>& analysis);

struct GaConfig {
  int population = 16;
  int generations = 20;
  double crossover_rate = 0.9;
  std::optional<double> mutation_rate;  // default 1/n
  int elite = 1;
  uint64_t seed = 1;
  std::optional<double> penalty;  // default 10x the all-CPU time
  int threads = 1;
};

GaConfig ParseGaConfig(std::string_view json_text);
GaConfig LoadGaConfig(const std::filesystem::path& path);
void ValidateGaConfig(const GaConfig& config);

// Thread-safe memo table over a pure fitness function (smaller is better).
class MemoFitness {
 public:
  using Raw = std::function<double(const OffloadPattern&)>;
  explicit MemoFitness(Raw raw) : raw_(std::move(raw)) {}

  double operator()(const OffloadPattern& p);
  // Same results and counters as calling operator() on each pattern in
  // order; distinct uncached patterns are evaluated on `threads` threads.
  std::vector<double> Batch(const std::vector<OffloadPattern>& patterns, int threads);
  // Evaluates without touching the table.
  double Fresh(const OffloadPattern& p) const { return raw_(p); }

  int64_t evaluations() const;
  int64_t cache_hits() const;
  // Every pattern evaluated so far with its fitness, in key order.
  std::vector<std::pair<OffloadPattern, double>> Explored() const;

 private:
  Raw raw_;
  mutable std::mutex mu_;
  std::map<std::string, std::pair<OffloadPattern, double>> table_;
  int64_t evaluations_ = 0;
  int64_t hits_ = 0;
};

struct WeightedInput {
  minilang::InputBinding input;
  double weight = 1;
};

// Simulated time of a pattern: compute_directives, insert_directives and
// simulate on every input, combined as a weighted mean. Shape-invalid
// patterns and failed simulations score the penalty.
class SimulatedFitness {
 public:
  SimulatedFitness(minilang::Ast ast, CandidateSpace space, perfsim::CostModel model,
                   std::vector<WeightedInput> inputs, perfsim::SimulateOptions options = {},
                   std::optional<double> penalty = std::nullopt);

  double operator()(const OffloadPattern& p) const;
  double baseline() const { return baseline_; }
  double penalty() const { return penalty_; }
  const CandidateSpace& space() const { return space_; }

  // Unpenalized weighted time; throws on shape errors.
  double Time(const OffloadPattern& p) const;

 private:
  minilang::Ast ast_;
  CandidateSpace space_;
  perfsim::CostModel model_;
  std::vector<WeightedInput> inputs_;
  perfsim::SimulateOptions options_;
  double baseline_ = 0;
  double penalty_ = 0;
};

struct GenerationStats {
  double best = 0;
  double mean = 0;
};

struct SearchResult {
  OffloadPattern best;
  double best_time = 0;
  std::vector<GenerationStats> history;
  int64_t evaluations = 0;
  int64_t cache_hits = 0;
};

// Generational GA. The initial population (generation 0) holds the all-zero
// individual plus uniform random ones; each later generation keeps `elite`
// best individuals and fills the rest by size-2 tournament selection,
// single-point crossover and per-bit mutation. Throws Error(kEmptySpace).
SearchResult RunGa(const CandidateSpace& space, const GaConfig& config, MemoFitness& fitness);

inline constexpr size_t kDefaultBruteForceCap = 20;

// Exhaustive minimum over all 2^n patterns; the first minimum in mask order
// wins ties. Throws Error(kSpaceTooLarge) above the cap.
std::pair<OffloadPattern, double> BruteForce(const CandidateSpace& space, MemoFitness& fitness,
                                             size_t cap = kDefaultBruteForceCap);

}  // namespace envadapt::gasearch

#endif  // ENVADAPT_GASEARCH_H_

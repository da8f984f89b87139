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

#include "envadapt/gasearch.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "envadapt/minilang/io.h"
#include "envadapt/transfer.h"
#include "json_util.h"

namespace envadapt::gasearch {

using minilang::Ast;

double CandidateSpace::size() const { return std::ldexp(1.0, static_cast<int>(bits())); }

CandidateSpace MakeCandidateSpace(const std::vector<minilang::LoopInfo>& analysis) {
  return {ParallelizableLoops(analysis)};
}

GaConfig ParseGaConfig(std::string_view json_text) {
  using namespace internal;
  json j = ParseJson(std::string(json_text), "ga");
  GaConfig c;
  c.population = static_cast<int>(Integer(j, "population", c.population));
  c.generations = static_cast<int>(Integer(j, "generations", c.generations));
  c.crossover_rate = Number(j, "crossover_rate", c.crossover_rate);
  if (j.contains("mutation_rate") && !j.at("mutation_rate").is_null()) {
    c.mutation_rate = Number(j, "mutation_rate");
  }
  c.elite = static_cast<int>(Integer(j, "elite", c.elite));
  c.seed = static_cast<uint64_t>(Integer(j, "seed", 1, 0));
  if (j.contains("penalty") && !j.at("penalty").is_null()) c.penalty = Number(j, "penalty", {}, 0.0);
  c.threads = static_cast<int>(Integer(j, "threads", 1, 1));
  ValidateGaConfig(c);
  return c;
}

GaConfig LoadGaConfig(const std::filesystem::path& path) {
  return ParseGaConfig(minilang::ReadFile(path));
}

void ValidateGaConfig(const GaConfig& c) {
  if (c.population < 2) throw SchemaError("population", "must be >= 2");
  if (c.generations < 1) throw SchemaError("generations", "must be >= 1");
  if (c.crossover_rate < 0 || c.crossover_rate > 1) {
    throw SchemaError("crossover_rate", "must be in [0, 1]");
  }
  if (c.mutation_rate && (*c.mutation_rate < 0 || *c.mutation_rate > 1)) {
    throw SchemaError("mutation_rate", "must be in [0, 1]");
  }
  if (c.elite < 0 || c.elite >= c.population) {
    throw SchemaError("elite", "must be in [0, population)");
  }
  if (c.threads < 1) throw SchemaError("threads", "must be >= 1");
}

double MemoFitness::operator()(const OffloadPattern& p) {
  std::string key = p.Key();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) {
      ++hits_;
      return it->second.second;
    }
  }
  double v = raw_(p);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = table_.try_emplace(key, p, v);
  if (inserted) {
    ++evaluations_;
  } else {
    ++hits_;
  }
  return it->second.second;
}

std::vector<double> MemoFitness::Batch(const std::vector<OffloadPattern>& patterns,
                                       int threads) {
  if (threads <= 1) {
    std::vector<double> out;
    for (const OffloadPattern& p : patterns) out.push_back((*this)(p));
    return out;
  }
  std::vector<const OffloadPattern*> todo;
  {
    std::lock_guard<std::mutex> lock(mu_);
    std::set<std::string> seen;
    for (const OffloadPattern& p : patterns) {
      std::string key = p.Key();
      if (!table_.count(key) && seen.insert(key).second) todo.push_back(&p);
    }
  }
  std::vector<double> fresh(todo.size());
  std::vector<std::thread> workers;
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (size_t i = static_cast<size_t>(t); i < todo.size(); i += static_cast<size_t>(threads)) {
        fresh[i] = raw_(*todo[i]);
      }
    });
  }
  for (auto& w : workers) w.join();
  std::lock_guard<std::mutex> lock(mu_);
  for (size_t i = 0; i < todo.size(); ++i) table_.try_emplace(todo[i]->Key(), *todo[i], fresh[i]);
  // Replay the accounting sequentially: the first sighting of a freshly
  // computed key is the evaluation, later ones are hits.
  std::set<std::string> computed;
  for (const OffloadPattern* p : todo) computed.insert(p->Key());
  std::vector<double> out;
  for (const OffloadPattern& p : patterns) {
    std::string key = p.Key();
    if (computed.erase(key)) {
      ++evaluations_;
    } else {
      ++hits_;
    }
    out.push_back(table_.at(key).second);
  }
  return out;
}

int64_t MemoFitness::evaluations() const {
  std::lock_guard<std::mutex> lock(mu_);
  return evaluations_;
}

int64_t MemoFitness::cache_hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::vector<std::pair<OffloadPattern, double>> MemoFitness::Explored() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::pair<OffloadPattern, double>> out;
  for (const auto& [key, entry] : table_) out.push_back(entry);
  return out;
}

SimulatedFitness::SimulatedFitness(Ast ast, CandidateSpace space, perfsim::CostModel model,
                                   std::vector<WeightedInput> inputs,
                                   perfsim::SimulateOptions options, std::optional<double> penalty)
    : ast_(std::move(ast)),
      space_(std::move(space)),
      model_(std::move(model)),
      inputs_(std::move(inputs)),
      options_(std::move(options)) {
  if (inputs_.empty()) inputs_.push_back({});
  baseline_ = Time(OffloadPattern::None(space_.loop_map));
  penalty_ = penalty.value_or(10 * baseline_);
}

double SimulatedFitness::Time(const OffloadPattern& p) const {
  Ast annotated = transfer::InsertDirectives(ast_, transfer::ComputeDirectives(ast_, p));
  double sum = 0;
  double weights = 0;
  for (const WeightedInput& in : inputs_) {
    sum += in.weight * perfsim::Simulate(annotated, p, model_, in.input, options_).total;
    weights += in.weight;
  }
  return weights > 0 ? sum / weights : 0;
}

double SimulatedFitness::operator()(const OffloadPattern& p) const {
  try {
    return Time(p);
  } catch (const Error&) {
    return penalty_;
  }
}

namespace {

struct Individual {
  OffloadPattern pattern;
  double fitness = 0;
};

void EvaluateAll(std::vector<Individual>& pop, MemoFitness& fitness, int threads) {
  std::vector<OffloadPattern> patterns;
  for (const Individual& ind : pop) patterns.push_back(ind.pattern);
  std::vector<double> values = fitness.Batch(patterns, threads);
  for (size_t i = 0; i < pop.size(); ++i) pop[i].fitness = values[i];
}

}  // namespace

SearchResult RunGa(const CandidateSpace& space, const GaConfig& config, MemoFitness& fitness) {
  ValidateGaConfig(config);
  const size_t n = space.bits();
  if (n == 0) throw Error(ErrorCode::kEmptySpace, "no parallelizable loops to search");
  const double mutation = config.mutation_rate.value_or(1.0 / static_cast<double>(n));
  const auto pop_size = static_cast<size_t>(config.population);
  const int64_t evals_before = fitness.evaluations();
  const int64_t hits_before = fitness.cache_hits();

  std::mt19937_64 rng(config.seed);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution do_cross(config.crossover_rate);
  std::bernoulli_distribution do_flip(mutation);
  std::uniform_int_distribution<size_t> pick(0, pop_size - 1);
  std::uniform_int_distribution<size_t> cut(1, n > 1 ? n - 1 : 1);

  std::vector<Individual> pop;
  pop.push_back({OffloadPattern::None(space.loop_map), 0});
  while (pop.size() < pop_size) {
    OffloadPattern p = OffloadPattern::None(space.loop_map);
    for (size_t i = 0; i < n; ++i) p.bits[i] = coin(rng);
    pop.push_back({std::move(p), 0});
  }

  SearchResult result;
  result.best_time = HUGE_VAL;
  auto record = [&] {
    EvaluateAll(pop, fitness, config.threads);
    double gen_best = HUGE_VAL;
    double sum = 0;
    for (const Individual& ind : pop) {
      sum += ind.fitness;
      gen_best = std::min(gen_best, ind.fitness);
      if (ind.fitness < result.best_time) {
        result.best_time = ind.fitness;
        result.best = ind.pattern;
      }
    }
    result.history.push_back({gen_best, sum / static_cast<double>(pop.size())});
  };
  auto tournament = [&]() -> const Individual& {
    const Individual& a = pop[pick(rng)];
    const Individual& b = pop[pick(rng)];
    return b.fitness < a.fitness ? b : a;
  };

  record();
  for (int gen = 1; gen < config.generations; ++gen) {
    std::vector<size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return pop[a].fitness < pop[b].fitness; });
    std::vector<Individual> next;
    for (int e = 0; e < config.elite; ++e) next.push_back(pop[order[static_cast<size_t>(e)]]);
    while (next.size() < pop_size) {
      OffloadPattern a = tournament().pattern;
      OffloadPattern b = tournament().pattern;
      if (n > 1 && do_cross(rng)) {
        size_t c = cut(rng);
        for (size_t i = c; i < n; ++i) {
          bool t = a.bits[i];
          a.bits[i] = b.bits[i];
          b.bits[i] = t;
        }
      }
      for (OffloadPattern* child : {&a, &b}) {
        for (size_t i = 0; i < n; ++i) {
          if (do_flip(rng)) child->bits[i] = !child->bits[i];
        }
        if (next.size() < pop_size) next.push_back({std::move(*child), 0});
      }
    }
    pop = std::move(next);
    record();
  }
  result.evaluations = fitness.evaluations() - evals_before;
  result.cache_hits = fitness.cache_hits() - hits_before;
  return result;
}

std::pair<OffloadPattern, double> BruteForce(const CandidateSpace& space, MemoFitness& fitness,
                                             size_t cap) {
  const size_t n = space.bits();
  if (n > cap || n >= 63) {
    throw Error(ErrorCode::kSpaceTooLarge, "brute force over " + std::to_string(n) +
                                               " bits exceeds cap " + std::to_string(cap));
  }
  OffloadPattern best = OffloadPattern::None(space.loop_map);
  double best_time = fitness(best);
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    OffloadPattern p = OffloadPattern::FromMask(space.loop_map, mask);
    double t = fitness(p);
    if (t < best_time) {
      best_time = t;
      best = std::move(p);
    }
  }
  return {best, best_time};
}

}  // namespace envadapt::gasearch

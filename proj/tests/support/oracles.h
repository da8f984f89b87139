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


#ifndef ENVADAPT_TESTS_SUPPORT_ORACLES_H_
#define ENVADAPT_TESTS_SUPPORT_ORACLES_H_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "envadapt/placement.h"
#include "envadapt/resource.h"

// Brute-force references shared by the unit and acceptance tests. They use
// only the data types of the modules under test, never their algorithms.
namespace envadapt::testing {

namespace placement_oracle {

using namespace envadapt::placement;

struct OracleResult {
  Assignment assign;
  double latency = 0;
  double cost = 0;
};

// Every assignment, every simple path; ties go to lower latency (MaxPerf
// only), then cost, then node ids in component order.
std::optional<OracleResult> OracleSolve(const Topology& t, const AppModel& app, SolveMode mode);

struct Instance {
  Topology topo;
  AppModel app;
};

// At most 6 nodes and 3 components, sometimes with a device source and a pin.
Instance RandomInstance(std::mt19937_64& rng);

}  // namespace placement_oracle

namespace resource_oracle {

double AmdahlTime(double time, double serial_frac, int units);

// Best |log(cpu/device)| over every unit pair within the caps, each reduced
// by its gcd first: with serial fractions a pair and its multiples differ,
// and the ratio is defined over reduced pairs only.
double BestReducedScore(double cpu, double dev, const resource::ScalingModel& m);

// Latency of k copies of (c, g), or nullopt past the caps.
std::optional<double> LatencyAt(int c, int g, int k, const resource::ScalingModel& m,
                                const resource::BaseTimes& base);

}  // namespace resource_oracle

namespace similarity_oracle {

// Textbook memoized LCS, kept separate from the library's DP.
size_t OracleLcs(const std::vector<std::string>& a, const std::vector<std::string>& b);
double OracleSimilarity(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace similarity_oracle

}  // namespace envadapt::testing

#endif  // ENVADAPT_TESTS_SUPPORT_ORACLES_H_

// Copyright 2026 The mecoff Authors
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


// Seeded instance generation and the two parameter sweeps.
//
// Randomness comes from SplitMix64 (Steele, Lea and Flood's 64-bit mixer,
// constants below). Every task draws from its own sub-stream, so an
// instance does not depend on how many other tasks were drawn before it.

#ifndef MECOFF_EXPERIMENT_HPP_
#define MECOFF_EXPERIMENT_HPP_

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mecoff/ibba.hpp"
#include "mecoff/model.hpp"
#include "mecoff/nominal.hpp"
#include "mecoff/policies.hpp"

namespace mecoff {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, n) by rejection, n > 0.
  std::uint64_t Below(std::uint64_t n);
  // Uniform integer on [lo, hi] inclusive.
  int UniformInt(int lo, int hi);

 private:
  std::uint64_t state_;
};

// Seed of the sub-stream reached from `seed` by following `path`.
std::uint64_t SubSeed(std::uint64_t seed,
                      std::initializer_list<std::uint64_t> path);

struct ScenarioConfig {
  std::uint64_t seed = 1;
  int num_tasks = 10;
  int num_nodes = 4;
  NominalParameters nominal;

  // Base complexity draw, cycles/byte, inclusive.
  int alpha_low = 200;
  int alpha_high = 500;
  // Scenario 1: point k shifts every task's complexity by k * alpha_step.
  int alpha_step = 100;
  int num_points = 9;
  double deadline_s = 40.0;

  // Scenario 2: fixed shift of the base draw, then a deadline sweep.
  int scenario2_shift = 600;
  std::vector<double> scenario2_deadlines = {30.0, 40.0, 50.0, 60.0};
  int max_retries = 16;

  IbbaParams ibba;
  // Sweep points run concurrently on this many threads; output does not
  // depend on it.
  int threads = 1;
  // Writes 0 in the runtime column so output is byte-reproducible.
  bool zero_runtime = false;
};

// Per-task human-unit draws shared by every point of a sweep.
struct BaseDraw {
  std::vector<double> input_mb;
  std::vector<double> output_mb;
  std::vector<int> alpha;  // cycles/byte
};

BaseDraw DrawBase(const ScenarioConfig& config, std::uint64_t attempt = 0);

Instance MakeInstance(const ScenarioConfig& config, const BaseDraw& base,
                      int alpha_shift, double deadline_s);

// Scenario 1 instance at sweep point k.
Instance GenerateInstance(const ScenarioConfig& config, int sweep_point);

class NoCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModifiedBase {
  BaseDraw base;
  int task = -1;
  int factor = 1;
  std::uint64_t attempt = 0;
};

// Scales both data sizes of the first task whose complexity is below its
// break-even value by the smallest integer factor >= 2 that makes its local
// delay exceed `min_local_delay_s`. Complexity, and so the break-even
// comparison, is unchanged. Throws NoCandidate when every task benefits.
ModifiedBase Scenario2Modify(const ScenarioConfig& config, BaseDraw base,
                             double min_local_delay_s);

// Scenario 2 base with the modification applied, retrying fresh draws on
// NoCandidate up to config.max_retries times.
ModifiedBase Scenario2Base(const ScenarioConfig& config);

// Instances for oracle cross-checks: nominal data sizes, complexity in
// [200, 1300] cycles/byte, deadlines in [20, 60] s and node capacities
// drawn below nominal so that nodes actually contend.
Instance RandomSmallInstance(std::uint64_t seed, int num_tasks, int num_nodes);

struct SweepRow {
  double sweep = 0.0;
  std::string policy;
  int offloaded = 0;
  double avg_energy_j = 0.0;
  double avg_delay_s = 0.0;
  int feasible = 0;  // tasks meeting their deadline
  double runtime_ms = 0.0;
  std::int64_t nodes = 0;
  std::string status;
};

struct SweepPoint {
  double sweep = 0.0;
  Instance instance;
  std::vector<PolicyResult> results;  // wop, aop, rop, ibba
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<SweepRow> rows;
  // Scenario 2 only.
  int modified_task = -1;
};

// Runs wop, aop, rop and ibba on one instance. Exceptions become a
// "error" status row.
SweepPoint RunPoint(const Instance& instance, double sweep,
                    const ScenarioConfig& config, std::vector<SweepRow>& rows);

SweepResult RunScenario1(const ScenarioConfig& config);
SweepResult RunScenario2(const ScenarioConfig& config);

inline constexpr char kCsvHeader[] =
    "sweep,policy,offloaded,avg_energy_j,avg_delay_s,feasible,runtime_ms,"
    "nodes,status";

void WriteCsv(std::ostream& out, const std::vector<SweepRow>& rows);
void WriteCsvFile(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace mecoff

#endif  // MECOFF_EXPERIMENT_HPP_

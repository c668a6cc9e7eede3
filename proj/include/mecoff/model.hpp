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

#ifndef MECOFF_MODEL_HPP_
#define MECOFF_MODEL_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mecoff {

// Canonical internal units: bits, bits/s, cycles, cycles/s, joules, seconds.
// Instance files and reports use megabytes (10^6 bytes), megabits/s,
// gigacycles and J/Mbit; these helpers are the only place the factors live.
namespace units {

inline constexpr double kBitsPerByte = 8.0;
inline constexpr double kBitsPerMegabyte = 8.0e6;
inline constexpr double kBitsPerMegabit = 1.0e6;
inline constexpr double kCyclesPerGigacycle = 1.0e9;

constexpr double MegabytesToBits(double mb) { return mb * kBitsPerMegabyte; }
constexpr double BitsToMegabytes(double bits) { return bits / kBitsPerMegabyte; }
constexpr double MegabitsToBits(double mbit) { return mbit * kBitsPerMegabit; }
constexpr double BitsToMegabits(double bits) { return bits / kBitsPerMegabit; }
constexpr double GigacyclesToCycles(double gc) { return gc * kCyclesPerGigacycle; }
constexpr double CyclesToGigacycles(double c) { return c / kCyclesPerGigacycle; }
// J/Mbit -> J/bit.
constexpr double JoulesPerMegabitToPerBit(double e) { return e / kBitsPerMegabit; }
constexpr double JoulesPerBitToPerMegabit(double e) { return e * kBitsPerMegabit; }
// J/Gcycle -> J/cycle.
constexpr double JoulesPerGigacycleToPerCycle(double v) {
  return v / kCyclesPerGigacycle;
}
constexpr double JoulesPerCycleToPerGigacycle(double v) {
  return v * kCyclesPerGigacycle;
}
constexpr double CyclesPerBitToCyclesPerByte(double a) { return a * kBitsPerByte; }
constexpr double CyclesPerByteToCyclesPerBit(double a) { return a / kBitsPerByte; }

}  // namespace units

// One user's computation job. All fields are in canonical units.
struct Task {
  int id = 0;
  double input_bits = 0.0;
  double output_bits = 0.0;
  double cycles = 0.0;
  double deadline_s = 0.0;
  double local_rate = 0.0;        // cycles/s
  double energy_per_cycle = 0.0;  // J/cycle
  double tx_energy_per_bit = 0.0;
  double rx_energy_per_bit = 0.0;
};

struct EdgeNode {
  int id = 0;
  double uplink_cap = 0.0;    // bits/s
  double downlink_cap = 0.0;  // bits/s
  double cpu_cap = 0.0;       // cycles/s
};

// Cloud rates are per task and uncapacitated.
struct CloudConfig {
  double fog_cloud_rate = 0.0;  // bits/s
  double cloud_cpu_rate = 0.0;  // cycles/s
};

struct Instance {
  std::vector<Task> tasks;
  std::vector<EdgeNode> nodes;
  CloudConfig cloud;

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  // 2M+1 placement options per task.
  int num_options() const { return 2 * num_nodes() + 1; }
};

enum class Placement { kLocal, kEdge, kCloudVia };

// Where one task runs. `node` is -1 for kLocal.
struct Option {
  Placement placement = Placement::kLocal;
  int node = -1;

  static constexpr Option Local() { return {Placement::kLocal, -1}; }
  static constexpr Option Edge(int j) { return {Placement::kEdge, j}; }
  static constexpr Option CloudVia(int j) { return {Placement::kCloudVia, j}; }

  bool offloaded() const { return placement != Placement::kLocal; }
  friend bool operator==(const Option&, const Option&) = default;
};

// Dense option index: Local = 0, Edge(j) = 1 + j, CloudVia(j) = 1 + M + j.
// This is also the lexicographic order used for deterministic tie-breaks.
int OptionIndex(const Option& option, int num_nodes);
Option OptionFromIndex(int index, int num_nodes);
std::string ToString(const Option& option);

using Decision = std::vector<Option>;

struct RateTriple {
  double up_rate = 0.0;    // bits/s
  double down_rate = 0.0;  // bits/s
  double cpu_rate = 0.0;   // cycles/s, zero on the cloud path
};

// Per-task rates; the serving node comes from the Decision. Local tasks
// carry no entry.
struct Allocation {
  std::vector<std::optional<RateTriple>> per_task;

  static Allocation Empty(int num_tasks) {
    Allocation a;
    a.per_task.resize(num_tasks);
    return a;
  }
};

struct Cost {
  double energy_j = 0.0;
  double delay_s = 0.0;
};

struct TotalCost {
  double energy_j = 0.0;
  std::vector<double> delays_s;
};

class ZeroRateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingAllocationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Cost LocalCost(const Task& task);
Cost EdgeCost(const Task& task, const RateTriple& rates);
Cost CloudCost(const Task& task, double up_rate, double down_rate,
               const CloudConfig& cloud);

// Energy of any offloaded placement: e^u D^i + e^d D^o. Independent of the
// node, the path and the rates.
double OffloadEnergy(const Task& task);
double PlacementEnergy(const Task& task, const Option& option);

// Delay of `option` under `rates`; rates are ignored for kLocal.
double PlacementDelay(const Task& task, const Option& option,
                      const RateTriple& rates, const CloudConfig& cloud);

// Pure accounting: no deadline or capacity judgment.
TotalCost ComputeTotalCost(const Instance& instance, const Decision& decision,
                           const Allocation& allocation);

// Break-even complexity in cycles per bit of input: offloading saves energy
// iff cycles / input_bits > AlphaStar(task).
double AlphaStar(const Task& task);

// Every violated invariant, in a stable order; empty means valid.
std::vector<std::string> Validate(const Instance& instance);

}  // namespace mecoff

#endif  // MECOFF_MODEL_HPP_

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

#ifndef MECOFF_TESTS_TEST_UTIL_HPP_
#define MECOFF_TESTS_TEST_UTIL_HPP_

#include <vector>

#include "mecoff/model.hpp"
#include "mecoff/nominal.hpp"

namespace mecoff::testing {

inline Task NominalTask(int id, double input_mb, double output_mb,
                        double cycles_g, double deadline_s = 40.0) {
  const NominalParameters p;
  Task t;
  t.id = id;
  t.input_bits = units::MegabytesToBits(input_mb);
  t.output_bits = units::MegabytesToBits(output_mb);
  t.cycles = units::GigacyclesToCycles(cycles_g);
  t.deadline_s = deadline_s;
  t.local_rate = units::GigacyclesToCycles(p.local_rate_gcps);
  t.energy_per_cycle = units::JoulesPerGigacycleToPerCycle(p.energy_j_per_gcycle);
  t.tx_energy_per_bit = units::JoulesPerMegabitToPerBit(p.tx_energy_j_per_mbit);
  t.rx_energy_per_bit = units::JoulesPerMegabitToPerBit(p.rx_energy_j_per_mbit);
  return t;
}

inline EdgeNode NominalNode(int id, double scale = 1.0) {
  const NominalParameters p;
  EdgeNode n;
  n.id = id;
  n.uplink_cap = scale * units::MegabitsToBits(p.node_uplink_mbps);
  n.downlink_cap = scale * units::MegabitsToBits(p.node_downlink_mbps);
  n.cpu_cap = scale * units::GigacyclesToCycles(p.node_cpu_gcps);
  return n;
}

inline CloudConfig NominalCloud() {
  const NominalParameters p;
  return {units::MegabitsToBits(p.fog_cloud_mbps),
          units::GigacyclesToCycles(p.cloud_cpu_gcps)};
}

inline Instance MakeInstance(std::vector<Task> tasks, int num_nodes,
                             double node_scale = 1.0) {
  Instance inst;
  inst.tasks = std::move(tasks);
  for (int j = 0; j < num_nodes; ++j) inst.nodes.push_back(NominalNode(j, node_scale));
  inst.cloud = NominalCloud();
  return inst;
}

}  // namespace mecoff::testing

#endif  // MECOFF_TESTS_TEST_UTIL_HPP_

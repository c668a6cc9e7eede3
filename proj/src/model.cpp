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

#include "mecoff/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mecoff {

int OptionIndex(const Option& option, int num_nodes) {
  switch (option.placement) {
    case Placement::kLocal:
      return 0;
    case Placement::kEdge:
      return 1 + option.node;
    case Placement::kCloudVia:
      return 1 + num_nodes + option.node;
  }
  return -1;
}

Option OptionFromIndex(int index, int num_nodes) {
  if (index < 0 || index > 2 * num_nodes) {
    throw std::out_of_range("option index " + std::to_string(index));
  }
  if (index == 0) return Option::Local();
  if (index <= num_nodes) return Option::Edge(index - 1);
  return Option::CloudVia(index - 1 - num_nodes);
}

std::string ToString(const Option& option) {
  switch (option.placement) {
    case Placement::kLocal:
      return "local";
    case Placement::kEdge:
      return "edge:" + std::to_string(option.node);
    case Placement::kCloudVia:
      return "cloud:" + std::to_string(option.node);
  }
  return "?";
}

Cost LocalCost(const Task& task) {
  return {task.energy_per_cycle * task.cycles, task.cycles / task.local_rate};
}

double OffloadEnergy(const Task& task) {
  return task.tx_energy_per_bit * task.input_bits +
         task.rx_energy_per_bit * task.output_bits;
}

Cost EdgeCost(const Task& task, const RateTriple& rates) {
  if (!(rates.up_rate > 0.0) || !(rates.down_rate > 0.0) ||
      !(rates.cpu_rate > 0.0)) {
    throw ZeroRateError("edge placement of task " + std::to_string(task.id) +
                        " needs positive up/down/cpu rates");
  }
  const double delay = task.input_bits / rates.up_rate +
                       task.output_bits / rates.down_rate +
                       task.cycles / rates.cpu_rate;
  return {OffloadEnergy(task), delay};
}

Cost CloudCost(const Task& task, double up_rate, double down_rate,
               const CloudConfig& cloud) {
  if (!(up_rate > 0.0) || !(down_rate > 0.0)) {
    throw ZeroRateError("cloud placement of task " + std::to_string(task.id) +
                        " needs positive up/down rates");
  }
  const double delay =
      task.input_bits / up_rate + task.output_bits / down_rate +
      (task.input_bits + task.output_bits) / cloud.fog_cloud_rate +
      task.cycles / cloud.cloud_cpu_rate;
  return {OffloadEnergy(task), delay};
}

double PlacementEnergy(const Task& task, const Option& option) {
  return option.offloaded() ? OffloadEnergy(task) : LocalCost(task).energy_j;
}

double PlacementDelay(const Task& task, const Option& option,
                      const RateTriple& rates, const CloudConfig& cloud) {
  switch (option.placement) {
    case Placement::kLocal:
      return LocalCost(task).delay_s;
    case Placement::kEdge:
      return EdgeCost(task, rates).delay_s;
    case Placement::kCloudVia:
      return CloudCost(task, rates.up_rate, rates.down_rate, cloud).delay_s;
  }
  return 0.0;
}

TotalCost ComputeTotalCost(const Instance& instance, const Decision& decision,
                           const Allocation& allocation) {
  if (static_cast<int>(decision.size()) != instance.num_tasks()) {
    throw std::invalid_argument("decision size does not match task count");
  }
  TotalCost total;
  total.delays_s.resize(decision.size());
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& task = instance.tasks[i];
    const Option& option = decision[i];
    Cost cost;
    if (!option.offloaded()) {
      cost = LocalCost(task);
    } else {
      if (i >= static_cast<int>(allocation.per_task.size()) ||
          !allocation.per_task[i].has_value()) {
        throw MissingAllocationError("offloaded task " + std::to_string(i) +
                                     " has no rate allocation");
      }
      const RateTriple& rates = *allocation.per_task[i];
      cost = option.placement == Placement::kEdge
                 ? EdgeCost(task, rates)
                 : CloudCost(task, rates.up_rate, rates.down_rate,
                             instance.cloud);
    }
    total.energy_j += cost.energy_j;
    total.delays_s[i] = cost.delay_s;
  }
  return total;
}

double AlphaStar(const Task& task) {
  return OffloadEnergy(task) / (task.energy_per_cycle * task.input_bits);
}

std::vector<std::string> Validate(const Instance& instance) {
  std::vector<std::string> out;
  auto positive = [&](double v, const std::string& what) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back("nonpositive " + what);
  };
  if (instance.tasks.empty()) out.emplace_back("empty task set");
  if (instance.nodes.empty()) out.emplace_back("empty node set");
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& t = instance.tasks[i];
    const std::string where = " (task " + std::to_string(i) + ")";
    if (t.id != i) out.push_back("non-dense task id" + where);
    positive(t.input_bits, "input size" + where);
    if (!(t.output_bits >= 0.0) || !std::isfinite(t.output_bits)) {
      out.push_back("negative output size" + where);
    }
    positive(t.cycles, "cycle demand" + where);
    positive(t.deadline_s, "deadline" + where);
    positive(t.local_rate, "local rate" + where);
    positive(t.energy_per_cycle, "energy per cycle" + where);
    positive(t.tx_energy_per_bit, "transmit energy" + where);
    positive(t.rx_energy_per_bit, "receive energy" + where);
  }
  for (int j = 0; j < instance.num_nodes(); ++j) {
    const EdgeNode& n = instance.nodes[j];
    const std::string where = " (node " + std::to_string(j) + ")";
    if (n.id != j) out.push_back("non-dense node id" + where);
    positive(n.uplink_cap, "uplink capacity" + where);
    positive(n.downlink_cap, "downlink capacity" + where);
    positive(n.cpu_cap, "cpu capacity" + where);
  }
  positive(instance.cloud.fog_cloud_rate, "fog-cloud rate");
  positive(instance.cloud.cloud_cpu_rate, "cloud cpu rate");
  return out;
}

}  // namespace mecoff

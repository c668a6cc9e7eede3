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


#include "mecoff/allocation.hpp"

#include <algorithm>
#include <limits>

namespace mecoff {

using convex::RatioTerm;
using convex::Row;
using convex::VarKind;

std::string ToString(AllocationStatus status) {
  switch (status) {
    case AllocationStatus::kFeasible:
      return "feasible";
    case AllocationStatus::kInfeasible:
      return "infeasible";
    case AllocationStatus::kIndeterminate:
      return "indeterminate";
  }
  return "?";
}

AllocationStatus CombineStatus(AllocationStatus a, AllocationStatus b) {
  auto rank = [](AllocationStatus s) {
    switch (s) {
      case AllocationStatus::kFeasible:
        return 0;
      case AllocationStatus::kInfeasible:
        return 1;
      case AllocationStatus::kIndeterminate:
        return 2;
    }
    return 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

NodeAllocation AllocateNode(const Instance& instance, const Decision& decision,
                            int node, const convex::SolverParams& params) {
  constexpr double kRateFloor = 1e-9;
  const EdgeNode& cap = instance.nodes[node];
  NodeAllocation out;
  out.margin_s = -std::numeric_limits<double>::infinity();

  std::vector<int> served;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (decision[i].offloaded() && decision[i].node == node) served.push_back(i);
  }
  if (served.empty()) return out;

  convex::Program prog;
  Row up_row, down_row, cpu_row;
  struct Vars {
    int up = -1, down = -1, cpu = -1;
  };
  std::vector<Vars> vars(served.size());
  for (std::size_t a = 0; a < served.size(); ++a) {
    const bool edge = decision[served[a]].placement == Placement::kEdge;
    vars[a].up = prog.AddVariable(VarKind::kBounded, kRateFloor, 0.0);
    up_row.linear.push_back({vars[a].up, 1.0});
    vars[a].down = prog.AddVariable(VarKind::kBounded, kRateFloor, 0.0);
    down_row.linear.push_back({vars[a].down, 1.0});
    if (edge) {
      vars[a].cpu = prog.AddVariable(VarKind::kBounded, kRateFloor, 0.0);
      cpu_row.linear.push_back({vars[a].cpu, 1.0});
    }
  }
  for (Row* row : {&up_row, &down_row, &cpu_row}) {
    const double share = 1.0 / static_cast<double>(row->linear.size() + 1);
    for (const auto& term : row->linear) prog.start[term.var] = share;
    row->constant = -1.0;
    row->relaxable = false;
  }
  const int s = prog.AddVariable(VarKind::kFree, 0.0, 0.0, 1.0);

  // Delay rows normalized by the deadline: delay/T - 1 - s <= 0.
  double start_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < served.size(); ++a) {
    const Task& task = instance.tasks[served[a]];
    const double inv_t = 1.0 / task.deadline_s;
    Row row;
    row.constant = -1.0;
    if (decision[served[a]].placement == Placement::kCloudVia) {
      row.constant += ((task.input_bits + task.output_bits) /
                           instance.cloud.fog_cloud_rate +
                       task.cycles / instance.cloud.cloud_cpu_rate) *
                      inv_t;
    }
    auto ratio = [&](int var, double amount, double capacity) {
      if (var >= 0 && amount > 0.0) {
        row.ratio.push_back(
            {RatioTerm::kConstantOne, var, amount / capacity * inv_t});
      }
    };
    ratio(vars[a].up, task.input_bits, cap.uplink_cap);
    ratio(vars[a].down, task.output_bits, cap.downlink_cap);
    ratio(vars[a].cpu, task.cycles, cap.cpu_cap);
    row.linear.push_back({s, -1.0});
    start_margin = std::max(start_margin, convex::EvaluateRow(row, prog.start));
    prog.rows.push_back(std::move(row));
  }
  prog.start[s] = start_margin + 1.0;
  prog.rows.push_back(std::move(up_row));
  prog.rows.push_back(std::move(down_row));
  prog.rows.push_back(std::move(cpu_row));

  const convex::Result result = convex::Minimize(prog, params);
  const std::vector<double>& z =
      result.z.size() == prog.start.size() ? result.z : prog.start;
  for (std::size_t a = 0; a < served.size(); ++a) {
    const int i = served[a];
    RateTriple r;
    r.up_rate = z[vars[a].up] * cap.uplink_cap;
    r.down_rate = z[vars[a].down] * cap.downlink_cap;
    if (vars[a].cpu >= 0) r.cpu_rate = z[vars[a].cpu] * cap.cpu_cap;
    const double delay =
        PlacementDelay(instance.tasks[i], decision[i], r, instance.cloud);
    out.margin_s = std::max(out.margin_s, delay - instance.tasks[i].deadline_s);
    out.rates.emplace_back(i, r);
  }
  // The recomputed margin certifies feasibility by itself; infeasibility
  // needs a converged max-margin solve.
  if (out.margin_s <= 0.0) {
    out.status = AllocationStatus::kFeasible;
  } else {
    out.status = result.status == convex::Status::kIterLimit
                     ? AllocationStatus::kIndeterminate
                     : AllocationStatus::kInfeasible;
  }
  return out;
}

AllocationResult AllocateRates(const Instance& instance,
                               const Decision& decision,
                               const convex::SolverParams& params) {
  if (static_cast<int>(decision.size()) != instance.num_tasks()) {
    throw std::invalid_argument("decision size does not match task count");
  }
  AllocationResult out;
  out.allocation = Allocation::Empty(instance.num_tasks());
  out.margin_s = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < instance.num_nodes(); ++j) {
    NodeAllocation node = AllocateNode(instance, decision, j, params);
    out.status = CombineStatus(out.status, node.status);
    out.margin_s = std::max(out.margin_s, node.margin_s);
    for (const auto& [task, rates] : node.rates) {
      out.allocation.per_task[task] = rates;
    }
  }
  return out;
}

AllocationResult CheckDecision(const Instance& instance,
                               const Decision& decision,
                               const convex::SolverParams& params) {
  double local_late = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (decision[i].offloaded()) continue;
    const Task& task = instance.tasks[i];
    local_late = std::max(local_late, LocalCost(task).delay_s - task.deadline_s);
  }
  if (local_late > 0.0) {
    AllocationResult out;
    out.status = AllocationStatus::kInfeasible;
    out.allocation = Allocation::Empty(instance.num_tasks());
    out.margin_s = local_late;
    return out;
  }
  AllocationResult out = AllocateRates(instance, decision, params);
  out.margin_s = std::max(out.margin_s, local_late);
  return out;
}

}  // namespace mecoff

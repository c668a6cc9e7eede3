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


// Rate allocation for a fixed binary decision. Each edge node is an
// independent max-margin program over the tasks it serves:
//
//   minimize s  subject to  delay_i(rates) / T_i - 1 <= s,  node capacities.
//
// The decision is rate-feasible iff every node reaches s* <= 0.

#ifndef MECOFF_ALLOCATION_HPP_
#define MECOFF_ALLOCATION_HPP_

#include <string>
#include <utility>
#include <vector>

#include "mecoff/barrier.hpp"
#include "mecoff/model.hpp"

namespace mecoff {

enum class AllocationStatus { kFeasible, kInfeasible, kIndeterminate };

std::string ToString(AllocationStatus status);

struct NodeAllocation {
  AllocationStatus status = AllocationStatus::kFeasible;
  // max_i (delay_i - T_i) in seconds, recomputed from the returned rates;
  // -inf for an idle node.
  double margin_s = 0.0;
  // (task, rates) for every task the node serves, in task order.
  std::vector<std::pair<int, RateTriple>> rates;
};

// Rates for the tasks `decision` places on `node` (directly or via the
// cloud). Rates are returned even when infeasible: they are the
// margin-minimizing allocation.
NodeAllocation AllocateNode(const Instance& instance, const Decision& decision,
                            int node, const convex::SolverParams& params = {});

struct AllocationResult {
  AllocationStatus status = AllocationStatus::kFeasible;
  Allocation allocation;
  // Worst node margin; -inf when nothing is offloaded.
  double margin_s = 0.0;
};

// Local tasks are ignored here; their deadlines are checked by the callers
// that need a full feasibility verdict.
AllocationResult AllocateRates(const Instance& instance,
                               const Decision& decision,
                               const convex::SolverParams& params = {});

// Full verdict for a binary decision: local deadlines plus AllocateRates.
// The margin also covers local tasks.
AllocationResult CheckDecision(const Instance& instance,
                               const Decision& decision,
                               const convex::SolverParams& params = {});

// Worst status across nodes: indeterminate beats infeasible beats feasible.
AllocationStatus CombineStatus(AllocationStatus a, AllocationStatus b);

}  // namespace mecoff

#endif  // MECOFF_ALLOCATION_HPP_

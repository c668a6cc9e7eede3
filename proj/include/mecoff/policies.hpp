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


// The four placement policies compared by the experiments (all local, all
// offloaded, relaxed, exact branch-and-bound) and an exhaustive oracle.

#ifndef MECOFF_POLICIES_HPP_
#define MECOFF_POLICIES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mecoff/allocation.hpp"
#include "mecoff/ibba.hpp"
#include "mecoff/model.hpp"
#include "mecoff/relaxation.hpp"

namespace mecoff {

struct PolicyResult {
  std::string policy;
  // "ok", "infeasible", "fallback" or "solver_failure".
  std::string status = "ok";
  // Empty for the relaxed policy, whose decisions are fractional.
  Decision decision;
  Allocation allocation;
  double total_energy_j = 0.0;
  std::vector<double> delays_s;
  std::vector<int> deadline_violations;
  bool feasible = false;
  int offloaded = 0;
  std::int64_t nodes = 0;
};

// Ids of tasks whose delay exceeds the deadline.
std::vector<int> DeadlineViolations(const Instance& instance,
                                    const std::vector<double>& delays_s);

// Per-node sums of allocated rates stay within capacity * (1 + rel_tol).
bool CapacitiesHold(const Instance& instance, const Decision& decision,
                    const Allocation& allocation, double rel_tol = 1e-9);

PolicyResult WopSolve(const Instance& instance);

// Energy-optimal all-offload placement. When none is rate-feasible, tasks
// are spread over the nodes in index order (each to the least loaded
// node, direct edge processing) with margin-minimizing rates, and the
// result is reported infeasible with status "fallback".
PolicyResult AopSolve(const Instance& instance, const IbbaParams& params = {});

// Relaxed solution. A task counts as offloaded when its local share is
// below one half; energy and delays are the relaxed values.
PolicyResult RopSolve(const Instance& instance,
                      const convex::SolverParams& params = {});

PolicyResult IbbaPolicy(const Instance& instance, const IbbaParams& params = {});

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceResult {
  bool feasible = false;
  Decision decision;
  Allocation allocation;
  double objective_j = 0.0;
  std::int64_t decisions_checked = 0;
  std::int64_t node_solves = 0;
  std::int64_t indeterminate = 0;
};

// Enumerates every decision in order of total energy, lexicographic
// option order breaking ties, and returns the first that passes
// CheckDecision. Node allocations are memoized by the set of tasks served.
BruteForceResult BruteForceSolve(const Instance& instance,
                                 std::int64_t cap = 100000,
                                 const convex::SolverParams& params = {});

PolicyResult OraclePolicy(const Instance& instance, std::int64_t cap = 100000);

}  // namespace mecoff

#endif  // MECOFF_POLICIES_HPP_

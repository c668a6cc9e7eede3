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


// Depth-first branch-and-bound over per-task placements. Node k fixes the
// placements of tasks 0..k-1; its bound comes from the convex relaxation
// with those fixings substituted.

#ifndef MECOFF_IBBA_HPP_
#define MECOFF_IBBA_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mecoff/allocation.hpp"
#include "mecoff/barrier.hpp"
#include "mecoff/model.hpp"
#include "mecoff/relaxation.hpp"

namespace mecoff {

struct BnbNode {
  // Placements of tasks 0..depth-1.
  std::vector<Option> fixed;
  double parent_bound = -std::numeric_limits<double>::infinity();

  int depth() const { return static_cast<int>(fixed.size()); }
};

enum class NodeAction {
  kBranch,
  kPruneBound,
  kPruneInfeasible,
  kIncumbent,
};

std::string ToString(NodeAction action);

struct NodeTrace {
  const BnbNode* node = nullptr;
  double bound = 0.0;
  NodeAction action = NodeAction::kBranch;
};

struct IbbaParams {
  convex::SolverParams solver;
  // A relaxed x within int_tol of 0 or 1 counts as integral.
  double int_tol = 1e-6;
  // Prune iff bound >= incumbent - gap_tol.
  double gap_tol = 1e-6;
  bool enable_bound_pruning = true;
  // false restricts every task to offloaded placements.
  bool allow_local = true;
  std::function<void(const NodeTrace&)> trace;
};

struct IbbaStats {
  std::int64_t nodes_visited = 0;
  std::int64_t relaxations_solved = 0;
  std::int64_t leaf_allocations = 0;
  std::int64_t branched = 0;
  std::int64_t pruned_bound = 0;
  std::int64_t pruned_infeasible = 0;
  std::int64_t incumbent_updates = 0;
  // Relaxations that hit the iteration limit and were branched unbounded.
  std::int64_t unbounded_nodes = 0;
  std::int64_t indeterminate_leaves = 0;
};

// Children fix task node.depth() to each option: Local, Edge(0..M-1),
// CloudVia(0..M-1). Local is skipped when allow_local is false.
std::vector<BnbNode> Branch(const BnbNode& node, const Instance& instance,
                            bool allow_local = true);

struct NodeEvaluation {
  enum class Kind { kBound, kIntegerFeasible, kInfeasible };
  Kind kind = Kind::kInfeasible;
  // Bound, or the energy of the integer-feasible solution. -inf when the
  // relaxation gave no usable bound.
  double value = 0.0;
  Decision decision;
  Allocation allocation;
  bool solved_relaxation = false;
  bool indeterminate = false;
};

Fixings NodeFixings(const BnbNode& node, const Instance& instance,
                    bool allow_local);

// Sum of fixed energies plus each free task's cheapest allowed energy. A
// valid bound that needs no solver.
double EnergyFloor(const BnbNode& node, const Instance& instance,
                   bool allow_local);

NodeEvaluation EvaluateNode(const BnbNode& node, const Instance& instance,
                            const IbbaParams& params);

enum class IbbaStatus { kOptimal, kInfeasible, kIndeterminate };

std::string ToString(IbbaStatus status);

struct IbbaResult {
  IbbaStatus status = IbbaStatus::kInfeasible;
  Decision decision;
  Allocation allocation;
  double objective_j = std::numeric_limits<double>::infinity();
  IbbaStats stats;
  // Incumbent objective after each improvement.
  std::vector<double> incumbent_history;
};

IbbaResult IbbaSolve(const Instance& instance, const IbbaParams& params = {});

}  // namespace mecoff

#endif  // MECOFF_IBBA_HPP_

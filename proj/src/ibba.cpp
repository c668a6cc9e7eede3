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


#include "mecoff/ibba.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mecoff {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

bool Allowed(int option_index, bool allow_local) {
  return allow_local || option_index != 0;
}

// Leaf or rounded-relaxation verdict for a complete decision.
NodeEvaluation EvaluateDecision(const Instance& instance, Decision decision,
                                const IbbaParams& params) {
  NodeEvaluation eval;
  const AllocationResult check = CheckDecision(instance, decision, params.solver);
  if (check.status != AllocationStatus::kFeasible) {
    eval.kind = NodeEvaluation::Kind::kInfeasible;
    eval.indeterminate = check.status == AllocationStatus::kIndeterminate;
    return eval;
  }
  eval.kind = NodeEvaluation::Kind::kIntegerFeasible;
  eval.value = ComputeTotalCost(instance, decision, check.allocation).energy_j;
  eval.decision = std::move(decision);
  eval.allocation = check.allocation;
  return eval;
}

}  // namespace

std::string ToString(NodeAction action) {
  switch (action) {
    case NodeAction::kBranch:
      return "branch";
    case NodeAction::kPruneBound:
      return "prune-bound";
    case NodeAction::kPruneInfeasible:
      return "prune-infeasible";
    case NodeAction::kIncumbent:
      return "incumbent";
  }
  return "?";
}

std::string ToString(IbbaStatus status) {
  switch (status) {
    case IbbaStatus::kOptimal:
      return "optimal";
    case IbbaStatus::kInfeasible:
      return "infeasible";
    case IbbaStatus::kIndeterminate:
      return "indeterminate";
  }
  return "?";
}

std::vector<BnbNode> Branch(const BnbNode& node, const Instance& instance,
                            bool allow_local) {
  std::vector<BnbNode> children;
  for (int o = 0; o < instance.num_options(); ++o) {
    if (!Allowed(o, allow_local)) continue;
    BnbNode child;
    child.fixed = node.fixed;
    child.fixed.push_back(OptionFromIndex(o, instance.num_nodes()));
    children.push_back(std::move(child));
  }
  return children;
}

Fixings NodeFixings(const BnbNode& node, const Instance& instance,
                    bool allow_local) {
  Fixings f = Fixings::None(instance);
  const int m = instance.num_nodes();
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (i < node.depth()) {
      f.FixTo(i, OptionIndex(node.fixed[i], m));
    } else if (!allow_local) {
      f.Forbid(i, 0);
    }
  }
  return f;
}

double EnergyFloor(const BnbNode& node, const Instance& instance,
                   bool allow_local) {
  double floor = 0.0;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& task = instance.tasks[i];
    if (i < node.depth()) {
      floor += PlacementEnergy(task, node.fixed[i]);
    } else {
      const double offload = OffloadEnergy(task);
      floor += allow_local ? std::min(offload, LocalCost(task).energy_j)
                           : offload;
    }
  }
  return floor;
}

NodeEvaluation EvaluateNode(const BnbNode& node, const Instance& instance,
                            const IbbaParams& params) {
  const int n = instance.num_tasks();
  const int m = instance.num_nodes();
  if (node.depth() == n) return EvaluateDecision(instance, node.fixed, params);

  const RelaxedProblem problem =
      BuildRelaxed(instance, NodeFixings(node, instance, params.allow_local));
  const RelaxedSolution sol = SolveRelaxed(instance, problem, params.solver);
  NodeEvaluation eval;
  eval.solved_relaxation = true;
  if (sol.status == convex::Status::kInfeasible) {
    eval.kind = NodeEvaluation::Kind::kInfeasible;
    return eval;
  }
  eval.kind = NodeEvaluation::Kind::kBound;
  if (sol.status == convex::Status::kIterLimit) {
    eval.value = kMinusInf;
    eval.indeterminate = true;
    return eval;
  }
  eval.value = sol.lower_bound_j;

  Decision rounded(n);
  for (int i = 0; i < n; ++i) {
    int chosen = -1;
    for (int o = 0; o < instance.num_options(); ++o) {
      const double x = sol.x[i][o];
      if (x >= 1.0 - params.int_tol) {
        chosen = o;
      } else if (x > params.int_tol) {
        return eval;
      }
    }
    if (chosen < 0) return eval;
    rounded[i] = OptionFromIndex(chosen, m);
  }
  NodeEvaluation leaf = EvaluateDecision(instance, std::move(rounded), params);
  if (leaf.kind == NodeEvaluation::Kind::kIntegerFeasible) {
    leaf.solved_relaxation = true;
    return leaf;
  }
  // The rounded point failed the exact rate check; keep branching.
  return eval;
}

IbbaResult IbbaSolve(const Instance& instance, const IbbaParams& params) {
  IbbaResult result;
  const int n = instance.num_tasks();
  const bool prune = params.enable_bound_pruning;
  bool saw_indeterminate = false;
  auto emit = [&](const BnbNode& node, double bound, NodeAction action) {
    if (params.trace) params.trace({&node, bound, action});
  };
  auto prunable = [&](double bound) {
    return prune && bound >= result.objective_j - params.gap_tol;
  };

  std::vector<BnbNode> stack;
  stack.emplace_back();
  while (!stack.empty()) {
    BnbNode node = std::move(stack.back());
    stack.pop_back();
    ++result.stats.nodes_visited;

    const double floor = EnergyFloor(node, instance, params.allow_local);
    const double cheap = std::max(floor, node.parent_bound);
    if (prunable(cheap)) {
      ++result.stats.pruned_bound;
      emit(node, cheap, NodeAction::kPruneBound);
      continue;
    }

    const NodeEvaluation eval = EvaluateNode(node, instance, params);
    if (eval.solved_relaxation) ++result.stats.relaxations_solved;
    if (node.depth() == n) ++result.stats.leaf_allocations;
    // An unbounded interior node is still branched, so only leaves whose
    // feasibility could not be decided leave the search inconclusive.
    if (eval.indeterminate) {
      if (eval.kind == NodeEvaluation::Kind::kInfeasible) {
        saw_indeterminate = true;
        ++result.stats.indeterminate_leaves;
      } else {
        ++result.stats.unbounded_nodes;
      }
    }

    switch (eval.kind) {
      case NodeEvaluation::Kind::kInfeasible:
        ++result.stats.pruned_infeasible;
        emit(node, eval.value, NodeAction::kPruneInfeasible);
        break;
      case NodeEvaluation::Kind::kIntegerFeasible:
        if (eval.value < result.objective_j - params.gap_tol) {
          result.objective_j = eval.value;
          result.decision = eval.decision;
          result.allocation = eval.allocation;
          result.incumbent_history.push_back(eval.value);
          ++result.stats.incumbent_updates;
          emit(node, eval.value, NodeAction::kIncumbent);
        } else {
          ++result.stats.pruned_bound;
          emit(node, eval.value, NodeAction::kPruneBound);
        }
        break;
      case NodeEvaluation::Kind::kBound: {
        const double bound = std::max(eval.value, floor);
        if (prunable(bound)) {
          ++result.stats.pruned_bound;
          emit(node, bound, NodeAction::kPruneBound);
          break;
        }
        ++result.stats.branched;
        emit(node, bound, NodeAction::kBranch);
        std::vector<BnbNode> children =
            Branch(node, instance, params.allow_local);
        for (auto it = children.rbegin(); it != children.rend(); ++it) {
          it->parent_bound = bound;
          stack.push_back(std::move(*it));
        }
        break;
      }
    }
  }

  if (!result.incumbent_history.empty()) {
    result.status = IbbaStatus::kOptimal;
  } else {
    result.status =
        saw_indeterminate ? IbbaStatus::kIndeterminate : IbbaStatus::kInfeasible;
  }
  return result;
}

}  // namespace mecoff

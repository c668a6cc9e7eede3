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


#include "mecoff/policies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace mecoff {

namespace {

void FillFromDecision(const Instance& instance, PolicyResult& r) {
  const TotalCost cost = ComputeTotalCost(instance, r.decision, r.allocation);
  r.total_energy_j = cost.energy_j;
  r.delays_s = cost.delays_s;
  r.deadline_violations = DeadlineViolations(instance, r.delays_s);
  r.offloaded = static_cast<int>(
      std::count_if(r.decision.begin(), r.decision.end(),
                    [](const Option& o) { return o.offloaded(); }));
  r.feasible = r.deadline_violations.empty() &&
               CapacitiesHold(instance, r.decision, r.allocation);
}

}  // namespace

std::vector<int> DeadlineViolations(const Instance& instance,
                                    const std::vector<double>& delays_s) {
  std::vector<int> late;
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (delays_s[i] > instance.tasks[i].deadline_s) late.push_back(i);
  }
  return late;
}

bool CapacitiesHold(const Instance& instance, const Decision& decision,
                    const Allocation& allocation, double rel_tol) {
  const int m = instance.num_nodes();
  std::vector<double> up(m, 0.0), down(m, 0.0), cpu(m, 0.0);
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (!decision[i].offloaded()) continue;
    if (!allocation.per_task[i].has_value()) return false;
    const RateTriple& r = *allocation.per_task[i];
    if (r.up_rate < 0.0 || r.down_rate < 0.0 || r.cpu_rate < 0.0) return false;
    up[decision[i].node] += r.up_rate;
    down[decision[i].node] += r.down_rate;
    cpu[decision[i].node] += r.cpu_rate;
  }
  for (int j = 0; j < m; ++j) {
    const EdgeNode& node = instance.nodes[j];
    if (up[j] > node.uplink_cap * (1.0 + rel_tol) ||
        down[j] > node.downlink_cap * (1.0 + rel_tol) ||
        cpu[j] > node.cpu_cap * (1.0 + rel_tol)) {
      return false;
    }
  }
  return true;
}

PolicyResult WopSolve(const Instance& instance) {
  PolicyResult r;
  r.policy = "wop";
  r.decision.assign(instance.num_tasks(), Option::Local());
  r.allocation = Allocation::Empty(instance.num_tasks());
  FillFromDecision(instance, r);
  return r;
}

PolicyResult IbbaPolicy(const Instance& instance, const IbbaParams& params) {
  const IbbaResult solved = IbbaSolve(instance, params);
  PolicyResult r;
  r.policy = "ibba";
  r.nodes = solved.stats.nodes_visited;
  if (solved.status != IbbaStatus::kOptimal) {
    r.status = solved.status == IbbaStatus::kInfeasible ? "infeasible"
                                                         : "solver_failure";
    return r;
  }
  r.decision = solved.decision;
  r.allocation = solved.allocation;
  FillFromDecision(instance, r);
  return r;
}

PolicyResult AopSolve(const Instance& instance, const IbbaParams& params) {
  IbbaParams restricted = params;
  restricted.allow_local = false;
  PolicyResult r = IbbaPolicy(instance, restricted);
  r.policy = "aop";
  if (r.status == "ok") return r;

  const std::int64_t nodes = r.nodes;
  r = PolicyResult{};
  r.policy = "aop";
  r.status = "fallback";
  r.nodes = nodes;
  std::vector<int> load(instance.num_nodes(), 0);
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const int j = static_cast<int>(
        std::min_element(load.begin(), load.end()) - load.begin());
    ++load[j];
    r.decision.push_back(Option::Edge(j));
  }
  r.allocation = AllocateRates(instance, r.decision, params.solver).allocation;
  FillFromDecision(instance, r);
  r.feasible = false;
  return r;
}

PolicyResult RopSolve(const Instance& instance,
                      const convex::SolverParams& params) {
  PolicyResult r;
  r.policy = "rop";
  const RelaxedProblem problem = BuildRelaxed(instance, Fixings::None(instance));
  const RelaxedSolution sol = SolveRelaxed(instance, problem, params);
  if (sol.status != convex::Status::kOptimal) {
    r.status = sol.status == convex::Status::kInfeasible ? "infeasible"
                                                         : "solver_failure";
    return r;
  }
  r.total_energy_j = sol.objective_j;
  r.delays_s = sol.delay_s;
  r.deadline_violations = DeadlineViolations(instance, r.delays_s);
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (sol.x[i][0] < 0.5) ++r.offloaded;
  }
  r.feasible = r.deadline_violations.empty();
  return r;
}

BruteForceResult BruteForceSolve(const Instance& instance, std::int64_t cap,
                                 const convex::SolverParams& params) {
  const int n = instance.num_tasks();
  const int m = instance.num_nodes();
  const int k = instance.num_options();
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > cap / k) {
      throw CapExceeded("decision space exceeds the brute-force cap of " +
                        std::to_string(cap));
    }
    total *= k;
  }

  std::vector<std::vector<double>> energy(n, std::vector<double>(k));
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < k; ++o) {
      energy[i][o] = PlacementEnergy(instance.tasks[i], OptionFromIndex(o, m));
    }
  }
  // Code digits are option indices, task 0 most significant, so numeric
  // order is lexicographic order.
  auto decode = [&](std::int64_t code) {
    Decision d(n);
    for (int i = n - 1; i >= 0; --i) {
      d[i] = OptionFromIndex(static_cast<int>(code % k), m);
      code /= k;
    }
    return d;
  };
  std::vector<double> code_energy(total);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rest % k);
      rest /= k;
    }
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += energy[i][digits[i]];
    code_energy[code] = e;
  }
  std::vector<std::int64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return code_energy[a] < code_energy[b];
                   });

  BruteForceResult out;
  std::map<std::pair<int, std::vector<int>>, NodeAllocation> memo;
  for (std::int64_t code : order) {
    ++out.decisions_checked;
    const Decision d = decode(code);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!d[i].offloaded() &&
          LocalCost(instance.tasks[i]).delay_s > instance.tasks[i].deadline_s) {
        ok = false;
      }
    }
    std::vector<const NodeAllocation*> parts;
    for (int j = 0; j < m && ok; ++j) {
      std::vector<int> key;
      for (int i = 0; i < n; ++i) {
        if (d[i].offloaded() && d[i].node == j) {
          key.push_back(2 * i + (d[i].placement == Placement::kEdge ? 0 : 1));
        }
      }
      auto [it, inserted] = memo.try_emplace({j, std::move(key)});
      if (inserted) {
        it->second = AllocateNode(instance, d, j, params);
        ++out.node_solves;
        if (it->second.status == AllocationStatus::kIndeterminate) {
          ++out.indeterminate;
        }
      }
      if (it->second.status != AllocationStatus::kFeasible) ok = false;
      parts.push_back(&it->second);
    }
    if (!ok) continue;
    out.feasible = true;
    out.decision = d;
    out.allocation = Allocation::Empty(n);
    for (const NodeAllocation* part : parts) {
      for (const auto& [task, rates] : part->rates) {
        out.allocation.per_task[task] = rates;
      }
    }
    out.objective_j = ComputeTotalCost(instance, d, out.allocation).energy_j;
    return out;
  }
  return out;
}

PolicyResult OraclePolicy(const Instance& instance, std::int64_t cap) {
  const BruteForceResult solved = BruteForceSolve(instance, cap);
  PolicyResult r;
  r.policy = "oracle";
  r.nodes = solved.decisions_checked;
  if (!solved.feasible) {
    r.status = solved.indeterminate > 0 ? "solver_failure" : "infeasible";
    return r;
  }
  r.decision = solved.decision;
  r.allocation = solved.allocation;
  FillFromDecision(instance, r);
  return r;
}

}  // namespace mecoff

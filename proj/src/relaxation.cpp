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


#include "mecoff/relaxation.hpp"

#include <string>

namespace mecoff {

using convex::LinearTerm;
using convex::RatioTerm;
using convex::Row;
using convex::VarKind;

Fixings Fixings::None(const Instance& instance) {
  Fixings f;
  f.fix.assign(instance.num_tasks(),
               std::vector<FixState>(instance.num_options(), FixState::kFree));
  return f;
}

void Fixings::FixTo(int task, int option_index) {
  for (auto& state : fix[task]) state = FixState::kZero;
  fix[task][option_index] = FixState::kOne;
}

void Fixings::Forbid(int task, int option_index) {
  fix[task][option_index] = FixState::kZero;
}

int RelaxedProblem::num_decision_vars() const {
  int count = 0;
  for (const VarInfo& v : vars) count += v.tag == VarTag::kDecision;
  return count;
}

int RelaxedProblem::num_rate_vars() const {
  return static_cast<int>(vars.size()) - num_decision_vars();
}

namespace {

// Delay of `option` that does not depend on any rate.
double FixedDelay(const Task& task, const Option& option,
                  const CloudConfig& cloud) {
  switch (option.placement) {
    case Placement::kLocal:
      return LocalCost(task).delay_s;
    case Placement::kEdge:
      return 0.0;
    case Placement::kCloudVia:
      return (task.input_bits + task.output_bits) / cloud.fog_cloud_rate +
             task.cycles / cloud.cloud_cpu_rate;
  }
  return 0.0;
}

}  // namespace

RelaxedProblem BuildRelaxed(const Instance& instance, const Fixings& fixings) {
  const int n = instance.num_tasks();
  const int m = instance.num_nodes();
  const int k = instance.num_options();
  if (static_cast<int>(fixings.fix.size()) != n) {
    throw InconsistentFixing("fixings do not cover every task");
  }

  RelaxedProblem rp;
  convex::Program& prog = rp.program;
  rp.settled_option.assign(n, -1);
  rp.x_var.assign(n, std::vector<int>(k, -1));
  rp.up_var = rp.x_var;
  rp.down_var = rp.x_var;
  rp.cpu_var = rp.x_var;
  rp.delay_row.assign(n, -1);

  std::vector<Row> uplink(m), downlink(m), cpu(m);
  auto add_var = [&](VarKind kind, double lower, double objcoef, VarInfo info) {
    rp.vars.push_back(info);
    return prog.AddVariable(kind, lower, 0.0, objcoef);
  };

  for (int i = 0; i < n; ++i) {
    const Task& task = instance.tasks[i];
    const auto& fix = fixings.fix[i];
    if (static_cast<int>(fix.size()) != k) {
      throw InconsistentFixing("fixings of task " + std::to_string(i) +
                               " do not cover every option");
    }
    std::vector<int> active;
    int ones = 0;
    for (int o = 0; o < k; ++o) {
      if (fix[o] == FixState::kOne) {
        ++ones;
        rp.settled_option[i] = o;
      }
      if (fix[o] == FixState::kFree) active.push_back(o);
    }
    if (ones > 1) {
      throw InconsistentFixing("task " + std::to_string(i) +
                               " has two options fixed to 1");
    }
    if (ones == 1) {
      active.assign(1, rp.settled_option[i]);
    } else if (active.empty()) {
      throw InconsistentFixing("every option of task " + std::to_string(i) +
                               " is fixed to 0");
    } else if (active.size() == 1) {
      rp.settled_option[i] = active.front();
    }
    const bool settled = rp.settled_option[i] >= 0;

    Row delay;
    delay.constant = -1.0;
    const double inv_t = 1.0 / task.deadline_s;
    std::vector<int> group;
    for (int o : active) {
      const Option option = OptionFromIndex(o, m);
      const double energy = PlacementEnergy(task, option);
      int x = -1;
      if (settled) {
        prog.objective_constant += energy;
      } else {
        x = add_var(VarKind::kSimplexMember, 0.0, energy,
                    {VarTag::kDecision, i, o});
        prog.start[x] = 1.0 / static_cast<double>(active.size());
        rp.x_var[i][o] = x;
        group.push_back(x);
      }
      const double fixed_delay = FixedDelay(task, option, instance.cloud) * inv_t;
      if (fixed_delay != 0.0) {
        if (settled) {
          delay.constant += fixed_delay;
        } else {
          delay.linear.push_back({x, fixed_delay});
        }
      }
      if (!option.offloaded()) continue;

      const EdgeNode& node = instance.nodes[option.node];
      auto add_rate = [&](VarTag tag, double amount, double cap, Row& capacity) {
        const int r = add_var(VarKind::kBounded, RelaxedProblem::kRateFloor,
                              0.0, {tag, i, o});
        capacity.linear.push_back({r, 1.0});
        const double coef = amount / cap * inv_t;
        if (coef > 0.0) {
          delay.ratio.push_back(
              {settled ? RatioTerm::kConstantOne : x, r, coef});
        }
        return r;
      };
      const int j = option.node;
      rp.up_var[i][o] = add_rate(VarTag::kUpRate, task.input_bits,
                                 node.uplink_cap, uplink[j]);
      rp.down_var[i][o] = add_rate(VarTag::kDownRate, task.output_bits,
                                   node.downlink_cap, downlink[j]);
      if (option.placement == Placement::kEdge) {
        rp.cpu_var[i][o] =
            add_rate(VarTag::kCpuRate, task.cycles, node.cpu_cap, cpu[j]);
      }
    }
    if (!group.empty()) prog.simplex_groups.push_back(std::move(group));
    rp.delay_row[i] = static_cast<int>(prog.rows.size());
    prog.rows.push_back(std::move(delay));
  }

  // Capacity rows: sum of normalized rates <= 1. The start splits each node
  // evenly with headroom, so these rows never need phase I.
  rp.uplink_row.assign(m, -1);
  rp.downlink_row.assign(m, -1);
  rp.cpu_row.assign(m, -1);
  for (int j = 0; j < m; ++j) {
    for (auto [rows, index] : {std::pair{&uplink, &rp.uplink_row},
                               std::pair{&downlink, &rp.downlink_row},
                               std::pair{&cpu, &rp.cpu_row}}) {
      Row& row = (*rows)[j];
      row.constant = -1.0;
      row.relaxable = false;
      const double share = 1.0 / static_cast<double>(row.linear.size() + 1);
      for (const LinearTerm& term : row.linear) prog.start[term.var] = share;
      (*index)[j] = static_cast<int>(prog.rows.size());
      prog.rows.push_back(std::move(row));
    }
  }
  return rp;
}

RelaxedSolution SolveRelaxed(const Instance& instance,
                             const RelaxedProblem& problem,
                             const convex::SolverParams& params,
                             const convex::TraceSink& trace) {
  const int n = instance.num_tasks();
  const int m = instance.num_nodes();
  const int k = instance.num_options();
  const convex::Result result = convex::Minimize(problem.program, params, trace);

  RelaxedSolution sol;
  sol.status = result.status;
  sol.newton_steps = result.newton_steps;
  sol.max_violation = result.max_violation;
  if (result.status == convex::Status::kInfeasible ||
      result.z.size() != static_cast<std::size_t>(problem.program.num_vars())) {
    return sol;
  }
  const std::vector<double>& z = result.z;
  sol.objective_j = result.objective;
  sol.duality_gap_bound = result.duality_gap_bound;
  sol.lower_bound_j = result.objective - result.duality_gap_bound;
  sol.kkt_residual = result.kkt_residual;
  sol.x.assign(n, std::vector<double>(k, 0.0));
  sol.rates.assign(n, std::vector<RateTriple>(k));
  sol.delay_s.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < k; ++o) {
      if (problem.settled_option[i] == o) {
        sol.x[i][o] = 1.0;
      } else if (problem.x_var[i][o] >= 0) {
        sol.x[i][o] = z[problem.x_var[i][o]];
      }
      if (o == 0) continue;
      const EdgeNode& node = instance.nodes[OptionFromIndex(o, m).node];
      RateTriple& r = sol.rates[i][o];
      if (problem.up_var[i][o] >= 0) {
        r.up_rate = z[problem.up_var[i][o]] * node.uplink_cap;
      }
      if (problem.down_var[i][o] >= 0) {
        r.down_rate = z[problem.down_var[i][o]] * node.downlink_cap;
      }
      if (problem.cpu_var[i][o] >= 0) {
        r.cpu_rate = z[problem.cpu_var[i][o]] * node.cpu_cap;
      }
    }
    const double g =
        convex::EvaluateRow(problem.program.rows[problem.delay_row[i]], z);
    sol.delay_s[i] = (g + 1.0) * instance.tasks[i].deadline_s;
  }
  return sol;
}

}  // namespace mecoff

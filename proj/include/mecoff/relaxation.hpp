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


// Continuous relaxation of the offloading problem. Decisions become
// x[i][o] in [0, 1] with sum_o x[i][o] = 1, and every offloaded rate is a
// free variable normalized by its node capacity. Delay terms x * D / r are
// written in perspective form x^2 * D / r, which is jointly convex in
// (x, r) and agrees with the original at binary x.

#ifndef MECOFF_RELAXATION_HPP_
#define MECOFF_RELAXATION_HPP_

#include <stdexcept>
#include <vector>

#include "mecoff/barrier.hpp"
#include "mecoff/model.hpp"

namespace mecoff {

enum class FixState { kFree, kZero, kOne };

// fix[i][o] for task i and option index o (see OptionIndex).
struct Fixings {
  std::vector<std::vector<FixState>> fix;

  static Fixings None(const Instance& instance);
  void FixTo(int task, int option_index);  // one option 1, all others 0
  void Forbid(int task, int option_index);
};

class InconsistentFixing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VarTag { kDecision, kUpRate, kDownRate, kCpuRate };

struct VarInfo {
  VarTag tag;
  int task;
  int option;  // option index
};

struct RelaxedProblem {
  // Rates are normalized by capacity and kept above this floor.
  static constexpr double kRateFloor = 1e-9;

  convex::Program program;
  std::vector<VarInfo> vars;
  // Per task: 0 or 1 when the decision is settled, -1 when still free.
  std::vector<int> settled_option;
  // Program variable of x[i][o], rho_u, rho_d, rho_f; -1 when absent.
  std::vector<std::vector<int>> x_var;
  std::vector<std::vector<int>> up_var;
  std::vector<std::vector<int>> down_var;
  std::vector<std::vector<int>> cpu_var;
  // Row index of each task's delay row and each node's capacity rows.
  std::vector<int> delay_row;
  std::vector<int> uplink_row;
  std::vector<int> downlink_row;
  std::vector<int> cpu_row;

  int num_decision_vars() const;
  int num_rate_vars() const;
  int num_simplex_rows() const {
    return static_cast<int>(program.simplex_groups.size());
  }
};

RelaxedProblem BuildRelaxed(const Instance& instance, const Fixings& fixings);

struct RelaxedSolution {
  convex::Status status = convex::Status::kIterLimit;
  double objective_j = 0.0;
  // objective_j - duality_gap_bound; a valid lower bound when optimal.
  double lower_bound_j = 0.0;
  // x[i][o]; fixed entries are reported at their fixed values.
  std::vector<std::vector<double>> x;
  // Physical rates per (task, option); zero where absent.
  std::vector<std::vector<RateTriple>> rates;
  // Perspective-form delay of each task at the returned point.
  std::vector<double> delay_s;
  double kkt_residual = 0.0;
  double duality_gap_bound = 0.0;
  // Minimized max violation of the normalized delay rows when infeasible.
  double max_violation = 0.0;
  int newton_steps = 0;
};

RelaxedSolution SolveRelaxed(const Instance& instance,
                             const RelaxedProblem& problem,
                             const convex::SolverParams& params,
                             const convex::TraceSink& trace = {});

}  // namespace mecoff

#endif  // MECOFF_RELAXATION_HPP_

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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "mecoff/experiment.hpp"
#include "mecoff/policies.hpp"
#include "mecoff/relaxation.hpp"
#include "test_util.hpp"

namespace mecoff {
namespace {

using testing::MakeInstance;
using testing::NominalTask;

Instance TenByFour() {
  std::vector<Task> tasks;
  for (int i = 0; i < 10; ++i) {
    tasks.push_back(NominalTask(i, 10 + i, 1 + i % 2, 0.8 * (10 + i)));
  }
  return MakeInstance(std::move(tasks), 4);
}

TEST(BuildRelaxedTest, CountsWithoutFixings) {
  const Instance inst = TenByFour();
  const RelaxedProblem rp = BuildRelaxed(inst, Fixings::None(inst));
  EXPECT_EQ(rp.num_decision_vars(), 90);
  // Per task: 4 edge options with 3 rates, 4 cloud options with 2.
  EXPECT_EQ(rp.num_rate_vars(), 10 * (4 * 3 + 4 * 2));
  EXPECT_EQ(rp.program.num_vars(), 290);
  EXPECT_EQ(rp.num_simplex_rows(), 10);
  EXPECT_EQ(rp.program.rows.size(), 10u + 12u);
  for (int r : rp.uplink_row) EXPECT_FALSE(rp.program.rows[r].relaxable);
}

TEST(BuildRelaxedTest, AllLocalFixedIsConstant) {
  const Instance inst = TenByFour();
  Fixings f = Fixings::None(inst);
  double energy = 0.0;
  for (int i = 0; i < inst.num_tasks(); ++i) {
    f.FixTo(i, 0);
    energy += inst.tasks[i].energy_per_cycle * inst.tasks[i].cycles;
  }
  const RelaxedProblem rp = BuildRelaxed(inst, f);
  EXPECT_EQ(rp.program.num_vars(), 0);
  EXPECT_NEAR(rp.program.objective_constant, energy, 1e-12);
  for (int i = 0; i < inst.num_tasks(); ++i) {
    const convex::Row& row = rp.program.rows[rp.delay_row[i]];
    EXPECT_TRUE(row.IsConstant());
    EXPECT_NEAR((row.constant + 1.0) * inst.tasks[i].deadline_s,
                inst.tasks[i].cycles / inst.tasks[i].local_rate, 1e-9);
  }
  const RelaxedSolution sol = SolveRelaxed(inst, rp, {});
  EXPECT_EQ(sol.status, convex::Status::kOptimal);
  EXPECT_NEAR(sol.objective_j, energy, 1e-12);
}

TEST(BuildRelaxedTest, FixedTaskDropsDecisionVariables) {
  const Instance inst = TenByFour();
  Fixings f = Fixings::None(inst);
  f.FixTo(0, OptionIndex(Option::Edge(1), 4));
  const RelaxedProblem rp = BuildRelaxed(inst, f);
  for (int o = 0; o < inst.num_options(); ++o) EXPECT_EQ(rp.x_var[0][o], -1);
  const int edge1 = OptionIndex(Option::Edge(1), 4);
  EXPECT_GE(rp.up_var[0][edge1], 0);
  EXPECT_GE(rp.cpu_var[0][edge1], 0);
  for (int o = 0; o < inst.num_options(); ++o) {
    if (o != edge1) EXPECT_EQ(rp.up_var[0][o], -1);
  }
  EXPECT_EQ(rp.settled_option[0], edge1);
}

TEST(BuildRelaxedTest, InconsistentFixingsThrow) {
  const Instance inst = TenByFour();
  Fixings two = Fixings::None(inst);
  two.fix[0][0] = FixState::kOne;
  two.fix[0][1] = FixState::kOne;
  EXPECT_THROW(BuildRelaxed(inst, two), InconsistentFixing);
  Fixings none = Fixings::None(inst);
  for (int o = 0; o < inst.num_options(); ++o) none.Forbid(0, o);
  EXPECT_THROW(BuildRelaxed(inst, none), InconsistentFixing);
}

// At a binary x the perspective delay x^2 D / r equals D / r.
TEST(BuildRelaxedTest, PerspectiveIsExactAtBinaryPoints) {
  const Instance inst = RandomSmallInstance(9, 3, 2);
  const RelaxedProblem rp = BuildRelaxed(inst, Fixings::None(inst));
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> share(0.05, 0.3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> z(rp.program.num_vars(), 0.0);
    for (int v = 0; v < rp.program.num_vars(); ++v) {
      if (rp.vars[v].tag != VarTag::kDecision) z[v] = share(gen);
    }
    for (int i = 0; i < inst.num_tasks(); ++i) {
      const int o = static_cast<int>(gen() % inst.num_options());
      z[rp.x_var[i][o]] = 1.0;
      const Option option = OptionFromIndex(o, inst.num_nodes());
      RateTriple r;
      if (option.offloaded()) {
        const EdgeNode& node = inst.nodes[option.node];
        r.up_rate = z[rp.up_var[i][o]] * node.uplink_cap;
        r.down_rate = z[rp.down_var[i][o]] * node.downlink_cap;
        if (rp.cpu_var[i][o] >= 0) r.cpu_rate = z[rp.cpu_var[i][o]] * node.cpu_cap;
      }
      const double relaxed =
          (convex::EvaluateRow(rp.program.rows[rp.delay_row[i]], z) + 1.0) *
          inst.tasks[i].deadline_s;
      EXPECT_NEAR(relaxed, PlacementDelay(inst.tasks[i], option, r, inst.cloud),
                  1e-9 * relaxed);
    }
  }
}

TEST(SolveRelaxedTest, SingleTaskPrefersOffloadAboveBreakEven) {
  // 2000 cycles/byte on 10 MB, loose deadline.
  const Instance inst = MakeInstance({NominalTask(0, 10, 1, 20.0, 100.0)}, 1);
  const RelaxedSolution sol =
      SolveRelaxed(inst, BuildRelaxed(inst, Fixings::None(inst)), {});
  ASSERT_EQ(sol.status, convex::Status::kOptimal);
  const double offload = 0.142 * 88.0;
  EXPECT_NEAR(sol.objective_j, offload, 1e-5);
  EXPECT_NEAR(sol.x[0][1] + sol.x[0][2], 1.0, 1e-6);
  EXPECT_LT(sol.x[0][0], 1e-6);
  const BruteForceResult brute = BruteForceSolve(inst);
  EXPECT_NEAR(brute.objective_j, offload, 1e-12);
}

TEST(SolveRelaxedTest, ImpossibleDeadlineIsInfeasible) {
  // Local takes 40 s against a 30 s deadline; a 1 kb/s uplink cannot move
  // 80 Mb in time either.
  Instance inst = MakeInstance({NominalTask(0, 10, 1, 20.0, 30.0)}, 1);
  inst.nodes[0].uplink_cap = 1e3;
  const RelaxedSolution sol =
      SolveRelaxed(inst, BuildRelaxed(inst, Fixings::None(inst)), {});
  EXPECT_EQ(sol.status, convex::Status::kInfeasible);
  EXPECT_GT(sol.max_violation, 0.0);
}

TEST(SolveRelaxedTest, LowerBoundsTheBruteForceOptimum) {
  int compared = 0;
  for (int seed = 1; seed <= 500; ++seed) {
    const int n = 1 + seed % 4;
    const int m = 1 + (seed / 4) % 2;
    const Instance inst = RandomSmallInstance(5000 + seed, n, m);
    const RelaxedSolution sol =
        SolveRelaxed(inst, BuildRelaxed(inst, Fixings::None(inst)), {});
    const BruteForceResult brute = BruteForceSolve(inst);
    if (!brute.feasible) continue;
    ASSERT_EQ(sol.status, convex::Status::kOptimal) << "seed " << seed;
    EXPECT_LE(sol.objective_j, brute.objective_j + 1e-5) << "seed " << seed;
    EXPECT_LE(sol.lower_bound_j, sol.objective_j);
    ++compared;
  }
  EXPECT_GT(compared, 400);
}

TEST(SolveRelaxedTest, FixingNeverLowersTheBound) {
  std::mt19937_64 gen(8);
  for (int seed = 1; seed <= 40; ++seed) {
    const Instance inst = RandomSmallInstance(700 + seed, 3, 2);
    Fixings f = Fixings::None(inst);
    RelaxedSolution prev = SolveRelaxed(inst, BuildRelaxed(inst, f), {});
    for (int i = 0; i < inst.num_tasks(); ++i) {
      if (prev.status != convex::Status::kOptimal) break;
      f.FixTo(i, static_cast<int>(gen() % inst.num_options()));
      const RelaxedSolution next = SolveRelaxed(inst, BuildRelaxed(inst, f), {});
      if (next.status != convex::Status::kOptimal) break;
      EXPECT_GE(next.objective_j, prev.lower_bound_j - 1e-9) << "seed " << seed;
      prev = next;
    }
  }
}

TEST(SolveRelaxedTest, EnergyScalingScalesObjectiveOnly) {
  // Interior iterates keep non-optimal shares near gap / reduced cost, so
  // the comparison runs with a tight gap.
  convex::SolverParams params;
  params.outer_tol = 1e-10;
  for (int seed = 1; seed <= 10; ++seed) {
    const Instance inst = RandomSmallInstance(900 + seed, 3, 2);
    Instance scaled = inst;
    for (Task& t : scaled.tasks) {
      t.energy_per_cycle *= 3.0;
      t.tx_energy_per_bit *= 3.0;
      t.rx_energy_per_bit *= 3.0;
    }
    const RelaxedSolution a =
        SolveRelaxed(inst, BuildRelaxed(inst, Fixings::None(inst)), params);
    const RelaxedSolution b =
        SolveRelaxed(scaled, BuildRelaxed(scaled, Fixings::None(scaled)), params);
    if (a.status != convex::Status::kOptimal) continue;
    ASSERT_EQ(b.status, convex::Status::kOptimal);
    EXPECT_NEAR(b.objective_j, 3.0 * a.objective_j, 1e-6 * b.objective_j);
    // Every offload option of a task costs the same energy, so only the
    // local share is pinned down by the optimum.
    for (int i = 0; i < inst.num_tasks(); ++i) {
      EXPECT_NEAR(a.x[i][0], b.x[i][0], 1e-6) << "seed " << seed;
    }
  }
}

TEST(SolveRelaxedTest, NominalRootIsWellConditioned) {
  const Instance inst = TenByFour();
  const RelaxedSolution sol =
      SolveRelaxed(inst, BuildRelaxed(inst, Fixings::None(inst)), {});
  ASSERT_EQ(sol.status, convex::Status::kOptimal);
  EXPECT_LE(sol.kkt_residual, 1e-8);
  for (int i = 0; i < inst.num_tasks(); ++i) {
    double sum = 0.0;
    for (double x : sol.x[i]) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_LE(sol.delay_s[i], inst.tasks[i].deadline_s * (1 + 1e-9));
  }
}

}  // namespace
}  // namespace mecoff

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
#include <string>

#include "gtest/gtest.h"
#include "mecoff/model.hpp"
#include "test_util.hpp"

namespace mecoff {
namespace {

using testing::MakeInstance;
using testing::NominalTask;

bool Contains(const std::vector<std::string>& list, const std::string& text) {
  for (const std::string& s : list) {
    if (s.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(UnitsTest, RoundTrips) {
  EXPECT_DOUBLE_EQ(units::MegabytesToBits(15.0), 120e6);
  EXPECT_DOUBLE_EQ(units::BitsToMegabytes(units::MegabytesToBits(1.5)), 1.5);
  EXPECT_DOUBLE_EQ(units::BitsToMegabits(units::MegabitsToBits(72.0)), 72.0);
  EXPECT_DOUBLE_EQ(units::CyclesToGigacycles(units::GigacyclesToCycles(13.5)),
                   13.5);
  EXPECT_DOUBLE_EQ(units::JoulesPerBitToPerMegabit(
                       units::JoulesPerMegabitToPerBit(0.142)),
                   0.142);
  EXPECT_DOUBLE_EQ(units::CyclesPerBitToCyclesPerByte(
                       units::CyclesPerByteToCyclesPerBit(911.0)),
                   911.0);
}

TEST(OptionTest, IndexOrderAndRoundTrip) {
  constexpr int kNodes = 4;
  EXPECT_EQ(OptionIndex(Option::Local(), kNodes), 0);
  EXPECT_EQ(OptionIndex(Option::Edge(0), kNodes), 1);
  EXPECT_EQ(OptionIndex(Option::Edge(3), kNodes), 4);
  EXPECT_EQ(OptionIndex(Option::CloudVia(0), kNodes), 5);
  EXPECT_EQ(OptionIndex(Option::CloudVia(3), kNodes), 8);
  for (int o = 0; o <= 2 * kNodes; ++o) {
    EXPECT_EQ(OptionIndex(OptionFromIndex(o, kNodes), kNodes), o);
  }
  EXPECT_THROW(OptionFromIndex(9, kNodes), std::out_of_range);
  EXPECT_EQ(ToString(Option::CloudVia(2)), "cloud:2");
}

TEST(LocalCostTest, NominalTask) {
  const Task t = NominalTask(0, 15, 1.5, 13.5);
  const Cost c = LocalCost(t);
  EXPECT_NEAR(c.energy_j, 13.5 * 1000.0 / 730.0, 1e-12);
  EXPECT_NEAR(c.energy_j, 18.49315068, 1e-8);
  EXPECT_NEAR(c.delay_s, 27.0, 1e-12);
}

TEST(LocalCostTest, IdentityUnitsAndZeroDemand) {
  Task t;
  t.cycles = 1.0;
  t.local_rate = 1.0;
  t.energy_per_cycle = 1.0;
  EXPECT_DOUBLE_EQ(LocalCost(t).energy_j, 1.0);
  EXPECT_DOUBLE_EQ(LocalCost(t).delay_s, 1.0);
  t.cycles = 1e-300;
  EXPECT_LT(LocalCost(t).energy_j, 1e-299);
  EXPECT_LT(LocalCost(t).delay_s, 1e-299);
}

TEST(EdgeCostTest, WorkedExample) {
  const Task t = NominalTask(0, 15, 1.5, 13.5);
  const RateTriple r{24e6, 24e6, 4.5e9};
  const Cost c = EdgeCost(t, r);
  EXPECT_NEAR(c.energy_j, 0.142 * 132.0, 1e-12);
  EXPECT_NEAR(c.energy_j, 18.744, 1e-12);
  EXPECT_NEAR(c.delay_s, 120.0 / 24.0 + 12.0 / 24.0 + 13.5 / 4.5, 1e-12);
  EXPECT_NEAR(c.delay_s, 8.5, 1e-12);
}

TEST(EdgeCostTest, NoOutputHasNoDownlinkTerm) {
  Task t = NominalTask(0, 15, 0, 13.5);
  const Cost c = EdgeCost(t, {24e6, 1.0, 4.5e9});
  EXPECT_NEAR(c.energy_j, 0.142 * 120.0, 1e-12);
  EXPECT_NEAR(c.delay_s, 5.0 + 3.0, 1e-12);
}

TEST(EdgeCostTest, DoublingRatesHalvesDelay) {
  const Task t = NominalTask(0, 12, 2, 9.0);
  const Cost a = EdgeCost(t, {10e6, 7e6, 2e9});
  const Cost b = EdgeCost(t, {20e6, 14e6, 4e9});
  EXPECT_NEAR(b.delay_s, a.delay_s / 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(a.energy_j, b.energy_j);
}

TEST(EdgeCostTest, ZeroRateThrows) {
  const Task t = NominalTask(0, 12, 2, 9.0);
  EXPECT_THROW(EdgeCost(t, {0.0, 1e6, 1e9}), ZeroRateError);
  EXPECT_THROW(EdgeCost(t, {1e6, 1e6, 0.0}), ZeroRateError);
}

TEST(CloudCostTest, WorkedExample) {
  const Task t = NominalTask(0, 15, 1.5, 13.5);
  const CloudConfig cloud{5e6, 10e9};
  const Cost c = CloudCost(t, 24e6, 24e6, cloud);
  EXPECT_NEAR(c.delay_s, 5.0 + 0.5 + 132.0 / 5.0 + 13.5 / 10.0, 1e-12);
  EXPECT_NEAR(c.delay_s, 33.25, 1e-12);
  EXPECT_NEAR(c.energy_j, 18.744, 1e-12);
}

TEST(CloudCostTest, FastBackhaulRecoversTransferTime) {
  const Task t = NominalTask(0, 15, 1.5, 13.5);
  const CloudConfig cloud{1e300, 1e300};
  EXPECT_NEAR(CloudCost(t, 24e6, 24e6, cloud).delay_s, 5.5, 1e-12);
}

TEST(CloudCostTest, EnergyMatchesEdgeForAnyRates) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> rate(1e5, 1e8);
  const Task t = NominalTask(0, 17, 1, 20.0);
  for (int k = 0; k < 50; ++k) {
    const double up = rate(gen), down = rate(gen);
    EXPECT_DOUBLE_EQ(CloudCost(t, up, down, testing::NominalCloud()).energy_j,
                     EdgeCost(t, {up, down, 1e9}).energy_j);
  }
}

TEST(TotalCostTest, AllLocalCollapsesToLocalCost) {
  const Instance inst = MakeInstance(
      {NominalTask(0, 10, 1, 4.0), NominalTask(1, 20, 2, 8.0)}, 2);
  const Decision d(2, Option::Local());
  const TotalCost tc = ComputeTotalCost(inst, d, Allocation::Empty(2));
  EXPECT_NEAR(tc.energy_j, (4.0 + 8.0) * 1000.0 / 730.0, 1e-12);
  EXPECT_NEAR(tc.delays_s[0], 8.0, 1e-12);
  EXPECT_NEAR(tc.delays_s[1], 16.0, 1e-12);
}

TEST(TotalCostTest, SingleEdgeTaskEqualsEdgeCost) {
  const Instance inst = MakeInstance({NominalTask(0, 15, 1.5, 13.5)}, 1);
  Allocation a = Allocation::Empty(1);
  a.per_task[0] = RateTriple{24e6, 24e6, 4.5e9};
  const TotalCost tc = ComputeTotalCost(inst, {Option::Edge(0)}, a);
  EXPECT_NEAR(tc.energy_j, 18.744, 1e-12);
  EXPECT_NEAR(tc.delays_s[0], 8.5, 1e-12);
}

TEST(TotalCostTest, LocalPlusCloudIsAdditive) {
  const Instance inst = MakeInstance(
      {NominalTask(0, 10, 1, 4.0), NominalTask(1, 15, 1.5, 13.5)}, 1);
  Allocation a = Allocation::Empty(2);
  a.per_task[1] = RateTriple{24e6, 24e6, 0.0};
  const TotalCost tc =
      ComputeTotalCost(inst, {Option::Local(), Option::CloudVia(0)}, a);
  EXPECT_NEAR(tc.energy_j, 4.0 * 1000.0 / 730.0 + 18.744, 1e-12);
  EXPECT_NEAR(tc.delays_s[1], 33.25, 1e-12);
}

TEST(TotalCostTest, EnergyIgnoresRates) {
  const Instance inst = MakeInstance(
      {NominalTask(0, 10, 1, 4.0), NominalTask(1, 15, 1.5, 13.5)}, 2);
  const Decision d = {Option::Edge(1), Option::CloudVia(0)};
  Allocation a = Allocation::Empty(2);
  a.per_task[0] = RateTriple{1e6, 2e6, 3e9};
  a.per_task[1] = RateTriple{4e6, 5e6, 0.0};
  Allocation b = a;
  b.per_task[0] = RateTriple{50e6, 60e6, 9e9};
  EXPECT_DOUBLE_EQ(ComputeTotalCost(inst, d, a).energy_j,
                   ComputeTotalCost(inst, d, b).energy_j);
}

TEST(TotalCostTest, MissingAllocationThrows) {
  const Instance inst = MakeInstance({NominalTask(0, 10, 1, 4.0)}, 1);
  EXPECT_THROW(
      ComputeTotalCost(inst, {Option::Edge(0)}, Allocation::Empty(1)),
      MissingAllocationError);
}

TEST(AlphaStarTest, NoDownlinkReducesToEnergyRatio) {
  Task t = NominalTask(0, 10, 0, 1.0);
  t.rx_energy_per_bit = 0.0;
  EXPECT_NEAR(AlphaStar(t), t.tx_energy_per_bit / t.energy_per_cycle, 1e-9);
}

TEST(AlphaStarTest, NominalBreakEvenInCyclesPerByte) {
  const Task t = NominalTask(0, 10, 1, 1.0);
  // (0.142 J/Mb * 1.1) / (1000/730 J/Gc), per bit, times 8 bits per byte.
  const double expected = 0.142e-6 * 1.1 / (1000.0 / 730.0 * 1e-9) * 8.0;
  EXPECT_NEAR(units::CyclesPerBitToCyclesPerByte(AlphaStar(t)), expected, 1e-9);
}

TEST(AlphaStarTest, ThresholdSeparatesLocalFromOffload) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> mb(1.0, 30.0);
  std::uniform_real_distribution<double> ratio(0.0, 0.5);
  std::uniform_real_distribution<double> alpha(50.0, 2000.0);
  for (int k = 0; k < 100; ++k) {
    const double in = mb(gen);
    const double bytes = in * 1e6;
    const double a = alpha(gen);
    const Task t = NominalTask(k, in, in * ratio(gen), a * bytes / 1e9);
    const double local = t.energy_per_cycle * t.cycles;
    const double offload = t.tx_energy_per_bit * t.input_bits +
                           t.rx_energy_per_bit * t.output_bits;
    EXPECT_EQ(local > offload, t.cycles / t.input_bits > AlphaStar(t))
        << "task " << k;
  }
}

TEST(ValidateTest, NominalInstanceIsValid) {
  const Instance inst = MakeInstance(
      {NominalTask(0, 15, 1.5, 13.5), NominalTask(1, 10, 1, 3.0)}, 4);
  EXPECT_TRUE(Validate(inst).empty());
}

TEST(ValidateTest, ReportsViolations) {
  Instance inst = MakeInstance({NominalTask(0, 15, 1.5, 13.5, 0.0)}, 1);
  EXPECT_TRUE(Contains(Validate(inst), "nonpositive deadline"));
  inst.tasks.clear();
  EXPECT_TRUE(Contains(Validate(inst), "empty task set"));
  Instance bad_node = MakeInstance({NominalTask(0, 15, 1.5, 13.5)}, 1);
  bad_node.nodes[0].cpu_cap = -1.0;
  EXPECT_TRUE(Contains(Validate(bad_node), "nonpositive cpu capacity"));
  Instance bad_id = MakeInstance({NominalTask(3, 15, 1.5, 13.5)}, 1);
  EXPECT_TRUE(Contains(Validate(bad_id), "non-dense task id"));
}

}  // namespace
}  // namespace mecoff

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


#include "mecoff/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <thread>

namespace mecoff {

namespace {

// Sub-stream tags.
constexpr std::uint64_t kBaseTag = 0x62617365;    // "base"
constexpr std::uint64_t kRandomTag = 0x72616e64;  // "rand"

Task MakeTask(int id, double input_mb, double output_mb, double cycles_g,
              double deadline_s, const NominalParameters& nominal) {
  Task t;
  t.id = id;
  t.input_bits = units::MegabytesToBits(input_mb);
  t.output_bits = units::MegabytesToBits(output_mb);
  t.cycles = units::GigacyclesToCycles(cycles_g);
  t.deadline_s = deadline_s;
  t.local_rate = units::GigacyclesToCycles(nominal.local_rate_gcps);
  t.energy_per_cycle =
      units::JoulesPerGigacycleToPerCycle(nominal.energy_j_per_gcycle);
  t.tx_energy_per_bit =
      units::JoulesPerMegabitToPerBit(nominal.tx_energy_j_per_mbit);
  t.rx_energy_per_bit =
      units::JoulesPerMegabitToPerBit(nominal.rx_energy_j_per_mbit);
  return t;
}

// alpha cycles/byte times size in MB, in gigacycles.
double CyclesG(int alpha, double input_mb) { return alpha * input_mb * 1e-3; }

SweepRow Summarize(const Instance& instance, const PolicyResult& r,
                   double sweep, double runtime_ms) {
  SweepRow row;
  row.sweep = sweep;
  row.policy = r.policy;
  row.status = r.status;
  row.nodes = r.nodes;
  row.runtime_ms = runtime_ms;
  const double n = instance.num_tasks();
  if (r.delays_s.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.avg_energy_j = nan;
    row.avg_delay_s = nan;
    return row;
  }
  row.offloaded = r.offloaded;
  row.avg_energy_j = r.total_energy_j / n;
  row.avg_delay_s =
      std::accumulate(r.delays_s.begin(), r.delays_s.end(), 0.0) / n;
  row.feasible = instance.num_tasks() -
                 static_cast<int>(r.deadline_violations.size());
  return row;
}

}  // namespace

std::uint64_t SplitMix64::Below(std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() / n * n;
  std::uint64_t u;
  do {
    u = Next();
  } while (u >= limit);
  return u % n;
}

int SplitMix64::UniformInt(int lo, int hi) {
  return lo + static_cast<int>(Below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t SubSeed(std::uint64_t seed,
                      std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = SplitMix64(seed).Next();
  for (std::uint64_t tag : path) {
    h = SplitMix64(h ^ SplitMix64(tag).Next()).Next();
  }
  return h;
}

BaseDraw DrawBase(const ScenarioConfig& config, std::uint64_t attempt) {
  const NominalParameters& p = config.nominal;
  BaseDraw base;
  for (int i = 0; i < config.num_tasks; ++i) {
    SplitMix64 rng(SubSeed(config.seed,
                           {kBaseTag, attempt, static_cast<std::uint64_t>(i)}));
    base.input_mb.push_back(rng.UniformInt(p.input_mb_min, p.input_mb_max));
    base.output_mb.push_back(rng.UniformInt(p.output_mb_min, p.output_mb_max));
    base.alpha.push_back(rng.UniformInt(config.alpha_low, config.alpha_high));
  }
  return base;
}

Instance MakeInstance(const ScenarioConfig& config, const BaseDraw& base,
                      int alpha_shift, double deadline_s) {
  const NominalParameters& p = config.nominal;
  Instance inst;
  for (int i = 0; i < config.num_tasks; ++i) {
    inst.tasks.push_back(MakeTask(i, base.input_mb[i], base.output_mb[i],
                                  CyclesG(base.alpha[i] + alpha_shift,
                                          base.input_mb[i]),
                                  deadline_s, p));
  }
  for (int j = 0; j < config.num_nodes; ++j) {
    inst.nodes.push_back({j, units::MegabitsToBits(p.node_uplink_mbps),
                          units::MegabitsToBits(p.node_downlink_mbps),
                          units::GigacyclesToCycles(p.node_cpu_gcps)});
  }
  inst.cloud.fog_cloud_rate = units::MegabitsToBits(p.fog_cloud_mbps);
  inst.cloud.cloud_cpu_rate = units::GigacyclesToCycles(p.cloud_cpu_gcps);
  return inst;
}

Instance GenerateInstance(const ScenarioConfig& config, int sweep_point) {
  return MakeInstance(config, DrawBase(config),
                      sweep_point * config.alpha_step, config.deadline_s);
}

ModifiedBase Scenario2Modify(const ScenarioConfig& config, BaseDraw base,
                             double min_local_delay_s) {
  const NominalParameters& p = config.nominal;
  for (int i = 0; i < config.num_tasks; ++i) {
    const int alpha = base.alpha[i] + config.scenario2_shift;
    const Task task =
        MakeTask(i, base.input_mb[i], base.output_mb[i],
                 CyclesG(alpha, base.input_mb[i]), 1.0, p);
    if (!(task.cycles / task.input_bits < AlphaStar(task))) continue;
    const double local_delay = LocalCost(task).delay_s;
    int factor = 2;
    while (local_delay * factor <= min_local_delay_s) ++factor;
    base.input_mb[i] *= factor;
    base.output_mb[i] *= factor;
    return {std::move(base), i, factor, 0};
  }
  throw NoCandidate("every task benefits from offloading");
}

ModifiedBase Scenario2Base(const ScenarioConfig& config) {
  double longest = 0.0;
  for (double t : config.scenario2_deadlines) longest = std::max(longest, t);
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    try {
      ModifiedBase out =
          Scenario2Modify(config, DrawBase(config, attempt), longest);
      out.attempt = attempt;
      return out;
    } catch (const NoCandidate&) {
    }
  }
  throw NoCandidate("no candidate task after " +
                    std::to_string(config.max_retries + 1) + " draws");
}

Instance RandomSmallInstance(std::uint64_t seed, int num_tasks, int num_nodes) {
  const NominalParameters p;
  Instance inst;
  for (int i = 0; i < num_tasks; ++i) {
    SplitMix64 rng(SubSeed(seed, {kRandomTag, 0, static_cast<std::uint64_t>(i)}));
    const int input_mb = rng.UniformInt(p.input_mb_min, p.input_mb_max);
    const int output_mb = rng.UniformInt(p.output_mb_min, p.output_mb_max);
    const int alpha = rng.UniformInt(200, 1300);
    const int deadline = rng.UniformInt(20, 60);
    inst.tasks.push_back(
        MakeTask(i, input_mb, output_mb, CyclesG(alpha, input_mb), deadline, p));
  }
  for (int j = 0; j < num_nodes; ++j) {
    SplitMix64 rng(SubSeed(seed, {kRandomTag, 1, static_cast<std::uint64_t>(j)}));
    inst.nodes.push_back({j, units::MegabitsToBits(rng.UniformInt(8, 72)),
                          units::MegabitsToBits(rng.UniformInt(8, 72)),
                          units::GigacyclesToCycles(rng.UniformInt(1, 10))});
  }
  inst.cloud.fog_cloud_rate = units::MegabitsToBits(p.fog_cloud_mbps);
  inst.cloud.cloud_cpu_rate = units::GigacyclesToCycles(p.cloud_cpu_gcps);
  return inst;
}

SweepPoint RunPoint(const Instance& instance, double sweep,
                    const ScenarioConfig& config, std::vector<SweepRow>& rows) {
  SweepPoint point;
  point.sweep = sweep;
  point.instance = instance;
  auto run = [&](const std::string& name, auto&& solve) {
    const auto start = std::chrono::steady_clock::now();
    PolicyResult r;
    try {
      r = solve();
    } catch (const std::exception& e) {
      r.policy = name;
      r.status = "error";
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    rows.push_back(
        Summarize(instance, r, sweep, config.zero_runtime ? 0.0 : ms));
    point.results.push_back(std::move(r));
  };
  run("wop", [&] { return WopSolve(instance); });
  run("aop", [&] { return AopSolve(instance, config.ibba); });
  run("rop", [&] { return RopSolve(instance, config.ibba.solver); });
  run("ibba", [&] { return IbbaPolicy(instance, config.ibba); });
  return point;
}

namespace {

// Runs the points on up to config.threads workers and appends rows in
// sweep order.
SweepResult RunPoints(const ScenarioConfig& config,
                      const std::vector<Instance>& instances,
                      const std::vector<double>& sweeps) {
  const std::size_t count = instances.size();
  std::vector<SweepPoint> points(count);
  std::vector<std::vector<SweepRow>> rows(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      points[k] = RunPoint(instances[k], sweeps[k], config, rows[k]);
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads, count));
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  SweepResult out;
  out.points = std::move(points);
  for (auto& r : rows) out.rows.insert(out.rows.end(), r.begin(), r.end());
  return out;
}

}  // namespace

SweepResult RunScenario1(const ScenarioConfig& config) {
  const BaseDraw base = DrawBase(config);
  std::vector<Instance> instances;
  std::vector<double> sweeps;
  for (int k = 0; k < config.num_points; ++k) {
    const int shift = k * config.alpha_step;
    instances.push_back(MakeInstance(config, base, shift, config.deadline_s));
    sweeps.push_back(config.alpha_low + shift);
  }
  return RunPoints(config, instances, sweeps);
}

SweepResult RunScenario2(const ScenarioConfig& config) {
  const ModifiedBase modified = Scenario2Base(config);
  std::vector<Instance> instances;
  for (double deadline : config.scenario2_deadlines) {
    instances.push_back(MakeInstance(config, modified.base,
                                     config.scenario2_shift, deadline));
  }
  SweepResult out = RunPoints(config, instances, config.scenario2_deadlines);
  out.modified_task = modified.task;
  return out;
}

void WriteCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << num(r.sweep) << ',' << r.policy << ',' << r.offloaded << ','
        << num(r.avg_energy_j) << ',' << num(r.avg_delay_s) << ','
        << r.feasible << ',' << num(r.runtime_ms) << ',' << r.nodes << ','
        << r.status << '\n';
  }
}

void WriteCsvFile(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  WriteCsv(out, rows);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace mecoff

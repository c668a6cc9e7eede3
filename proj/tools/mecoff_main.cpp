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


// Command-line front end: single-instance solves, the two sweeps and the
// brute-force cross-check.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 infeasible, 3 solver failure.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mecoff/experiment.hpp"
#include "mecoff/instance_io.hpp"
#include "mecoff/model.hpp"
#include "mecoff/policies.hpp"
#include "mecoff/simd/kernels.hpp"

namespace {

using nlohmann::json;
using namespace mecoff;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSolverFailure = 3;

int ExitCodeFor(const std::string& status) {
  if (status == "ok") return kExitOk;
  if (status == "infeasible" || status == "fallback") return kExitInfeasible;
  return kExitSolverFailure;
}

// Reads solver and branch-and-bound settings; unknown keys are an error so
// that typos do not silently fall back to defaults.
IbbaParams LoadParams(const std::string& path) {
  IbbaParams params;
  if (path.empty()) return params;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open params file " + path);
  const json doc = json::parse(in);
  for (const auto& [key, value] : doc.items()) {
    if (key == "newton_tol") {
      params.solver.newton_tol = value.get<double>();
    } else if (key == "outer_tol") {
      params.solver.outer_tol = value.get<double>();
    } else if (key == "barrier_mu0") {
      params.solver.barrier_mu0 = value.get<double>();
    } else if (key == "barrier_shrink") {
      params.solver.barrier_shrink = value.get<double>();
    } else if (key == "max_newton_iters") {
      params.solver.max_newton_iters = value.get<int>();
    } else if (key == "max_outer_iters") {
      params.solver.max_outer_iters = value.get<int>();
    } else if (key == "int_tol") {
      params.int_tol = value.get<double>();
    } else if (key == "gap_tol") {
      params.gap_tol = value.get<double>();
    } else if (key == "bound_pruning") {
      params.enable_bound_pruning = value.get<bool>();
    } else {
      throw std::runtime_error("unknown params key '" + key + "'");
    }
  }
  return params;
}

json ResultToJson(const Instance& inst, const PolicyResult& r, double ms) {
  json out;
  out["policy"] = r.policy;
  out["status"] = r.status;
  out["feasible"] = r.feasible;
  out["total_energy_j"] = r.total_energy_j;
  out["offloaded"] = r.offloaded;
  out["nodes"] = r.nodes;
  out["runtime_ms"] = ms;
  out["simd"] = std::string(simd::BackendName(simd::DetectBackend()));
  json tasks = json::array();
  for (int i = 0; i < inst.num_tasks() && i < static_cast<int>(r.delays_s.size());
       ++i) {
    json t;
    t["id"] = i;
    if (!r.decision.empty()) t["placement"] = ToString(r.decision[i]);
    t["delay_s"] = r.delays_s[i];
    t["deadline_s"] = inst.tasks[i].deadline_s;
    if (i < static_cast<int>(r.allocation.per_task.size()) &&
        r.allocation.per_task[i]) {
      const RateTriple& rt = *r.allocation.per_task[i];
      t["up_mbps"] = units::BitsToMegabits(rt.up_rate);
      t["down_mbps"] = units::BitsToMegabits(rt.down_rate);
      t["cpu_gcps"] = units::CyclesToGigacycles(rt.cpu_rate);
    }
    tasks.push_back(std::move(t));
  }
  out["tasks"] = std::move(tasks);
  return out;
}

int RunSolve(const std::string& path, const std::string& policy,
             const std::string& params_path) {
  const Instance inst = LoadInstance(path);
  const std::vector<std::string> problems = Validate(inst);
  if (!problems.empty()) {
    for (const std::string& p : problems) std::cerr << "invalid: " << p << '\n';
    return kExitError;
  }
  const IbbaParams params = LoadParams(params_path);
  const auto start = std::chrono::steady_clock::now();
  PolicyResult r;
  if (policy == "ibba") {
    r = IbbaPolicy(inst, params);
  } else if (policy == "rop") {
    r = RopSolve(inst, params.solver);
  } else if (policy == "wop") {
    r = WopSolve(inst);
  } else if (policy == "aop") {
    r = AopSolve(inst, params);
  } else {
    r = OraclePolicy(inst);
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  std::cout << ResultToJson(inst, r, ms).dump(2) << '\n';
  return ExitCodeFor(r.status);
}

int RunSweep(int scenario, const ScenarioConfig& config,
             const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const SweepResult result =
      scenario == 1 ? RunScenario1(config) : RunScenario2(config);
  const std::string name = scenario == 1 ? "scenario1.csv" : "scenario2.csv";
  const std::string path = (std::filesystem::path(out_dir) / name).string();
  WriteCsvFile(path, result.rows);
  std::cerr << "wrote " << path;
  if (scenario == 2) std::cerr << " (modified task " << result.modified_task << ")";
  std::cerr << '\n';
  int code = kExitOk;
  for (const SweepRow& row : result.rows) {
    if (row.policy != "ibba") continue;
    const int c = ExitCodeFor(row.status);
    if (c > code) code = c;
  }
  return code;
}

int RunOracleCheck(int seeds, int n, int m, std::uint64_t first_seed) {
  int mismatches = 0;
  int failures = 0;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = first_seed + s;
    const Instance inst = RandomSmallInstance(seed, n, m);
    const IbbaResult ibba = IbbaSolve(inst);
    const BruteForceResult brute = BruteForceSolve(inst);
    const bool ibba_ok = ibba.status == IbbaStatus::kOptimal;
    if (ibba.status == IbbaStatus::kIndeterminate || brute.indeterminate > 0) {
      ++failures;
    }
    bool agree = ibba_ok == brute.feasible;
    if (agree && ibba_ok) {
      agree = std::abs(ibba.objective_j - brute.objective_j) <= 1e-5;
    }
    if (!agree) {
      ++mismatches;
      std::printf("seed %llu: ibba %s %.9g, brute %s %.9g\n",
                  static_cast<unsigned long long>(seed),
                  ToString(ibba.status).c_str(), ibba.objective_j,
                  brute.feasible ? "feasible" : "infeasible",
                  brute.objective_j);
    }
  }
  std::printf("%d instances, %d mismatches, %d with solver trouble\n", seeds,
              mismatches, failures);
  if (mismatches > 0) return kExitError;
  return failures > 0 ? kExitSolverFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task offloading in a three-tier edge/cloud network"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string policy = "ibba";
  std::string params_path;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance file");
  solve->add_option("instance", instance_path, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--policy", policy, "Placement policy")
      ->check(CLI::IsMember({"ibba", "rop", "wop", "aop", "oracle"}));
  solve->add_option("--params", params_path, "JSON file of solver settings")
      ->check(CLI::ExistingFile);

  ScenarioConfig config;
  std::string out_dir = ".";
  auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "Base seed");
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--threads", config.threads, "Concurrent sweep points")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--zero-runtime", config.zero_runtime,
                  "Write 0 in the runtime column");
  };
  CLI::App* s1 = app.add_subcommand("scenario1", "Complexity sweep");
  add_sweep_flags(s1);
  CLI::App* s2 = app.add_subcommand("scenario2", "Deadline sweep");
  add_sweep_flags(s2);

  int point = 0;
  int scenario = 1;
  std::string generate_out;
  CLI::App* generate =
      app.add_subcommand("generate", "Write one sweep instance as JSON");
  generate->add_option("--seed", config.seed, "Base seed");
  generate->add_option("--scenario", scenario)->check(CLI::IsMember({1, 2}));
  generate->add_option("--point", point, "Sweep point index")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--out", generate_out, "Output file (default stdout)");

  int seeds = 200;
  int n = 3;
  int m = 2;
  std::uint64_t first_seed = 1;
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "Compare IBBA with brute force");
  oracle->add_option("--seeds", seeds, "Number of instances")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--n", n, "Tasks per instance")->check(CLI::Range(1, 6));
  oracle->add_option("--m", m, "Edge nodes")->check(CLI::Range(1, 4));
  oracle->add_option("--first-seed", first_seed, "Seed of the first instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return RunSolve(instance_path, policy, params_path);
    if (*s1) return RunSweep(1, config, out_dir);
    if (*s2) return RunSweep(2, config, out_dir);
    if (*oracle) return RunOracleCheck(seeds, n, m, first_seed);
    if (*generate) {
      Instance inst;
      if (scenario == 1) {
        if (point >= config.num_points) {
          throw std::runtime_error("point must be below " +
                                   std::to_string(config.num_points));
        }
        inst = GenerateInstance(config, point);
      } else {
        if (point >= static_cast<int>(config.scenario2_deadlines.size())) {
          throw std::runtime_error("point must be below " +
                                   std::to_string(config.scenario2_deadlines.size()));
        }
        const ModifiedBase base = Scenario2Base(config);
        inst = MakeInstance(config, base.base, config.scenario2_shift,
                            config.scenario2_deadlines[point]);
      }
      if (generate_out.empty()) {
        std::cout << InstanceToJson(inst) << '\n';
      } else {
        SaveInstance(inst, generate_out);
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero when any fails. Groups can be run separately:
//
//   mecoff_acceptance [threshold|oracle|sandwich|scenario1|scenario2|numerics]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mecoff/experiment.hpp"
#include "mecoff/nominal.hpp"
#include "mecoff/policies.hpp"
#include "mecoff/relaxation.hpp"

namespace mecoff {
namespace {

int failures = 0;

void Report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Delays and capacities recomputed from the raw rates, without the model
// library. Returns the worst violation: delay seconds over the deadline, or
// relative capacity excess.
struct Recheck {
  double worst_late_s = -std::numeric_limits<double>::infinity();
  double worst_overuse = 0.0;
  bool missing_rates = false;
};

Recheck Independent(const Instance& inst, const Decision& d,
                    const Allocation& a) {
  Recheck out;
  const int m = inst.num_nodes();
  std::vector<double> up(m), down(m), cpu(m);
  for (int i = 0; i < inst.num_tasks(); ++i) {
    const Task& t = inst.tasks[i];
    double delay = t.cycles / t.local_rate;
    if (d[i].offloaded()) {
      if (!a.per_task[i]) {
        out.missing_rates = true;
        continue;
      }
      const RateTriple& r = *a.per_task[i];
      delay = t.input_bits / r.up_rate + t.output_bits / r.down_rate;
      if (d[i].placement == Placement::kEdge) {
        delay += t.cycles / r.cpu_rate;
      } else {
        delay += (t.input_bits + t.output_bits) / inst.cloud.fog_cloud_rate +
                 t.cycles / inst.cloud.cloud_cpu_rate;
      }
      up[d[i].node] += r.up_rate;
      down[d[i].node] += r.down_rate;
      cpu[d[i].node] += r.cpu_rate;
    }
    out.worst_late_s = std::max(out.worst_late_s, delay - t.deadline_s);
  }
  for (int j = 0; j < m; ++j) {
    const EdgeNode& n = inst.nodes[j];
    out.worst_overuse = std::max({out.worst_overuse, up[j] / n.uplink_cap - 1.0,
                                  down[j] / n.downlink_cap - 1.0,
                                  cpu[j] / n.cpu_cap - 1.0});
  }
  return out;
}

void Threshold() {
  const NominalParameters p;
  Task task;
  task.input_bits = units::MegabytesToBits(10);
  task.output_bits = units::MegabytesToBits(1);
  task.cycles = 1.0;
  task.deadline_s = 1.0;
  task.local_rate = units::GigacyclesToCycles(p.local_rate_gcps);
  task.energy_per_cycle = units::JoulesPerGigacycleToPerCycle(p.energy_j_per_gcycle);
  task.tx_energy_per_bit = units::JoulesPerMegabitToPerBit(p.tx_energy_j_per_mbit);
  task.rx_energy_per_bit = units::JoulesPerMegabitToPerBit(p.rx_energy_j_per_mbit);
  const double per_byte = AlphaStar(task) * 8.0;
  // Energy per input byte moved, over energy per cycle.
  const double oracle = 0.142e-6 * 8.0 * 1.1 / (1000.0 / 730.0 * 1e-9);
  Report(std::fabs(per_byte - 911.0) <= 1.0 &&
             std::fabs(per_byte - oracle) <= 1e-9 * oracle,
         "threshold",
         Fmt("alpha* = %.3f cycles/byte (direct %.3f), target 911 +- 1",
             per_byte, oracle));
}

struct Small {
  Instance instance;
  int n = 0, m = 0;
};

std::vector<Small> SmallInstances() {
  std::vector<Small> out;
  for (int s = 0; s < 200; ++s) {
    const int n = 2 + s % 3;
    const int m = 1 + (s / 3) % 2;
    out.push_back({RandomSmallInstance(20260000 + s, n, m), n, m});
  }
  return out;
}

void Oracle() {
  const auto start = std::chrono::steady_clock::now();
  int mismatched = 0, infeasible = 0, recheck_bad = 0;
  double worst_gap = 0.0;
  for (const Small& s : SmallInstances()) {
    const IbbaResult ibba = IbbaSolve(s.instance);
    const BruteForceResult brute = BruteForceSolve(s.instance);
    const bool ibba_ok = ibba.status == IbbaStatus::kOptimal;
    if (ibba_ok != brute.feasible || brute.indeterminate > 0 ||
        ibba.status == IbbaStatus::kIndeterminate) {
      ++mismatched;
      continue;
    }
    if (!ibba_ok) {
      ++infeasible;
      continue;
    }
    const double gap = std::fabs(ibba.objective_j - brute.objective_j);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-5) ++mismatched;
    const Recheck r = Independent(s.instance, ibba.decision, ibba.allocation);
    if (r.missing_rates || r.worst_late_s > 1e-6 || r.worst_overuse > 1e-6) {
      ++recheck_bad;
    }
  }
  const double secs = Seconds(start);
  Report(mismatched == 0 && recheck_bad == 0 && secs < 60.0, "oracle",
         Fmt("200 instances, %d infeasible, %d mismatches, worst |diff| %.2e J, "
             "%d failed re-check, %.1f s",
             infeasible, mismatched, worst_gap, recheck_bad, secs));
}

void Sandwich() {
  int compared = 0, aop_compared = 0, violations = 0, failed = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const Small& s : SmallInstances()) {
    const PolicyResult ibba = IbbaPolicy(s.instance);
    if (ibba.status == "infeasible") continue;
    const PolicyResult rop = RopSolve(s.instance);
    const PolicyResult aop = AopSolve(s.instance);
    if (ibba.status != "ok" || rop.status != "ok") {
      ++failed;
      continue;
    }
    ++compared;
    worst = std::max(worst, rop.total_energy_j - ibba.total_energy_j);
    if (rop.total_energy_j > ibba.total_energy_j + 1e-5) ++violations;
    if (aop.status == "ok" && aop.feasible) {
      ++aop_compared;
      worst = std::max(worst, ibba.total_energy_j - aop.total_energy_j);
      if (ibba.total_energy_j > aop.total_energy_j + 1e-5) ++violations;
    }
  }
  Report(violations == 0 && failed == 0 && compared > 0, "sandwich",
         Fmt("%d instances (%d with feasible AOP), %d violations, %d solver "
             "failures, worst excess %.2e J",
             compared, aop_compared, violations, failed, worst));
}

const SweepRow* Row(const SweepResult& r, double sweep, const std::string& policy) {
  for (const SweepRow& row : r.rows) {
    if (row.sweep == sweep && row.policy == policy) return &row;
  }
  return nullptr;
}

void Scenario1() {
  ScenarioConfig config;
  const auto start = std::chrono::steady_clock::now();
  const SweepResult r = RunScenario1(config);
  const double secs = Seconds(start);

  // Endpoints and monotone offload count.
  std::string counts;
  bool ok = secs < 300.0;
  int previous = -1;
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    const PolicyResult& ibba = r.points[k].results[3];
    counts += (k ? "," : "") + std::to_string(ibba.offloaded);
    ok = ok && ibba.status == "ok" && ibba.offloaded >= previous;
    if (k <= 4) ok = ok && ibba.offloaded == 0;
    if (k == 8) ok = ok && ibba.offloaded == config.num_tasks;
    previous = ibba.offloaded;
  }
  Report(ok && r.points.size() == 9, "scenario1_endpoints",
         Fmt("IBBA offloaded per point [%s], sweep %.1f s", counts.c_str(), secs));

  // AOP flatness.
  const SweepRow* first = Row(r, r.points[0].sweep, "aop");
  bool flat = first != nullptr;
  for (const SweepPoint& p : r.points) {
    const SweepRow* row = Row(r, p.sweep, "aop");
    flat = flat && row && row->avg_energy_j == first->avg_energy_j;
  }
  const double aop = first ? first->avg_energy_j : 0.0;
  Report(flat && std::fabs(aop - 18.4) <= 0.1 * 18.4, "aop_flatness",
         Fmt("AOP %.4f J/task at every point: %s; band 18.4 +- 10%%", aop,
             flat ? "yes" : "no"));

  // WOP closed form from the base draw.
  const BaseDraw base = DrawBase(config);
  const double v = 1000.0 / 730.0 * 1e-9;  // J per cycle
  bool exact = true;
  double worst_rel = 0.0;
  std::vector<double> wop;
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    double sum = 0.0;
    for (int i = 0; i < config.num_tasks; ++i) {
      sum += (base.alpha[i] + 100.0 * k) * base.input_mb[i] * 1e6;
    }
    const double closed = v * sum / config.num_tasks;
    const SweepRow* row = Row(r, r.points[k].sweep, "wop");
    const double got = row ? row->avg_energy_j : 0.0;
    wop.push_back(got);
    const double rel = std::fabs(got - closed) / closed;
    worst_rel = std::max(worst_rel, rel);
    exact = exact && rel <= 1e-12;
  }
  double worst_affine = 0.0;
  for (std::size_t k = 2; k < wop.size(); ++k) {
    const double predicted = wop[0] + k * (wop[1] - wop[0]);
    worst_affine = std::max(worst_affine, std::fabs(wop[k] - predicted) / wop[k]);
  }
  Report(exact && worst_affine <= 1e-12, "wop_linearity",
         Fmt("closed form worst rel %.1e, affine residual %.1e, %.3f to %.3f J/task",
             worst_rel, worst_affine, wop.front(), wop.back()));

  // Deadline compliance.
  double worst_delay = 0.0;
  bool compliant = true;
  for (const SweepPoint& p : r.points) {
    const PolicyResult& ibba = p.results[3];
    compliant = compliant && ibba.status == "ok";
    for (double d : ibba.delays_s) worst_delay = std::max(worst_delay, d);
    if (ibba.status == "ok") {
      const Recheck rc = Independent(p.instance, ibba.decision, ibba.allocation);
      compliant = compliant && !rc.missing_rates;
      worst_delay = std::max(worst_delay, rc.worst_late_s + config.deadline_s);
    }
  }
  Report(compliant && worst_delay <= config.deadline_s, "deadline_compliance",
         Fmt("worst IBBA delay %.4f s against 40 s", worst_delay));
}

void Scenario2() {
  ScenarioConfig config;
  const auto start = std::chrono::steady_clock::now();
  const SweepResult r = RunScenario2(config);
  const double secs = Seconds(start);
  const int task = r.modified_task;
  bool ok = task >= 0 && r.points.size() == config.scenario2_deadlines.size();
  std::string detail;
  for (const SweepPoint& p : r.points) {
    const PolicyResult& rop = p.results[2];
    const PolicyResult& ibba = p.results[3];
    const bool offloaded = ibba.status == "ok" && ibba.decision[task].offloaded();
    const double rop_avg = rop.total_energy_j / config.num_tasks;
    const double ibba_avg = ibba.total_energy_j / config.num_tasks;
    ok = ok && offloaded && rop.status == "ok" && rop_avg <= ibba_avg;
    detail += Fmt(" T=%g:%s rop %.4f ibba %.4f;", p.sweep,
                  offloaded ? "offloaded" : "LOCAL", rop_avg, ibba_avg);
  }
  Report(ok, "scenario2_forced_offload",
         Fmt("task %d,%s %.1f s", task, detail.c_str(), secs));
}

void Numerics() {
  int solved = 0, skipped = 0, failed = 0;
  double worst_kkt = 0.0, worst_fd = 0.0;
  for (std::uint64_t seed = 1001; solved + failed < 50; ++seed) {
    const int s = static_cast<int>(seed - 1000);
    const Instance inst = RandomSmallInstance(seed, 2 + s % 9, 1 + s % 4);
    const RelaxedProblem prob = BuildRelaxed(inst, Fixings::None(inst));
    const convex::SolverParams params;
    const RelaxedSolution sol = SolveRelaxed(inst, prob, params);
    if (sol.status == convex::Status::kInfeasible) {
      ++skipped;
      continue;
    }
    if (sol.status != convex::Status::kOptimal) {
      ++failed;
      continue;
    }
    ++solved;
    worst_kkt = std::max(worst_kkt, sol.kkt_residual);

    // Central differences of the barrier at an interior point of the
    // central path.
    const convex::Program& prog = prob.program;
    convex::SolverParams early = params;
    early.outer_tol = 1e-2;
    const convex::Result mid = convex::Minimize(prog, early);
    if (mid.z.empty()) {
      ++failed;
      continue;
    }
    const double t = 1.0 / mid.mu;
    const int n = prog.num_vars();
    std::vector<double> grad(n);
    convex::BarrierGradient(prog, mid.z, t, grad);
    double scale = 0.0;
    for (double g : grad) scale = std::max(scale, std::fabs(g));
    for (int v = 0; v < n; ++v) {
      const double room = prog.kinds[v] == convex::VarKind::kFree
                              ? 1.0
                              : mid.z[v] - prog.lower[v];
      const double h = 1e-5 * std::min(1.0, room);
      std::vector<double> zp = mid.z, zm = mid.z;
      zp[v] += h;
      zm[v] -= h;
      const double fd = (convex::BarrierObjective(prog, zp, t) -
                         convex::BarrierObjective(prog, zm, t)) /
                        (zp[v] - zm[v]);
      worst_fd = std::max(worst_fd, std::fabs(fd - grad[v]) / scale);
    }
  }
  Report(failed == 0 && worst_kkt <= 1e-8, "numerics_kkt",
         Fmt("%d relaxed problems solved (%d infeasible skipped, %d failures), "
             "worst KKT residual %.2e",
             solved, skipped, failed, worst_kkt));
  Report(failed == 0 && worst_fd <= 1e-4, "numerics_gradient",
         Fmt("worst finite-difference gradient error %.2e relative to "
             "max |gradient|",
             worst_fd));
}

}  // namespace
}  // namespace mecoff

int main(int argc, char** argv) {
  CLI::App app{"mecoff acceptance checks"};
  std::vector<std::string> groups;
  app.add_option("groups", groups, "Groups to run (default: all)")
      ->check(CLI::IsMember({"threshold", "oracle", "sandwich", "scenario1",
                             "scenario2", "numerics"}));
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](const std::string& g) {
    return groups.empty() ||
           std::find(groups.begin(), groups.end(), g) != groups.end();
  };
  if (wanted("threshold")) mecoff::Threshold();
  if (wanted("oracle")) mecoff::Oracle();
  if (wanted("sandwich")) mecoff::Sandwich();
  if (wanted("scenario1")) mecoff::Scenario1();
  if (wanted("scenario2")) mecoff::Scenario2();
  if (wanted("numerics")) mecoff::Numerics();
  return mecoff::failures == 0 ? 0 : 1;
}

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

#include "mecoff/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mecoff/dense.hpp"
#include "mecoff/simd/kernels.hpp"

namespace mecoff::convex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inside this decrement the barrier is close enough to its quadratic model
// that Newton steps are taken whole; the Armijo test would only measure
// rounding there.
constexpr double kFullStepDecrement = 1e-3;
// Headroom on the last barrier parameter for the objective still moving.
constexpr double kFinalStageMargin = 1.05;
// Intermediate centers stop at this Newton decrement (lambda^2 / 2).
constexpr double kCenterDecrement = 1e-8;

// A Program with its constant rows stripped, plus the Newton workspace.
class Engine {
 public:
  explicit Engine(const Program& program)
      : p_(program), n_(program.num_vars()), kernels_(simd::Kernels()) {
    for (const Row& row : p_.rows) {
      if (!row.IsConstant()) {
        rows_.push_back(&row);
        weight_.push_back(RowBarrierWeight(row));
        barrier_weight_ += weight_.back();
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (p_.kinds[v] != VarKind::kFree) bounded_.push_back(v);
    }
    group_of_.assign(n_, -1);
    for (int g = 0; g < static_cast<int>(p_.simplex_groups.size()); ++g) {
      for (int v : p_.simplex_groups[g]) group_of_[v] = g;
    }
    acc_.assign(n_, 0.0);
    in_acc_.assign(n_, 0);
    grad_.assign(n_, 0.0);
    hess_.Resize(n_);
    pivot_.assign(p_.simplex_groups.size(), -1);
    reduced_of_.assign(n_, -1);
    num_reduced_ = n_ - static_cast<int>(p_.simplex_groups.size());
    reduced_hess_.Resize(num_reduced_);
    reduced_grad_.assign(num_reduced_, 0.0);
    direction_.assign(n_, 0.0);
    old_slack_.resize(rows_.size() + bounded_.size());
    new_slack_.resize(old_slack_.size());
  }

  // Barrier parameter of phi: the duality gap at a center is this over t.
  double barrier_weight() const {
    return barrier_weight_ + static_cast<double>(bounded_.size());
  }
  int num_vars() const { return n_; }

  // Fills `out` with row slacks -g_k then bound slacks z - lower. Returns
  // false if any is not strictly positive.
  bool Slacks(std::span<const double> z, std::vector<double>& out) const {
    std::size_t k = 0;
    for (int v : bounded_) {
      const double s = z[v] - p_.lower[v];
      if (!(s > 0.0)) return false;
      out[rows_.size() + k++] = s;
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double s = -EvaluateRow(*rows_[r], z);
      if (!(s > 0.0) || !std::isfinite(s)) return false;
      out[r] = s;
    }
    return true;
  }

  double Value(std::span<const double> z, double t) const {
    std::vector<double> s(old_slack_.size());
    if (!Slacks(z, s)) return kInf;
    double value = t * ObjectiveDot(z);
    for (std::size_t k = 0; k < s.size(); ++k) value -= Weight(k) * std::log(s[k]);
    return value;
  }

  double ObjectiveDot(std::span<const double> z) const {
    return kernels_.dot(p_.objective.data(), z.data(), n_);
  }

  // Gradient and Hessian of t*c^T z + phi(z) at z (assumed in the domain).
  void Assemble(std::span<const double> z, double t) {
    hess_.SetZero();
    for (int v = 0; v < n_; ++v) grad_[v] = t * p_.objective[v];
    for (int v : bounded_) {
      const double inv = 1.0 / (z[v] - p_.lower[v]);
      grad_[v] -= inv;
      hess_(v, v) += inv * inv;
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) AddRow(*rows_[r], weight_[r], z);
  }

  const std::vector<double>& gradient() const { return grad_; }
  const linalg::SquareMatrix& hessian() const { return hess_; }

  // Picks the pivot of each simplex group and forms the reduced gradient.
  // Returns its max-norm.
  double Reduce(std::span<const double> z) {
    std::fill(reduced_of_.begin(), reduced_of_.end(), -1);
    for (std::size_t g = 0; g < p_.simplex_groups.size(); ++g) {
      int best = p_.simplex_groups[g].front();
      for (int v : p_.simplex_groups[g]) {
        if (z[v] > z[best]) best = v;
      }
      pivot_[g] = best;
    }
    reduced_vars_.clear();
    for (int v = 0; v < n_; ++v) {
      const int g = group_of_[v];
      if (g >= 0 && pivot_[g] == v) continue;
      reduced_of_[v] = static_cast<int>(reduced_vars_.size());
      reduced_vars_.push_back(v);
    }
    for (int a = 0; a < num_reduced_; ++a) {
      const int v = reduced_vars_[a];
      const int p = PivotOf(v);
      reduced_grad_[a] = grad_[v] - (p >= 0 ? grad_[p] : 0.0);
    }
    return kernels_.max_abs(reduced_grad_.data(), num_reduced_);
  }

  // Newton direction for the reduced system; returns lambda^2 or -1 if the
  // Hessian could not be factored.
  double NewtonDirection() {
    for (int a = 0; a < num_reduced_; ++a) {
      const int va = reduced_vars_[a];
      const int pa = PivotOf(va);
      double* out = reduced_hess_.row(a);
      for (int b = 0; b <= a; ++b) {
        const int vb = reduced_vars_[b];
        const int pb = PivotOf(vb);
        double h = hess_(va, vb);
        if (pa >= 0) h -= hess_(pa, vb);
        if (pb >= 0) h -= hess_(va, pb);
        if (pa >= 0 && pb >= 0) h += hess_(pa, pb);
        out[b] = h;
      }
    }
    if (linalg::RegularizedCholesky(reduced_hess_, factor_) < 0.0) return -1.0;
    std::vector<double> d(reduced_grad_.size());
    for (int a = 0; a < num_reduced_; ++a) d[a] = -reduced_grad_[a];
    linalg::CholeskySolve(factor_, d);
    const double lambda2 = -kernels_.dot(reduced_grad_.data(), d.data(), d.size());
    std::fill(direction_.begin(), direction_.end(), 0.0);
    for (int a = 0; a < num_reduced_; ++a) {
      const int v = reduced_vars_[a];
      direction_[v] = d[a];
      const int p = PivotOf(v);
      if (p >= 0) direction_[p] -= d[a];
    }
    return lambda2;
  }

  const std::vector<double>& direction() const { return direction_; }

  // Reduced stationarity residual (times t) with the multipliers moved
  // along direction() to first order:
  //   t*lambda_k = w_k/s_k + w_k (grad g_k . d) / s_k^2
  //   t*nu_v     = 1/(z_v - l_v) - d_v / (z_v - l_v)^2.
  // The multipliers implied by the slacks alone inherit the rounding of
  // slacks near zero, which puts a floor under the plain residual late in
  // the path; the corrected ones do not. +inf if a multiplier goes negative.
  double CorrectedResidual(std::span<const double> z) {
    std::vector<double>& r = corrected_;
    r = grad_;
    for (int v : bounded_) {
      const double slack = z[v] - p_.lower[v];
      const double nu = 1.0 / slack - direction_[v] / (slack * slack);
      if (nu < 0.0) return kInf;
      r[v] += direction_[v] / (slack * slack);
    }
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Row& row = *rows_[k];
      const double slack = -EvaluateRow(row, z);
      touched_.clear();
      AccumulateRowGradient(row, z);
      double gd = 0.0;
      for (int a : touched_) gd += acc_[a] * direction_[a];
      const double w = weight_[k];
      const double lambda = w / slack + w * gd / (slack * slack);
      if (lambda < 0.0) {
        ClearAccumulator();
        return kInf;
      }
      for (int a : touched_) r[a] += w * gd * acc_[a] / (slack * slack);
      ClearAccumulator();
    }
    double worst = 0.0;
    for (int v = 0; v < n_; ++v) {
      if (reduced_of_[v] < 0) continue;
      const int p = PivotOf(v);
      worst = std::max(worst, std::fabs(r[v] - (p >= 0 ? r[p] : 0.0)));
    }
    return worst;
  }

  // Backtracking search along direction(). Returns the accepted step, or 0.
  // A full step that passes the test in the damped regime is stretched
  // while the barrier keeps falling, which shortens long valleys where
  // the quadratic model is pessimistic.
  double LineSearch(std::vector<double>& z, double t, double lambda2,
                    const SolverParams& params) {
    if (!Slacks(z, old_slack_)) return 0.0;
    const double slope = t * kernels_.dot(p_.objective.data(), direction_.data(), n_);
    std::vector<double> trial(n_);
    double step = 1.0;
    double change = 0.0;
    while (step > 1e-18) {
      change = Change(z, step, slope, trial);
      if (std::isfinite(change) &&
          (lambda2 < kFullStepDecrement ||
           change <= -params.armijo_alpha * step * lambda2)) {
        break;
      }
      step *= params.backtrack_beta;
    }
    if (step <= 1e-18) return 0.0;
    if (step == 1.0 && lambda2 > 1.0) {
      std::vector<double> longer(n_);
      for (int doubling = 0; doubling < 20; ++doubling) {
        const double next = Change(z, 2.0 * step, slope, longer);
        if (!(next < change)) break;
        change = next;
        step *= 2.0;
        trial.swap(longer);
      }
    }
    z.swap(trial);
    return step;
  }

 private:
  // Barrier change from z to z + step * direction(), written to `trial`;
  // +inf outside the domain. Works on slack ratios so the large t * c^T z
  // term never enters the difference.
  double Change(std::span<const double> z, double step, double slope,
                std::vector<double>& trial) {
    for (int v = 0; v < n_; ++v) trial[v] = z[v] + step * direction_[v];
    if (!Slacks(trial, new_slack_)) return kInf;
    double change = step * slope;
    for (std::size_t k = 0; k < old_slack_.size(); ++k) {
      change += Weight(k) * std::log(old_slack_[k] / new_slack_[k]);
    }
    return change;
  }

  double Weight(std::size_t slack_index) const {
    return slack_index < weight_.size() ? weight_[slack_index] : 1.0;
  }

  int PivotOf(int v) const {
    const int g = group_of_[v];
    return g >= 0 ? pivot_[g] : -1;
  }

  void Touch(int v, double value) {
    if (!in_acc_[v]) {
      in_acc_[v] = 1;
      touched_.push_back(v);
    }
    acc_[v] += value;
  }

  void AddSym(int a, int b, double value) {
    hess_(a, b) += value;
    if (a != b) hess_(b, a) += value;
  }

  // Sums grad g into acc_ over touched_.
  void AccumulateRowGradient(const Row& row, std::span<const double> z) {
    for (const LinearTerm& term : row.linear) Touch(term.var, term.coef);
    for (const RatioTerm& term : row.ratio) {
      const double b = z[term.denominator];
      if (term.numerator == RatioTerm::kConstantOne) {
        Touch(term.denominator, -term.coef / (b * b));
      } else {
        const double a = z[term.numerator];
        Touch(term.numerator, 2.0 * term.coef * a / b);
        Touch(term.denominator, -term.coef * a * a / (b * b));
      }
    }
  }

  void ClearAccumulator() {
    for (int a : touched_) {
      acc_[a] = 0.0;
      in_acc_[a] = 0;
    }
  }

  void AddRow(const Row& row, double weight, std::span<const double> z) {
    const double inv = -weight / EvaluateRow(row, z);
    touched_.clear();
    AccumulateRowGradient(row, z);
    for (const RatioTerm& term : row.ratio) {
      const double b = z[term.denominator];
      if (term.numerator == RatioTerm::kConstantOne) {
        AddSym(term.denominator, term.denominator,
               inv * 2.0 * term.coef / (b * b * b));
      } else {
        const double a = z[term.numerator];
        AddSym(term.numerator, term.numerator, inv * 2.0 * term.coef / b);
        AddSym(term.numerator, term.denominator,
               -inv * 2.0 * term.coef * a / (b * b));
        AddSym(term.denominator, term.denominator,
               inv * 2.0 * term.coef * a * a / (b * b * b));
      }
    }
    const double inv2 = inv * inv / weight;
    for (int a : touched_) {
      const double ga = acc_[a];
      grad_[a] += inv * ga;
      double* hrow = hess_.row(a);
      for (int b : touched_) hrow[b] += inv2 * ga * acc_[b];
    }
    ClearAccumulator();
  }

  const Program& p_;
  int n_;
  const simd::KernelTable& kernels_;
  std::vector<const Row*> rows_;
  std::vector<double> weight_;
  double barrier_weight_ = 0.0;
  std::vector<int> bounded_;
  std::vector<int> group_of_;

  std::vector<double> acc_;
  std::vector<char> in_acc_;
  std::vector<int> touched_;

  std::vector<double> grad_;
  linalg::SquareMatrix hess_;

  std::vector<int> pivot_;
  std::vector<int> reduced_of_;
  std::vector<int> reduced_vars_;
  int num_reduced_ = 0;
  linalg::SquareMatrix reduced_hess_;
  linalg::SquareMatrix factor_;
  std::vector<double> reduced_grad_;
  std::vector<double> direction_;
  std::vector<double> corrected_;

  std::vector<double> old_slack_;
  std::vector<double> new_slack_;
};

struct RunOutcome {
  Status status = Status::kIterLimit;
  double t = 1.0;
  double residual = kInf;
  int newton_steps = 0;
  // Phase I only.
  bool reached_margin = false;
  bool certified_infeasible = false;
};

// Path-following loop shared by phase I and phase II. For phase I,
// `slack_var` is the max-violation variable: the run stops early once it is
// below -margin or once its dual bound proves it positive.
RunOutcome RunBarrier(const Program& program, std::vector<double>& z,
                      const SolverParams& params, const TraceSink& trace,
                      int slack_var) {
  const bool phase1 = slack_var >= 0;
  Engine engine(program);
  const double m = engine.barrier_weight();
  RunOutcome out;
  double t = 1.0 / params.barrier_mu0;
  const double scale = 1.0 + simd::Kernels().max_abs(program.objective.data(),
                                                      program.objective.size());
  for (int outer = 0; outer < params.max_outer_iters; ++outer) {
    double residual = kInf;
    bool stalled = false;
    int steps_here = 0;
    for (int it = 0;; ++it) {
      if (phase1 && z[slack_var] <= -params.feasibility_margin) {
        out.reached_margin = true;
        out.status = Status::kOptimal;
        out.t = t;
        return out;
      }
      engine.Assemble(z, t);
      residual = engine.Reduce(z) / (t * scale);
      if (residual <= params.newton_tol) break;
      if (it >= params.max_newton_iters) {
        stalled = true;
        break;
      }
      const double objective = engine.ObjectiveDot(z);
      const bool final_stage =
          m / t <= params.outer_tol * (1.0 + std::fabs(objective));
      const double lambda2 = engine.NewtonDirection();
      if (lambda2 < 0.0) {
        stalled = true;
        break;
      }
      if (!final_stage && lambda2 / 2.0 <= kCenterDecrement) break;
      if (final_stage) {
        const double corrected = engine.CorrectedResidual(z) / (t * scale);
        if (corrected <= params.newton_tol) {
          residual = corrected;
          break;
        }
      }
      if (engine.LineSearch(z, t, lambda2, params) == 0.0) {
        stalled = true;
        break;
      }
      ++out.newton_steps;
      ++steps_here;
    }
    const double objective = EvaluateObjective(program, z);
    const double gap = m / t;
    if (trace) {
      trace({phase1, outer, 1.0 / t, objective, residual, steps_here});
    }
    out.t = t;
    out.residual = residual;
    if (phase1 && z[slack_var] - gap > params.feasibility_margin) {
      out.certified_infeasible = true;
      out.status = Status::kOptimal;
      return out;
    }
    if (gap <= params.outer_tol * (1.0 + std::fabs(objective))) {
      out.status = residual <= params.newton_tol ? Status::kOptimal
                                                 : Status::kIterLimit;
      return out;
    }
    if (stalled && residual > 1e3 * params.newton_tol) {
      // Centering failed well away from the path; shrinking mu will not help.
      out.status = Status::kIterLimit;
      return out;
    }
    // Stop at the first t that meets the gap target rather than
    // overshooting it: larger t only pushes slacks toward rounding level.
    const double t_final =
        kFinalStageMargin * m / (params.outer_tol * (1.0 + std::fabs(objective)));
    t = std::min(t * params.barrier_shrink, std::max(t_final, t));
  }
  out.status = Status::kIterLimit;
  return out;
}

bool BoundsStrict(const Program& program, std::span<const double> z) {
  for (int v = 0; v < program.num_vars(); ++v) {
    if (program.kinds[v] != VarKind::kFree && !(z[v] > program.lower[v])) {
      return false;
    }
  }
  return true;
}

}  // namespace

double RowBarrierWeight(const Row& row) {
  return 1.0 + static_cast<double>(row.ratio.size());
}

std::string ToString(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kIterLimit:
      return "iter_limit";
  }
  return "?";
}

int Program::AddVariable(VarKind kind, double lower_bound, double start_value,
                         double objective_coef) {
  kinds.push_back(kind);
  lower.push_back(lower_bound);
  start.push_back(start_value);
  objective.push_back(objective_coef);
  return num_vars() - 1;
}

double EvaluateRow(const Row& row, std::span<const double> z) {
  double g = row.constant;
  for (const LinearTerm& term : row.linear) g += term.coef * z[term.var];
  for (const RatioTerm& term : row.ratio) {
    const double b = z[term.denominator];
    if (term.numerator == RatioTerm::kConstantOne) {
      g += term.coef / b;
    } else {
      const double a = z[term.numerator];
      g += term.coef * a * a / b;
    }
  }
  return g;
}

double EvaluateObjective(const Program& program, std::span<const double> z) {
  double f = program.objective_constant;
  for (int v = 0; v < program.num_vars(); ++v) f += program.objective[v] * z[v];
  return f;
}

double MaxRowValue(const Program& program, std::span<const double> z) {
  double worst = -kInf;
  for (const Row& row : program.rows) worst = std::max(worst, EvaluateRow(row, z));
  return worst;
}

double BarrierObjective(const Program& program, std::span<const double> z,
                        double t) {
  return Engine(program).Value(z, t);
}

void BarrierGradient(const Program& program, std::span<const double> z,
                     double t, std::span<double> grad) {
  Engine engine(program);
  engine.Assemble(z, t);
  std::copy(engine.gradient().begin(), engine.gradient().end(), grad.begin());
}

void BarrierHessian(const Program& program, std::span<const double> z,
                    double t, std::span<double> hessian) {
  Engine engine(program);
  engine.Assemble(z, t);
  const int n = program.num_vars();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hessian[i * n + j] = engine.hessian()(i, j);
  }
}

Phase1Result FindStrictlyFeasible(const Program& program,
                                  const SolverParams& params,
                                  std::span<const double> warm_start,
                                  const TraceSink& trace) {
  Phase1Result result;
  std::vector<double> z(warm_start.begin(), warm_start.end());
  if (z.empty()) z = program.start;
  if (static_cast<int>(z.size()) != program.num_vars() ||
      !BoundsStrict(program, z)) {
    throw std::invalid_argument("phase I start must satisfy the bounds strictly");
  }

  double constant_violation = -kInf;
  double relaxable_max = -kInf;
  for (const Row& row : program.rows) {
    const double g = EvaluateRow(row, z);
    if (row.IsConstant()) {
      constant_violation = std::max(constant_violation, g);
    } else if (row.relaxable) {
      relaxable_max = std::max(relaxable_max, g);
    } else if (!(g < 0.0)) {
      throw std::invalid_argument("phase I start violates a non-relaxable row");
    }
  }
  if (constant_violation > 0.0) {
    result.status = Status::kOptimal;
    result.feasible = false;
    result.max_violation = constant_violation;
    result.point = std::move(z);
    return result;
  }
  if (relaxable_max <= -params.feasibility_margin) {
    result.status = Status::kOptimal;
    result.feasible = true;
    result.max_violation = std::max(relaxable_max, constant_violation);
    result.point = std::move(z);
    return result;
  }

  Program aug = program;
  std::fill(aug.objective.begin(), aug.objective.end(), 0.0);
  aug.objective_constant = 0.0;
  const int slack = aug.AddVariable(VarKind::kFree, 0.0, 0.0, 1.0);
  for (Row& row : aug.rows) {
    if (row.relaxable && !row.IsConstant()) row.linear.push_back({slack, -1.0});
  }
  z.push_back(relaxable_max + 1.0);

  const RunOutcome run = RunBarrier(aug, z, params, trace, slack);
  result.newton_steps = run.newton_steps;
  result.max_violation = z[slack];
  z.pop_back();
  result.point = std::move(z);
  if (run.reached_margin) {
    result.status = Status::kOptimal;
    result.feasible = true;
  } else if (run.certified_infeasible || run.status == Status::kOptimal) {
    result.status = Status::kOptimal;
    result.feasible = false;
  } else {
    result.status = Status::kIterLimit;
  }
  return result;
}

Result Minimize(const Program& program, const SolverParams& params,
                const TraceSink& trace) {
  Result result;
  for (const Row& row : program.rows) {
    if (row.IsConstant() && row.constant > 0.0) {
      result.status = Status::kInfeasible;
      result.max_violation = row.constant;
      return result;
    }
  }
  const Phase1Result start = FindStrictlyFeasible(program, params, {}, trace);
  result.newton_steps = start.newton_steps;
  if (start.status == Status::kIterLimit) {
    result.status = Status::kIterLimit;
    return result;
  }
  if (!start.feasible) {
    result.status = Status::kInfeasible;
    result.max_violation = start.max_violation;
    result.z = start.point;
    return result;
  }
  std::vector<double> z = start.point;
  const RunOutcome run = RunBarrier(program, z, params, trace, -1);
  Engine engine(program);
  result.status = run.status;
  result.newton_steps += run.newton_steps;
  result.objective = EvaluateObjective(program, z);
  result.kkt_residual = run.residual;
  result.mu = 1.0 / run.t;
  result.duality_gap_bound = engine.barrier_weight() / run.t;
  result.z = std::move(z);
  return result;
}

}  // namespace mecoff::convex

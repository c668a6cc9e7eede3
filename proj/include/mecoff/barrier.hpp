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

// Primal log-barrier interior-point method for a small family of convex
// programs:
//
//   minimize    c^T z + c0
//   subject to  sum_{v in G} z_v = 1            for every simplex group G
//               g_k(z) <= 0                     for every row k
//               z_v >= lower_v                  for bounded variables
//
// where every row is a sum of linear terms and quadratic-over-linear terms
// coef * z_a^2 / z_b (coef >= 0, z_b > 0), or coef / z_b. Such rows are
// jointly convex on z_b > 0.
//
// Each row k enters the barrier as -w_k log(-g_k(z)) with w_k = 1 + (number of
// ratio terms in the row). This is what remains of the plain log barrier of
// the epigraph form, where every ratio term gets its own variable u >= term
// and the row becomes linear in u, after minimizing over the u. Centering on
// the weighted barrier takes a handful of Newton steps per stage where the
// unweighted one can take hundreds.
//
// Simplex rows are eliminated at each Newton step by expressing the largest
// member of each group through the others, so the Newton system is a dense
// SPD solve over the remaining variables.

#ifndef MECOFF_BARRIER_HPP_
#define MECOFF_BARRIER_HPP_

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mecoff::convex {

enum class VarKind {
  kSimplexMember,  // belongs to exactly one simplex group, z >= 0
  kBounded,        // z >= lower
  kFree,
};

struct LinearTerm {
  int var;
  double coef;
};

// coef * z[numerator]^2 / z[denominator]; numerator == kConstantOne means the
// term is coef / z[denominator].
struct RatioTerm {
  static constexpr int kConstantOne = -1;
  int numerator;
  int denominator;
  double coef;
};

struct Row {
  double constant = 0.0;
  std::vector<LinearTerm> linear;
  std::vector<RatioTerm> ratio;
  // Phase I may violate relaxable rows; the others must hold at the start.
  bool relaxable = true;

  bool IsConstant() const { return linear.empty() && ratio.empty(); }
};

struct Program {
  std::vector<VarKind> kinds;
  std::vector<double> lower;
  // Satisfies the simplex groups and bounds strictly; rows may be violated.
  std::vector<double> start;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<std::vector<int>> simplex_groups;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(kinds.size()); }
  int AddVariable(VarKind kind, double lower_bound, double start_value,
                  double objective_coef = 0.0);
};

double EvaluateRow(const Row& row, std::span<const double> z);
double RowBarrierWeight(const Row& row);
double EvaluateObjective(const Program& program, std::span<const double> z);

struct SolverParams {
  double barrier_mu0 = 1.0;
  // mu <- mu / barrier_shrink after each centering.
  double barrier_shrink = 10.0;
  // Bound on the KKT stationarity residual at the final center: the
  // mu-scaled reduced gradient divided by 1 + max|c|. On the last stage the
  // multipliers may also be taken one Newton step ahead of the slacks.
  double newton_tol = 1e-8;
  // Stop once m * mu <= outer_tol * (1 + |objective|).
  double outer_tol = 1e-7;
  int max_newton_iters = 50;
  int max_outer_iters = 40;
  double armijo_alpha = 0.01;
  double backtrack_beta = 0.5;
  // Phase I stops once every relaxable row has at least this much slack.
  double feasibility_margin = 1e-9;
};

enum class Status { kOptimal, kInfeasible, kIterLimit };

std::string ToString(Status status);

struct TraceRecord {
  bool phase1 = false;
  int outer_iter = 0;
  double mu = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  int newton_steps = 0;
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct Result {
  Status status = Status::kIterLimit;
  std::vector<double> z;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double kkt_residual = std::numeric_limits<double>::infinity();
  double duality_gap_bound = std::numeric_limits<double>::infinity();
  double mu = 0.0;
  int newton_steps = 0;
  // Phase I outcome; meaningful when status == kInfeasible.
  double max_violation = 0.0;
};

struct Phase1Result {
  Status status = Status::kIterLimit;
  bool feasible = false;
  // Strictly feasible point when feasible, otherwise the phase I minimizer.
  std::vector<double> point;
  // Minimized maximum violation of the relaxable rows (s*).
  double max_violation = 0.0;
  int newton_steps = 0;
};

// Largest row value at z (constant rows included); -inf with no rows.
double MaxRowValue(const Program& program, std::span<const double> z);

// Returns the warm start unchanged when it is already strictly feasible
// with the requested margin; otherwise minimizes the maximum violation.
// An empty warm start means program.start.
Phase1Result FindStrictlyFeasible(const Program& program,
                                  const SolverParams& params,
                                  std::span<const double> warm_start = {},
                                  const TraceSink& trace = {});

Result Minimize(const Program& program, const SolverParams& params,
                const TraceSink& trace = {});

// t * (c^T z) - sum w_k log(-g_k(z)) - sum log(z_v - lower_v). Constant rows
// are skipped. +inf outside the domain.
double BarrierObjective(const Program& program, std::span<const double> z,
                        double t);
// Full (unreduced) gradient of BarrierObjective.
void BarrierGradient(const Program& program, std::span<const double> z,
                     double t, std::span<double> grad);

// Full (unreduced) Hessian of BarrierObjective, row-major n x n.
void BarrierHessian(const Program& program, std::span<const double> z,
                    double t, std::span<double> hessian);

}  // namespace mecoff::convex

#endif  // MECOFF_BARRIER_HPP_

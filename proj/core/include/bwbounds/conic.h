// Copyright 2026 The bwbounds Authors
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

// Conic programs in LMI form:
//
//   minimize    c'x + c0
//   subject to  A x = b
//               x_i >= 0            for i in nonneg
//               F0_k + sum_i x_i Fi_k  PSD   for every block k
//
// solved by an infeasible-start primal-dual interior-point method with the
// HKM search direction and Mehrotra predictor-corrector steps.

#ifndef BWBOUNDS_CONIC_H_
#define BWBOUNDS_CONIC_H_

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

namespace bwbounds {

// One symmetric coefficient entry. `var` is -1 for the constant matrix F0.
// Entries with row != col stand for both (row, col) and (col, row); repeated
// entries add up.
struct LmiEntry {
  int var;
  int row;
  int col;
  double value;
};

struct LmiBlock {
  int order = 0;
  std::vector<LmiEntry> entries;
};

struct LinearRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

struct ConicProblem {
  int num_vars = 0;
  std::vector<double> c;
  double c0 = 0.0;
  std::vector<LinearRow> equalities;
  std::vector<int> nonneg;
  std::vector<LmiBlock> blocks;
  // Pairs of variables constrained equal. Eliminated by substitution.
  std::vector<std::pair<int, int>> var_links;

  // Throws InputError on out-of-range indices or size mismatches.
  void Validate() const;

  // Plain-text dump for cross-checking with other solvers:
  //   vars <n>
  //   obj <c0> followed by "c <var> <value>" lines
  //   eq <row> <var> <value> and "rhs <row> <value>" lines
  //   nonneg <var>, link <i> <j>, block <k> <order>
  //   <block> <var> <row> <col> <value>   one line per LMI entry, var 0 is
  //                                       the constant and var i+1 is x_i
  void Dump(std::ostream& out) const;
};

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnboundedOrInfeasibleDual,
  kMaxIter,
  kNumericFailure,
};

std::string_view ToString(SolveStatus status);

struct SolverOptions {
  double tol = 1e-8;
  int max_iters = 200;
  double regularization = 1e-12;
  int retries = 3;
};

struct Solution {
  SolveStatus status = SolveStatus::kNumericFailure;
  std::vector<double> x;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;  // |primal - dual| / (1 + |primal|)
  // Residuals measured at the returned x and dual point.
  double eq_residual = 0.0;    // max |Ax - b|
  double min_lmi_eig = 0.0;    // smallest eigenvalue over all blocks
  double min_nonneg = 0.0;     // smallest constrained entry of x
  double dual_residual = 0.0;  // max |c - A'l - A*(Y) - z|
  int iterations = 0;

  // Largest violation among the four residuals (zero when all satisfied).
  double max_residual() const;
};

// Deterministic for identical input.
Solution Solve(const ConicProblem& problem, const SolverOptions& options = {});

// dual_obj - 10 (gap + max residual) - 1e-9. Valid for optimal and max_iter
// solutions with a finite dual objective; throws BoundError otherwise.
double SafeLowerBound(const Solution& solution);

}  // namespace bwbounds

#endif  // BWBOUNDS_CONIC_H_

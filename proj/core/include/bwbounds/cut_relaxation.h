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

// The symmetry-reduced semidefinite relaxation of the quadratic assignment
// min tr(X' A X B) with B a cut graph. The lifted matrix is restricted to
// span{B_j} (x) span{A_i}, so the variables are
//
//   y[j][i]  with  X_j = sum_i y[j][i] A_i,  j = 1..12 cut labels,
//
// and sum_j X_j = J, tr(J X_j) = q_j, X_j' = X_{j*}, X_j >= 0. The PSD
// condition sum_j q_j^-1 B_j (x) X_j >= 0 is block-diagonalized on the
// cut side; on the A side it either stays as full matrices or, for
// symmetric association schemes, splits further along common eigenspaces.
//
// The lifted matrix has a known null space (u (x) 1 and 1 (x) w with u, w
// orthogonal to 1). Each block gets the projector onto that null space
// added, together with the linear equalities that make the matrix vanish
// on it. The two formulations are equivalent, and the shifted one admits
// strictly feasible points, which interior-point methods need.

#ifndef BWBOUNDS_CUT_RELAXATION_H_
#define BWBOUNDS_CUT_RELAXATION_H_

#include <array>
#include <vector>

#include "bwbounds/conic.h"
#include "bwbounds/symmetry.h"

namespace bwbounds {

struct CutRelaxationSpec {
  std::array<int, 3> b_sizes{};
  // Per A-class: 1 if the class lies inside the edge set, 0 if disjoint.
  std::vector<char> class_is_edge;
  // Optional linear term: diag_linear[P][i] multiplies y[diag(P)][i] for a
  // diagonal class i. Empty vectors mean zero.
  std::array<std::vector<double>, 3> diag_linear;
  double constant = 0.0;
  int max_vars = 5000;
};

struct CutRelaxation {
  CoherentConfig a;
  CutConfig b;
  PhiImage phi;
  // var_of[label][class]: variable index, or -1 when forced to zero.
  std::array<std::vector<int>, CutConfig::kNumLabels + 1> var_of;
  ConicProblem problem;

  int num_vars() const { return problem.num_vars; }
};

// Builds variables, equalities, objective and the unreduced LMI blocks
// (three scalar-type blocks of order N, one of order N * #nonempty parts).
// Throws InputError for inconsistent sizes and BoundError when the
// variable count exceeds spec.max_vars.
CutRelaxation BuildCutRelaxation(const CoherentConfig& a, const CutRelaxationSpec& spec);

// LMI blocks over the full A-side matrices.
std::vector<LmiBlock> FullBlocks(const CutRelaxation& rel);

// LMI blocks of orders 1 and (#nonempty parts), one family per eigenspace
// of a symmetric scheme on the A side. Throws InputError when the spectrum
// does not match the configuration.
std::vector<LmiBlock> SchemeBlocks(const CutRelaxation& rel, const SchemeSpectrum& spectrum);

}  // namespace bwbounds

#endif  // BWBOUNDS_CUT_RELAXATION_H_

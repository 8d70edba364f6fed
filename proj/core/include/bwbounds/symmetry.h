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

// Combinatorial symmetry: coherent configurations computed by 2-dimensional
// Weisfeiler-Leman refinement, orbit classes of ordered vertex pairs,
// configurations on punctured vertex sets, the 12-class configuration of the
// cut graph together with its block-diagonalizing *-isomorphism, and common
// eigenspaces of symmetric association schemes.

#ifndef BWBOUNDS_SYMMETRY_H_
#define BWBOUNDS_SYMMETRY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bwbounds/graph.h"

namespace bwbounds {

// A partition of the n*n ordered pairs of a ground set into `rank` classes
// closed under transposition and products. Classes are numbered by first
// occurrence in row-major order.
struct CoherentConfig {
  int n = 0;
  int rank = 0;
  std::vector<int> class_of;         // n*n, row-major
  std::vector<int> diag_classes;     // classes covering the diagonal
  std::vector<int> transpose_of;     // involution on classes
  std::vector<int64_t> sizes;        // number of pairs in each class
  std::vector<int> row_fiber;        // diagonal class of the row vertex
  std::vector<int> col_fiber;        // diagonal class of the column vertex
  std::vector<std::pair<int, int>> representative;  // first pair per class

  int at(int u, int v) const { return class_of[u * n + v]; }
  bool is_diagonal(int k) const { return row_fiber[k] == k; }
  // Diagonal class of vertex u.
  int fiber(int u) const { return class_of[u * n + u]; }
  bool IsSymmetric() const;
};

// Returns a description of the first violated coherent-configuration axiom,
// or nullopt. Exhaustive O(n^3) counting.
std::optional<std::string> VerifyCoherent(const CoherentConfig& cfg);

// True iff all structure constants satisfy p_ij^k = p_ji^k.
bool IsCommutative(const CoherentConfig& cfg);

// Coarsest coherent configuration refining `initial` (n*n row-major pair
// colors; any integers). The coloring is first made transpose-consistent by
// pairing each color with that of the transposed pair and with the diagonal
// flag, then refined to a fixed point.
CoherentConfig WLClosure(int n, std::span<const int> initial);

struct OrbitClasses {
  CoherentConfig closure;
  // Nondiagonal classes of the closure, in class-number order.
  std::vector<int> class_ids;
  std::vector<std::pair<int, int>> representative;  // lexicographically first
  std::vector<bool> is_edge;

  int t() const { return static_cast<int>(class_ids.size()); }
};

// Closure of the diagonal / edge / nonedge coloring of g.
OrbitClasses EdgeOrbitClasses(const Graph& g);

// Vertices of g other than r1 and r2, increasing.
std::vector<int> PuncturedVertices(int n, int r1, int r2);

// Closure on all of V of the coloring (adj(u,v), u == v, u == r1, u == r2,
// v == r1, v == r2): the combinatorial counterpart of the pointwise
// stabilizer of r1 and r2 acting on V. Its rank is the orbital count of that
// stabilizer whenever the two coincide.
CoherentConfig StabilizerConfig(const Graph& g, int r1, int r2);

// Restriction to a union of fibers (e.g. PuncturedVertices of a stabilizer
// configuration), renumbered canonically. Throws InputError if `vertices`
// is not a union of fibers.
CoherentConfig RestrictConfig(const CoherentConfig& cfg, std::span<const int> vertices);

// The cut graph configuration on three consecutive parts of sizes
// (a, b, c). Classes keep their fixed labels 1..12:
//   1 diag(P1)   2 off(P1)   3 P1->P2   4 P1->P3
//   5 P2->P1     6 diag(P2)  7 off(P2)  8 P2->P3
//   9 P3->P1    10 P3->P2   11 diag(P3) 12 off(P3)
// Classes with no pairs are reported as absent.
struct CutConfig {
  static constexpr int kNumLabels = 12;

  std::array<int, 3> part_sizes{};
  std::array<int64_t, kNumLabels + 1> q{};  // q[label], index 0 unused

  int n() const { return part_sizes[0] + part_sizes[1] + part_sizes[2]; }
  bool present(int label) const { return q[label] > 0; }
  int label_at(int u, int v) const;
  int part_of(int u) const;

  static int RowPart(int label);
  static int ColPart(int label);
  static int Transpose(int label);
  static bool IsDiagonalLabel(int label);
  static int DiagonalLabel(int part);
  static int OffDiagonalLabel(int part);
  static int CrossLabel(int from_part, int to_part);

  // Present classes renumbered canonically (first occurrence, row-major).
  CoherentConfig ToCoherentConfig() const;
};

// Image of one basis matrix under the *-isomorphism onto
// C + C + C + C^{3x3}: one scalar per part (the action on vectors summing to
// zero inside that part) and a 3x3 block (the action on part indicators,
// normalized).
struct PhiBlocks {
  std::array<double, 3> scalar{};
  Eigen::Matrix3d block = Eigen::Matrix3d::Zero();
};

struct PhiImage {
  std::array<PhiBlocks, CutConfig::kNumLabels + 1> of{};  // index 0 unused

  // Linear extension to an element sum_j coeff[j] B_j of the algebra.
  PhiBlocks Apply(std::span<const double> coeff_by_label) const;
};

// Throws InputError when all parts are empty or a size is negative.
std::pair<CutConfig, PhiImage> MakeCutConfig(int a, int b, int c);

// Common eigenspaces of a symmetric (hence commutative) association scheme.
// Eigenspace 0 is the span of the all-ones vector.
struct SchemeSpectrum {
  std::vector<int> multiplicity;
  Eigen::MatrixXd eigenvalues;  // (#eigenspaces) x rank, P[e][k]

  int num_eigenspaces() const { return static_cast<int>(multiplicity.size()); }
};

// Diagonalizes a seeded random combination of the basis matrices and reads
// eigenvalues off Rayleigh quotients. Throws InputError for non-symmetric or
// non-commutative input and BoundError if eigenspaces cannot be separated
// after three reseeded attempts.
SchemeSpectrum ComputeSchemeSpectrum(const CoherentConfig& cfg,
                                     uint64_t seed = 0x5eed);

}  // namespace bwbounds

#endif  // BWBOUNDS_SYMMETRY_H_

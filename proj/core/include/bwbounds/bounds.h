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

// Lower bounds on the minimum cut between two parts of prescribed sizes,
// and their conversion to bandwidth lower bounds.
//
// For m = (m1, m2, m3), OPT_MC(m) is the fewest edges between S1 and S2
// over partitions (S1, S2, S3) of V with |Si| = mi. Any labeling with
// bandwidth b <= m3 would put no edges between the first m1 and last m2
// labels, so a positive cut bound alpha forces bandwidth > m3, and larger
// alpha pushes further. Three relaxations are offered:
//
//   eig  closed form from two Laplacian eigenvalues
//   qap  semidefinite relaxation of the quadratic assignment form,
//        reduced by the Weisfeiler-Leman closure of the graph
//   fix  minimum over subproblems that pin one pair of vertices from each
//        orbit class of pairs onto a fixed cut edge
//
// Semidefinite values are taken from SafeLowerBound, never from the primal
// objective.

#ifndef BWBOUNDS_BOUNDS_H_
#define BWBOUNDS_BOUNDS_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bwbounds/conic.h"
#include "bwbounds/cut_relaxation.h"
#include "bwbounds/graph.h"
#include "bwbounds/symmetry.h"

namespace bwbounds {

struct PartitionM {
  int m1 = 1;
  int m2 = 1;
  int m3 = 0;

  int n() const { return m1 + m2 + m3; }
  // Throws InputError unless m1, m2 >= 1, m3 >= 0 and the sum is n.
  void Validate(int n) const;
  std::string ToString() const;  // "[m1,m2,m3]"

  friend auto operator<=>(const PartitionM&, const PartitionM&) = default;
};

enum class Method { kEig, kQap, kFix };

std::string_view ToString(Method method);
// Accepts "eig", "qap", "fix". Throws InputError otherwise.
Method ParseMethod(std::string_view text);

struct EigBound {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double lambda2 = 0.0;
  double lambda_max = 0.0;
  double value = 0.0;
};

struct SubproblemValue {
  int h = 0;
  std::pair<int, int> rep;
  int classes = 0;  // rank of the configuration on the punctured set
  int vars = 0;
  double mu = 0.0;  // safe lower bound of the subproblem
  double gap = 0.0;
  double max_residual = 0.0;
  int iterations = 0;
};

struct McBound {
  Method method = Method::kEig;
  PartitionM m;
  double alpha = 0.0;
  int bandwidth_lb = 0;
  // Solver statistics. For fix these are the worst over subproblems.
  double gap = 0.0;
  double max_residual = 0.0;
  int iterations = 0;
  int vars = 0;
  std::vector<SubproblemValue> sub;
};

struct BoundOptions {
  SolverOptions solver;
  int max_vars = 5000;
  // Split symmetric association schemes along their eigenspaces.
  bool use_scheme = true;
  // 0 means std::thread::hardware_concurrency().
  int workers = 0;
};

// Per-graph data shared across many partition vectors. Thread-safe.
class BoundContext {
 public:
  explicit BoundContext(const Graph& g);

  const Graph& graph() const { return graph_; }
  const LaplacianSpectrum& laplacian() const;
  const OrbitClasses& orbits() const;
  // Spectrum of the closure when it is a symmetric association scheme.
  const SchemeSpectrum* scheme() const;
  // Closure of the pointwise stabilizer of the representative of class h,
  // restricted to the other n - 2 vertices.
  std::shared_ptr<const CoherentConfig> punctured(int h) const;

 private:
  Graph graph_;
  mutable std::once_flag laplacian_once_, orbits_once_, scheme_once_;
  mutable std::optional<LaplacianSpectrum> laplacian_;
  mutable std::optional<OrbitClasses> orbits_;
  mutable std::optional<SchemeSpectrum> scheme_;
  mutable std::mutex punctured_mu_;
  mutable std::map<int, std::shared_ptr<const CoherentConfig>> punctured_;
};

// mu_{1,2} = (-m1 m2 +- sqrt(m1 m2 (n-m1)(n-m2))) / n and
// value = -mu2 lambda2 / 2 - mu1 lambda_max / 2.
EigBound EigenvalueBound(const LaplacianSpectrum& spectrum, const PartitionM& m);
EigBound EigenvalueBound(const Graph& g, const PartitionM& m);

// max(m3 + 1, m3 + ceil(sqrt(2 alpha)) - 1), or 0 when alpha <= 0.
int BandwidthFromMincutBasic(double alpha, int m3);
// Max of the basic conversion and m3 + b, b the least integer with
// b (b + 1) / 2 >= ceil(alpha). 0 when alpha <= 0. Alpha is lowered by
// 1e-6 before any ceiling.
int BandwidthFromMincut(double alpha, int m3);

// Eigenvalue bound as an McBound. The bandwidth uses the basic conversion:
// the closed form is a bound on a continuous relaxation, and the improved
// conversion's integrality argument is applied to the SDP methods only.
McBound McEig(const BoundContext& ctx, const PartitionM& m);

// MC_QAP over the closure of g, with full LMI blocks.
CutRelaxation BuildMcQap(const BoundContext& ctx, const PartitionM& m, int max_vars = 5000);
// Replaces the LMI blocks by per-eigenspace blocks of orders 1 and up to 3.
void ReduceMcQapScheme(CutRelaxation& rel, const SchemeSpectrum& spectrum);
McBound McQap(const BoundContext& ctx, const PartitionM& m, const BoundOptions& options = {});

struct FixSubproblem {
  int h = 0;
  std::pair<int, int> rep;
  std::vector<int> alpha;  // the n - 2 remaining vertices
  // Linear cost of assigning alpha[x] to the x-th remaining cut position:
  // 2 adj(x, r1) [position in part 2] + 2 adj(x, r2) [position in part 1].
  Eigen::MatrixXd chat;
  double dh = 0.0;  // 2 adj(r1, r2)
  CutRelaxation relaxation;
};

// Subproblem h (index into ctx.orbits()) of MC_fix. Requires n >= 3.
FixSubproblem BuildFixSubproblem(const BoundContext& ctx, const PartitionM& m, int h,
                                 int max_vars = 5000);
// Solves all subproblems; alpha is their minimum. Any failed subproblem
// throws BoundError.
McBound McFix(const BoundContext& ctx, const PartitionM& m, const BoundOptions& options = {});

McBound ComputeBound(const BoundContext& ctx, Method method, const PartitionM& m,
                     const BoundOptions& options = {});

struct ScanOptions {
  // Smallest m3 considered. Negative: 0 for eig, and for qap/fix the m3 of
  // the best eigenvalue partition.
  int m3_min = -1;
  // Maximum number of relaxations solved; 0 is unlimited.
  int budget = 0;
  // Stop once the bound reaches this value (e.g. a known upper bound).
  std::optional<int> stop_at;
  // A bound already known from elsewhere; candidates that cannot exceed it
  // are skipped. If none is solved the result has bandwidth_lb 0.
  int floor = 0;
  BoundOptions bound;
  // Replaces ComputeBound for each candidate when set (e.g. a cache).
  std::function<McBound(Method, const PartitionM&)> evaluate;
};

// Partitions with m1 <= m2. eig is exhaustive; the best is the largest
// bandwidth bound, then the largest m3, the largest alpha, and the
// lexicographically smallest m. qap and fix visit candidates in decreasing
// order of the converted eigenvalue bound (ties: larger m3, then smaller
// m), skip those where even alpha = min(m1 m2, |E|) cannot beat the
// incumbent, and keep the first partition reaching the best value.
// Throws InputError when no partition satisfies m3 >= m3_min.
McBound Scan(const BoundContext& ctx, Method method, const ScanOptions& options = {});

// All partitions with m1 <= m2 and m3 >= m3_min in lexicographic order.
std::vector<PartitionM> EnumeratePartitions(int n, int m3_min = 0);

// Exact OPT_MC. Counts C(n, m1) C(n - m1, m2) partitions against `cap`
// and throws InputError above it.
int64_t BruteForceMincut(const Graph& g, const PartitionM& m, int64_t cap = 10'000'000);

}  // namespace bwbounds

#endif  // BWBOUNDS_BOUNDS_H_

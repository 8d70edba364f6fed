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

#include "bwbounds/symmetry.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

Graph Build(const char* text) { return BuildGraph(GraphSpec::Parse(text)); }

std::vector<std::vector<int>> Automorphisms(const Graph& g) {
  std::vector<int> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  const auto edges = g.Edges();
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (auto [u, v] : edges) {
      if (!g.adjacent(p[u], p[v])) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Orbits of `group` on ordered pairs, as a canonical labeling of the n*n
// pairs (first occurrence order).
std::vector<int> PairOrbits(int n, const std::vector<std::vector<int>>& group) {
  std::vector<int> label(n * n, -1);
  int next = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (label[u * n + v] >= 0) continue;
      for (const auto& p : group) label[p[u] * n + p[v]] = next;
      ++next;
    }
  }
  return label;
}

// True iff two pair colorings induce the same partition.
bool SamePartition(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, int> ab, ba;
  for (size_t i = 0; i < a.size(); ++i) {
    auto [it1, new1] = ab.emplace(a[i], b[i]);
    auto [it2, new2] = ba.emplace(b[i], a[i]);
    if (it1->second != b[i] || it2->second != a[i]) return false;
  }
  return true;
}

std::vector<int> AdjacencyColoring(const Graph& g) {
  std::vector<int> c(g.n() * g.n());
  for (int u = 0; u < g.n(); ++u) {
    for (int v = 0; v < g.n(); ++v) c[u * g.n() + v] = u == v ? 2 : (g.adjacent(u, v) ? 1 : 0);
  }
  return c;
}

TEST(WLClosureTest, CompleteGraphHasRankTwo) {
  const Graph k5 = Build("hamming:1,5");
  const CoherentConfig cfg = WLClosure(5, AdjacencyColoring(k5));
  EXPECT_EQ(cfg.rank, 2);
  EXPECT_EQ(EdgeOrbitClasses(k5).t(), 1);
}

TEST(WLClosureTest, MatchesBruteForceOrbitalsOnPetersenAndCube) {
  for (const char* text : {"kneser:5,2", "hamming:3,2"}) {
    const Graph g = Build(text);
    const auto group = Automorphisms(g);
    const CoherentConfig cfg = EdgeOrbitClasses(g).closure;
    const auto orbits = PairOrbits(g.n(), group);
    EXPECT_TRUE(SamePartition(cfg.class_of, orbits)) << text;
    EXPECT_EQ(cfg.rank, *std::max_element(orbits.begin(), orbits.end()) + 1) << text;
  }
  EXPECT_EQ(EdgeOrbitClasses(Build("kneser:5,2")).closure.rank, 3);
}

TEST(WLClosureTest, StabilizerMatchesBruteForceStabilizerOrbitals) {
  for (const char* text : {"kneser:5,2", "hamming:3,2"}) {
    const Graph g = Build(text);
    const auto group = Automorphisms(g);
    const OrbitClasses oc = EdgeOrbitClasses(g);
    for (int h = 0; h < oc.t(); ++h) {
      const auto [r1, r2] = oc.representative[h];
      std::vector<std::vector<int>> stab;
      for (const auto& p : group) {
        if (p[r1] == r1 && p[r2] == r2) stab.push_back(p);
      }
      const CoherentConfig cfg = StabilizerConfig(g, r1, r2);
      const auto orbits = PairOrbits(g.n(), stab);
      EXPECT_TRUE(SamePartition(cfg.class_of, orbits)) << text << " class " << h;
    }
  }
}

TEST(WLClosureTest, AxiomsAndIdempotence) {
  for (const char* text : {"kneser:5,2", "johnson:6,3", "hamming:3,3", "genhamming:2,3,3"}) {
    const Graph g = Build(text);
    const CoherentConfig cfg = EdgeOrbitClasses(g).closure;
    EXPECT_EQ(VerifyCoherent(cfg), std::nullopt) << text;
    const CoherentConfig again = WLClosure(g.n(), cfg.class_of);
    EXPECT_EQ(again.class_of, cfg.class_of) << text;
    EXPECT_EQ(std::accumulate(cfg.sizes.begin(), cfg.sizes.end(), int64_t{0}),
              int64_t{g.n()} * g.n());

    const auto [r1, r2] = EdgeOrbitClasses(g).representative[0];
    const CoherentConfig st = StabilizerConfig(g, r1, r2);
    EXPECT_EQ(VerifyCoherent(st), std::nullopt) << text;
    const CoherentConfig punct = RestrictConfig(st, PuncturedVertices(g.n(), r1, r2));
    EXPECT_EQ(VerifyCoherent(punct), std::nullopt) << text;
    EXPECT_EQ(punct.n, g.n() - 2);
  }
}

TEST(WLClosureTest, CutGraphHasRankTwelve) {
  // K_{2,3} plus four isolated vertices.
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 2; ++u) {
    for (int v = 2; v < 5; ++v) edges.emplace_back(u, v);
  }
  const Graph g = Graph::FromEdges(9, edges);
  EXPECT_EQ(EdgeOrbitClasses(g).closure.rank, 12);
  auto [cut, phi] = MakeCutConfig(2, 3, 4);
  EXPECT_EQ(cut.ToCoherentConfig().rank, 12);
  EXPECT_EQ(VerifyCoherent(cut.ToCoherentConfig()), std::nullopt);
}

TEST(OrbitClassesTest, CountsAndRepresentatives) {
  EXPECT_EQ(EdgeOrbitClasses(Build("hamming:3,3")).t(), 3);
  EXPECT_EQ(EdgeOrbitClasses(Build("johnson:8,4")).t(), 4);
  const OrbitClasses oc = EdgeOrbitClasses(Build("hamming:3,2"));
  std::set<int> seen;
  for (int h = 0; h < oc.t(); ++h) {
    const auto [u, v] = oc.representative[h];
    EXPECT_TRUE(seen.insert(oc.closure.at(u, v)).second);
    // Lexicographically first pair of its class.
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        if (oc.closure.at(a, b) == oc.class_ids[h]) {
          EXPECT_LE(std::pair(u, v), std::pair(a, b));
        }
      }
    }
  }
  EXPECT_TRUE(oc.is_edge[0]);
}

// Full 0/1 matrix of cut label j.
Eigen::MatrixXd LabelMatrix(const CutConfig& cut, int label) {
  const int n = cut.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) m(u, v) = cut.label_at(u, v) == label;
  }
  return m;
}

// Coefficients of an element of the cut algebra in the basis B_1..B_12.
std::vector<double> Coefficients(const CutConfig& cut, const Eigen::MatrixXd& x) {
  std::vector<double> c(CutConfig::kNumLabels + 1, 0.0);
  const int n = cut.n();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) c[cut.label_at(u, v)] = x(u, v);
  }
  return c;
}

double BlockDistance(const PhiBlocks& a, const PhiBlocks& b) {
  double d = (a.block - b.block).cwiseAbs().maxCoeff();
  for (int p = 0; p < 3; ++p) d = std::max(d, std::abs(a.scalar[p] - b.scalar[p]));
  return d;
}

PhiBlocks Multiply(const PhiBlocks& a, const PhiBlocks& b) {
  PhiBlocks c;
  for (int p = 0; p < 3; ++p) c.scalar[p] = a.scalar[p] * b.scalar[p];
  c.block = a.block * b.block;
  return c;
}

TEST(CutConfigTest, FirstImageAndSizes) {
  auto [cut, phi] = MakeCutConfig(3, 4, 5);
  const PhiBlocks& b1 = phi.of[1];
  EXPECT_EQ(b1.scalar[0], 1.0);
  EXPECT_EQ(b1.scalar[1], 0.0);
  EXPECT_EQ(b1.scalar[2], 0.0);
  Eigen::Matrix3d e11 = Eigen::Matrix3d::Zero();
  e11(0, 0) = 1.0;
  EXPECT_LE((b1.block - e11).cwiseAbs().maxCoeff(), 1e-15);

  int64_t total = 0;
  for (int j = 1; j <= 12; ++j) total += cut.q[j];
  EXPECT_EQ(total, 12 * 12);

  auto [thin, thin_phi] = MakeCutConfig(3, 1, 2);
  EXPECT_FALSE(thin.present(7));
  total = 0;
  for (int j = 1; j <= 12; ++j) total += thin.q[j];
  EXPECT_EQ(total, 36);
  EXPECT_THROW(MakeCutConfig(0, 0, 0), InputError);
}

TEST(CutConfigTest, TransposePairs) {
  const std::map<int, int> pairs = {{3, 5}, {5, 3}, {4, 9}, {9, 4}, {8, 10}, {10, 8}};
  for (int j = 1; j <= 12; ++j) {
    const auto it = pairs.find(j);
    EXPECT_EQ(CutConfig::Transpose(j), it == pairs.end() ? j : it->second);
  }
  auto [cut, phi] = MakeCutConfig(2, 3, 4);
  for (int j = 1; j <= 12; ++j) {
    EXPECT_TRUE(LabelMatrix(cut, j).transpose() == LabelMatrix(cut, CutConfig::Transpose(j)));
    const PhiBlocks& a = phi.of[j];
    const PhiBlocks& at = phi.of[CutConfig::Transpose(j)];
    EXPECT_LE((a.block.transpose() - at.block).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(CutConfigTest, ProductOfCrossClasses) {
  const int a = 3, b = 4, c = 2;
  auto [cut, phi] = MakeCutConfig(a, b, c);
  const Eigen::MatrixXd prod = LabelMatrix(cut, 3) * LabelMatrix(cut, 5);
  EXPECT_TRUE(prod == b * (LabelMatrix(cut, 1) + LabelMatrix(cut, 2)));
  PhiBlocks rhs = phi.Apply(Coefficients(cut, prod));
  EXPECT_LE(BlockDistance(Multiply(phi.of[3], phi.of[5]), rhs), 1e-12);
}

TEST(CutConfigTest, PhiIsMultiplicativeAndUnital) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto sizes : {std::array{2, 3, 4}, std::array{3, 3, 5}, std::array{4, 2, 2}}) {
    auto [cut, phi] = MakeCutConfig(sizes[0], sizes[1], sizes[2]);
    std::vector<Eigen::MatrixXd> basis(13);
    for (int j = 1; j <= 12; ++j) basis[j] = LabelMatrix(cut, j);

    std::vector<double> unit(13, 0.0);
    unit[1] = unit[6] = unit[11] = 1.0;
    const PhiBlocks id = phi.Apply(unit);
    EXPECT_LE((id.block - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    for (int p = 0; p < 3; ++p) EXPECT_EQ(id.scalar[p], 1.0);

    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(13, 0.0), y(13, 0.0);
      Eigen::MatrixXd mx = Eigen::MatrixXd::Zero(cut.n(), cut.n());
      Eigen::MatrixXd my = mx;
      for (int j = 1; j <= 12; ++j) {
        x[j] = unif(rng);
        y[j] = unif(rng);
        mx += x[j] * basis[j];
        my += y[j] * basis[j];
      }
      const PhiBlocks lhs = phi.Apply(Coefficients(cut, mx * my));
      const PhiBlocks rhs = Multiply(phi.Apply(x), phi.Apply(y));
      double norm_x = 0, norm_y = 0;
      for (int j = 1; j <= 12; ++j) {
        norm_x = std::max(norm_x, std::abs(x[j]));
        norm_y = std::max(norm_y, std::abs(y[j]));
      }
      EXPECT_LE(BlockDistance(lhs, rhs), 1e-8 * cut.n() * norm_x * norm_y);
    }
  }
}

TEST(SchemeSpectrumTest, CompleteGraph) {
  const Graph k6 = Build("hamming:1,6");
  const CoherentConfig cfg = EdgeOrbitClasses(k6).closure;
  const SchemeSpectrum s = ComputeSchemeSpectrum(cfg);
  ASSERT_EQ(s.num_eigenspaces(), 2);
  const int id = cfg.fiber(0), other = 1 - id;
  EXPECT_EQ(s.multiplicity[0], 1);
  EXPECT_EQ(s.multiplicity[1], 5);
  EXPECT_NEAR(s.eigenvalues(0, other), 5.0, 1e-9);
  EXPECT_NEAR(s.eigenvalues(1, other), -1.0, 1e-9);
  for (int e = 0; e < 2; ++e) EXPECT_NEAR(s.eigenvalues(e, id), 1.0, 1e-12);
}

TEST(SchemeSpectrumTest, CubeDistanceOneClass) {
  const Graph q3 = Build("hamming:3,2");
  const CoherentConfig cfg = EdgeOrbitClasses(q3).closure;
  const SchemeSpectrum s = ComputeSchemeSpectrum(cfg);
  const int a1 = cfg.at(0, 1);
  // Oracle: dense eigenvalues of the adjacency matrix.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q3.AdjacencyMatrix());
  std::multiset<long> dense, scheme;
  for (int i = 0; i < 8; ++i) dense.insert(std::lround(es.eigenvalues()[i]));
  for (int e = 0; e < s.num_eigenspaces(); ++e) {
    EXPECT_NEAR(s.eigenvalues(e, a1), std::round(s.eigenvalues(e, a1)), 1e-9);
    for (int k = 0; k < s.multiplicity[e]; ++k) scheme.insert(std::lround(s.eigenvalues(e, a1)));
  }
  EXPECT_EQ(dense, scheme);
  EXPECT_EQ(dense, (std::multiset<long>{3, 1, 1, 1, -1, -1, -1, -3}));
}

TEST(SchemeSpectrumTest, RowSumsAndIdentity) {
  for (const char* text : {"johnson:7,3", "hamming:3,3", "genhamming:2,3,4"}) {
    const Graph g = Build(text);
    const CoherentConfig cfg = EdgeOrbitClasses(g).closure;
    const SchemeSpectrum s = ComputeSchemeSpectrum(cfg);
    EXPECT_EQ(std::accumulate(s.multiplicity.begin(), s.multiplicity.end(), 0), g.n());
    for (int e = 0; e < s.num_eigenspaces(); ++e) {
      EXPECT_NEAR(s.eigenvalues.row(e).sum(), e == 0 ? g.n() : 0.0, 1e-8) << text;
      EXPECT_NEAR(s.eigenvalues(e, cfg.fiber(0)), 1.0, 1e-10);
    }
  }
}

TEST(SchemeSpectrumTest, RejectsNonCommutative) {
  const Graph q3 = Build("hamming:3,2");
  EXPECT_THROW(ComputeSchemeSpectrum(StabilizerConfig(q3, 0, 1)), InputError);
}

}  // namespace
}  // namespace bwbounds

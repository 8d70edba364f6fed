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

#include "bwbounds/graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

Graph Build(const char* text) { return BuildGraph(GraphSpec::Parse(text)); }

int Girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (int s = 0; s < g.n(); ++s) {
    std::vector<int> dist(g.n(), -1), parent(g.n(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

// Characteristic polynomial det(xI - M) of an integer matrix by
// Faddeev-LeVerrier, exact in 64-bit for small orders.
std::vector<int64_t> CharPoly(const std::vector<std::vector<int64_t>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int64_t> c(n + 1, 0);
  c[n] = 1;
  std::vector<std::vector<int64_t>> mk(n, std::vector<int64_t>(n, 0));
  for (int k = 1; k <= n; ++k) {
    // mk = M * (mk_prev + c[n-k+1] I)
    std::vector<std::vector<int64_t>> prev = mk;
    for (int i = 0; i < n; ++i) prev[i][i] += c[n - k + 1];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int64_t s = 0;
        for (int l = 0; l < n; ++l) s += m[i][l] * prev[l][j];
        mk[i][j] = s;
      }
    }
    int64_t tr = 0;
    for (int i = 0; i < n; ++i) tr += mk[i][i];
    EXPECT_EQ(tr % k, 0);
    c[n - k] = -tr / k;
  }
  return c;
}

std::vector<int64_t> PolyFromRoots(const std::vector<int>& roots) {
  std::vector<int64_t> p = {1};
  for (int r : roots) {
    std::vector<int64_t> q(p.size() + 1, 0);
    for (size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = q;
  }
  return p;
}

TEST(GraphSpecTest, ParsesFamilies) {
  EXPECT_EQ(GraphSpec::Parse("hamming:3,3").ToString(), "hamming:3,3");
  EXPECT_EQ(GraphSpec::Parse("genhamming:2,3,4").family, Family::kGenHamming);
  EXPECT_EQ(GraphSpec::Parse("file:x.txt").path, "x.txt");
  EXPECT_THROW(GraphSpec::Parse("cube:3"), InputError);
  EXPECT_THROW(Build("johnson:6,4"), InputError);
  EXPECT_THROW(Build("kneser:5,0"), InputError);
  EXPECT_THROW(Build("hamming:3"), InputError);
}

TEST(BuildGraphTest, FamilySizesAndDegrees) {
  const Graph h33 = Build("hamming:3,3");
  EXPECT_EQ(h33.n(), 27);
  for (int v = 0; v < 27; ++v) EXPECT_EQ(h33.degree(v), 6);

  const Graph petersen = Build("kneser:5,2");
  EXPECT_EQ(petersen.n(), 10);
  for (int v = 0; v < 10; ++v) EXPECT_EQ(petersen.degree(v), 3);
  EXPECT_EQ(Girth(petersen), 5);

  const Graph j63 = Build("johnson:6,3");
  EXPECT_EQ(j63.n(), 20);
  for (int v = 0; v < 20; ++v) EXPECT_EQ(j63.degree(v), 9);

  const Graph gh = Build("genhamming:2,3,4");
  EXPECT_EQ(gh.n(), 24);
  for (int v = 0; v < 24; ++v) EXPECT_EQ(gh.degree(v), 1 + 2 + 3);
}

TEST(BuildGraphTest, CanonicalOrderAndDeterminism) {
  // Lexicographic tuples: vertex 0 = (0,0), vertex 1 = (0,1).
  const Graph h = Build("hamming:2,3");
  EXPECT_TRUE(h.adjacent(0, 1));
  EXPECT_TRUE(h.adjacent(0, 3));
  EXPECT_FALSE(h.adjacent(0, 4));
  // Lexicographic subsets: {0,1}, {0,2}, ..., so {0,1} and {2,3} are
  // vertices 0 and 7 of K(5,2) and disjoint.
  const Graph k = Build("kneser:5,2");
  EXPECT_TRUE(k.adjacent(0, 7));
  EXPECT_FALSE(k.adjacent(0, 1));
  EXPECT_EQ(Build("johnson:7,3").adjacency(), Build("johnson:7,3").adjacency());
}

TEST(LaplacianTest, CompleteGraph) {
  for (int q : {2, 3, 5}) {
    const auto spec = ComputeLaplacianSpectrum(Build(("hamming:1," + std::to_string(q)).c_str()));
    EXPECT_NEAR(spec.lambda2(), q, 1e-9);
    EXPECT_NEAR(spec.lambda_max(), q, 1e-9);
  }
}

TEST(LaplacianTest, CubeMatchesCharacteristicPolynomial) {
  const Graph q3 = Build("hamming:3,2");
  std::vector<std::vector<int64_t>> lap(8, std::vector<int64_t>(8, 0));
  for (int u = 0; u < 8; ++u) {
    lap[u][u] = q3.degree(u);
    for (int v : q3.neighbors(u)) lap[u][v] = -1;
  }
  EXPECT_EQ(CharPoly(lap), PolyFromRoots({0, 2, 2, 2, 4, 4, 4, 6}));

  const auto spec = ComputeLaplacianSpectrum(q3);
  const std::vector<double> expected = {0, 2, 2, 2, 4, 4, 4, 6};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(spec.eigenvalues[i], expected[i], 1e-9);
}

TEST(LaplacianTest, PetersenAndTrace) {
  const Graph p = Build("kneser:5,2");
  const auto spec = ComputeLaplacianSpectrum(p);
  EXPECT_NEAR(spec.lambda2(), 2.0, 1e-9);
  EXPECT_NEAR(spec.lambda_max(), 5.0, 1e-9);
  for (const char* text : {"kneser:5,2", "johnson:7,3", "genhamming:2,3,3"}) {
    const Graph g = Build(text);
    const auto s = ComputeLaplacianSpectrum(g);
    EXPECT_NEAR(std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0),
                2.0 * g.num_edges(), 1e-8);
    EXPECT_LE(std::abs(s.eigenvalues[0]), 1e-8 * g.n());
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
}

TEST(KnownBandwidthTest, ClosedForms) {
  EXPECT_EQ(KnownBandwidth(GraphSpec::Parse("hamming:4,2")), 7);
  EXPECT_EQ(KnownBandwidth(GraphSpec::Parse("hamming:2,4")), 9);
  EXPECT_EQ(KnownBandwidth(GraphSpec::Parse("johnson:6,2")), 10);
  EXPECT_EQ(KnownBandwidth(GraphSpec::Parse("hamming:5,2")), 13);
  EXPECT_EQ(KnownBandwidth(GraphSpec::Parse("hamming:3,3")), std::nullopt);
  EXPECT_EQ(KnownBandwidth(GraphSpec::Parse("kneser:5,2")), std::nullopt);
}

TEST(EdgeListTest, ParsesAndRoundTrips) {
  std::istringstream k2("2 1\n1 2\n");
  const Graph g = ParseEdgeList(k2);
  EXPECT_EQ(g.n(), 2);
  EXPECT_TRUE(g.adjacent(0, 1));

  const Graph h = Build("hamming:2,2");
  std::stringstream buf;
  WriteEdgeList(h, buf);
  EXPECT_EQ(ParseEdgeList(buf), h);
}

TEST(EdgeListTest, RejectsMalformedInput) {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return ParseEdgeList(in);
  };
  EXPECT_THROW(parse("3 1\n1 1\n"), InputError);       // self-loop
  EXPECT_THROW(parse("3 2\n1 2\n2 1\n"), InputError);  // duplicate
  EXPECT_THROW(parse("3 1\n1 4\n"), InputError);       // out of range
  EXPECT_THROW(parse("3 2\n1 2\n"), InputError);       // too few edges
  EXPECT_THROW(parse("3 x\n"), InputError);
  EXPECT_THROW(LoadAdjacency("/nonexistent/graph.txt"), InputError);
}

TEST(GraphTest, RejectsAsymmetricMatrix) {
  EXPECT_THROW(Graph(2, {0, 1, 0, 0}), InputError);
  EXPECT_THROW(Graph(2, {1, 0, 0, 0}), InputError);
  EXPECT_THROW(Graph(1, {0}), InputError);
}

}  // namespace
}  // namespace bwbounds

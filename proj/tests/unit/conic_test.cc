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

#include "bwbounds/conic.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

// minimize x subject to [[x, 1], [1, x]] PSD. Optimum 1.
ConicProblem TwoByTwo() {
  ConicProblem p;
  p.num_vars = 1;
  p.c = {1.0};
  LmiBlock b;
  b.order = 2;
  b.entries = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {-1, 0, 1, 1.0}};
  p.blocks.push_back(b);
  return p;
}

TEST(SolveTest, TwoByTwoLmi) {
  const Solution s = Solve(TwoByTwo());
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.primal_obj, 1.0, 1e-6);
  EXPECT_NEAR(s.x[0], 1.0, 1e-6);
  EXPECT_LE(s.max_residual(), 1e-7);
  EXPECT_LE(s.dual_obj, s.primal_obj + 1e-7);
  EXPECT_LE(SafeLowerBound(s), 1.0);
  EXPECT_GE(SafeLowerBound(s), 1.0 - 1e-5);
}

TEST(SolveTest, LargestEigenvalue) {
  // minimize t subject to t I - M PSD.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 5;
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
    }
    ConicProblem p;
    p.num_vars = 1;
    p.c = {1.0};
    LmiBlock b;
    b.order = k;
    for (int i = 0; i < k; ++i) {
      b.entries.push_back({0, i, i, 1.0});
      for (int j = 0; j <= i; ++j) b.entries.push_back({-1, j, i, -m(i, j)});
    }
    p.blocks.push_back(b);
    const Solution s = Solve(p);
    ASSERT_EQ(s.status, SolveStatus::kOptimal);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    EXPECT_NEAR(s.primal_obj, es.eigenvalues().maxCoeff(), 1e-6);
    EXPECT_LE(SafeLowerBound(s), es.eigenvalues().maxCoeff() + 1e-9);
  }
}

// Oracle for min c'x, Ax = b, x >= 0 with two rows: best feasible basic
// solution over all column pairs.
double EnumerateBases(const Eigen::Matrix<double, 2, Eigen::Dynamic>& a,
                      const Eigen::Vector2d& b, const Eigen::VectorXd& c) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(a.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::Matrix2d basis;
      basis << a.col(i), a.col(j);
      if (std::abs(basis.determinant()) < 1e-12) continue;
      const Eigen::Vector2d xb = basis.partialPivLu().solve(b);
      if (xb.minCoeff() < -1e-12) continue;
      best = std::min(best, c[i] * xb[0] + c[j] * xb[1]);
    }
  }
  return best;
}

TEST(SolveTest, LinearProgramMatchesBasisEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0), pos(0.1, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5;
    Eigen::Matrix<double, 2, Eigen::Dynamic> a(2, n);
    Eigen::VectorXd c(n), x0(n);
    for (int j = 0; j < n; ++j) {
      a(0, j) = unif(rng);
      a(1, j) = unif(rng);
      c[j] = pos(rng);
      x0[j] = pos(rng);
    }
    const Eigen::Vector2d b = a * x0;

    ConicProblem p;
    p.num_vars = n;
    p.c.assign(c.data(), c.data() + n);
    for (int r = 0; r < 2; ++r) {
      LinearRow row;
      for (int j = 0; j < n; ++j) row.terms.emplace_back(j, a(r, j));
      row.rhs = b[r];
      p.equalities.push_back(row);
    }
    for (int j = 0; j < n; ++j) p.nonneg.push_back(j);
    const Solution s = Solve(p);
    ASSERT_EQ(s.status, SolveStatus::kOptimal) << "trial " << trial;
    const double oracle = EnumerateBases(a, b, c);
    EXPECT_NEAR(s.primal_obj, oracle, 1e-6 * (1 + std::abs(oracle))) << "trial " << trial;
    EXPECT_LE(SafeLowerBound(s), oracle + 1e-9);
  }
}

TEST(SolveTest, ContradictoryEqualitiesAreInfeasible) {
  ConicProblem p = TwoByTwo();
  p.equalities = {{{{0, 1.0}}, 1.0}, {{{0, 1.0}}, 2.0}};
  const Solution s = Solve(p);
  EXPECT_NE(s.status, SolveStatus::kOptimal);
  EXPECT_THROW(SafeLowerBound(s), BoundError);
}

TEST(SolveTest, LinkedVariables) {
  // minimize x0 + x1 subject to [[x0, 1], [1, x1]] PSD and x0 = x1.
  ConicProblem p;
  p.num_vars = 2;
  p.c = {1.0, 1.0};
  LmiBlock b;
  b.order = 2;
  b.entries = {{0, 0, 0, 1.0}, {1, 1, 1, 1.0}, {-1, 0, 1, 1.0}};
  p.blocks.push_back(b);
  p.var_links = {{0, 1}};
  const Solution s = Solve(p);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.primal_obj, 2.0, 1e-6);
  EXPECT_NEAR(s.x[0], s.x[1], 1e-9);
}

TEST(SolveTest, ObjectiveScalingAndOffset) {
  ConicProblem p = TwoByTwo();
  p.c = {1000.0};
  p.c0 = -3.0;
  const Solution s = Solve(p);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.primal_obj, 997.0, 1e-3);
  EXPECT_LE(s.dual_obj, s.primal_obj + 1e-6 * 1000);
}

TEST(SolveTest, Deterministic) {
  const Solution a = Solve(TwoByTwo());
  const Solution b = Solve(TwoByTwo());
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SafeLowerBoundTest, Formula) {
  Solution s;
  s.status = SolveStatus::kOptimal;
  s.dual_obj = 5.0;
  s.gap = 1e-3;
  s.eq_residual = 2e-3;
  EXPECT_DOUBLE_EQ(s.max_residual(), 2e-3);
  EXPECT_NEAR(SafeLowerBound(s), 5.0 - 10 * (1e-3 + 2e-3) - 1e-9, 1e-15);
  s.status = SolveStatus::kMaxIter;
  EXPECT_NEAR(SafeLowerBound(s), 5.0 - 10 * (1e-3 + 2e-3) - 1e-9, 1e-15);
  s.status = SolveStatus::kInfeasible;
  EXPECT_THROW(SafeLowerBound(s), BoundError);
  s.status = SolveStatus::kOptimal;
  s.dual_obj = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SafeLowerBound(s), BoundError);
}

TEST(ConicProblemTest, ValidateAndDump) {
  ConicProblem p = TwoByTwo();
  EXPECT_NO_THROW(p.Validate());
  std::ostringstream out;
  p.Dump(out);
  EXPECT_NE(out.str().find("vars 1"), std::string::npos);
  p.blocks[0].entries.push_back({3, 0, 0, 1.0});
  EXPECT_THROW(p.Validate(), InputError);
  ConicProblem q = TwoByTwo();
  q.c = {};
  EXPECT_THROW(q.Validate(), InputError);
}

}  // namespace
}  // namespace bwbounds

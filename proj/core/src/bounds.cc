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

#include "bwbounds/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "bwbounds/errors.h"
#include "parallel.h"

namespace bwbounds {
namespace {

constexpr double kCeilGuard = 1e-6;

int64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Saturates instead of overflowing; callers only compare against caps.
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max() / 64;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return r;
}

// Smallest c >= 0 with c * c >= x.
int64_t CeilSqrt(double x) {
  if (x <= 0) return 0;
  auto c = static_cast<int64_t>(std::ceil(std::sqrt(x)));
  while (c > 0 && static_cast<double>(c - 1) * (c - 1) >= x) --c;
  while (static_cast<double>(c) * c < x) ++c;
  return c;
}

void CheckSolution(const Solution& sol, const std::string& what) {
  if (sol.status != SolveStatus::kOptimal && sol.status != SolveStatus::kMaxIter) {
    throw BoundError(what + ": solver returned " + std::string(ToString(sol.status)));
  }
}

std::vector<char> EdgeFlags(const Graph& g, const CoherentConfig& cfg,
                            std::span<const int> vertices) {
  std::vector<char> flags(cfg.rank);
  for (int k = 0; k < cfg.rank; ++k) {
    auto [u, v] = cfg.representative[k];
    flags[k] = u != v && g.adjacent(vertices[u], vertices[v]);
  }
  return flags;
}

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

void PartitionM::Validate(int n) const {
  if (m1 < 1 || m2 < 1 || m3 < 0) {
    throw InputError("partition " + ToString() + " needs m1 >= 1, m2 >= 1, m3 >= 0");
  }
  if (this->n() != n) {
    throw InputError("partition " + ToString() + " does not sum to n = " + std::to_string(n));
  }
}

std::string PartitionM::ToString() const {
  return "[" + std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(m3) + "]";
}

std::string_view ToString(Method method) {
  switch (method) {
    case Method::kEig:
      return "eig";
    case Method::kQap:
      return "qap";
    case Method::kFix:
      return "fix";
  }
  return "?";
}

Method ParseMethod(std::string_view text) {
  if (text == "eig") return Method::kEig;
  if (text == "qap") return Method::kQap;
  if (text == "fix") return Method::kFix;
  throw InputError("unknown method '" + std::string(text) + "'");
}

BoundContext::BoundContext(const Graph& g) : graph_(g) {}

const LaplacianSpectrum& BoundContext::laplacian() const {
  std::call_once(laplacian_once_, [&] { laplacian_ = ComputeLaplacianSpectrum(graph_); });
  return *laplacian_;
}

const OrbitClasses& BoundContext::orbits() const {
  std::call_once(orbits_once_, [&] { orbits_ = EdgeOrbitClasses(graph_); });
  return *orbits_;
}

const SchemeSpectrum* BoundContext::scheme() const {
  std::call_once(scheme_once_, [&] {
    const CoherentConfig& cfg = orbits().closure;
    if (cfg.IsSymmetric() && IsCommutative(cfg)) scheme_ = ComputeSchemeSpectrum(cfg);
  });
  return scheme_ ? &*scheme_ : nullptr;
}

std::shared_ptr<const CoherentConfig> BoundContext::punctured(int h) const {
  const OrbitClasses& oc = orbits();
  if (h < 0 || h >= oc.t()) throw InputError("orbit class index out of range");
  {
    std::lock_guard lock(punctured_mu_);
    if (auto it = punctured_.find(h); it != punctured_.end()) return it->second;
  }
  auto [r1, r2] = oc.representative[h];
  auto cfg = std::make_shared<const CoherentConfig>(RestrictConfig(
      StabilizerConfig(graph_, r1, r2), PuncturedVertices(graph_.n(), r1, r2)));
  std::lock_guard lock(punctured_mu_);
  return punctured_.emplace(h, std::move(cfg)).first->second;
}

EigBound EigenvalueBound(const LaplacianSpectrum& spectrum, const PartitionM& m) {
  const int n = static_cast<int>(spectrum.eigenvalues.size());
  m.Validate(n);
  const double a = m.m1, b = m.m2, nn = n;
  const double root = std::sqrt(a * b * (nn - a) * (nn - b));
  EigBound e;
  e.mu1 = (-a * b + root) / nn;
  e.mu2 = (-a * b - root) / nn;
  e.lambda2 = spectrum.lambda2();
  e.lambda_max = spectrum.lambda_max();
  e.value = -0.5 * e.mu2 * e.lambda2 - 0.5 * e.mu1 * e.lambda_max;
  return e;
}

EigBound EigenvalueBound(const Graph& g, const PartitionM& m) {
  return EigenvalueBound(ComputeLaplacianSpectrum(g), m);
}

int BandwidthFromMincutBasic(double alpha, int m3) {
  const double a = alpha - kCeilGuard;
  if (a <= 0) return 0;
  return std::max<int>(m3 + 1, m3 + static_cast<int>(CeilSqrt(2 * a)) - 1);
}

int BandwidthFromMincut(double alpha, int m3) {
  const double a = alpha - kCeilGuard;
  if (a <= 0) return 0;
  const auto k = static_cast<int64_t>(std::ceil(a));
  int64_t b = 0;
  while (b * (b + 1) / 2 < k) ++b;
  return std::max<int>(BandwidthFromMincutBasic(alpha, m3), m3 + static_cast<int>(b));
}

McBound McEig(const BoundContext& ctx, const PartitionM& m) {
  const EigBound e = EigenvalueBound(ctx.laplacian(), m);
  McBound r;
  r.method = Method::kEig;
  r.m = m;
  r.alpha = e.value;
  r.bandwidth_lb = BandwidthFromMincutBasic(e.value, m.m3);
  return r;
}

CutRelaxation BuildMcQap(const BoundContext& ctx, const PartitionM& m, int max_vars) {
  const Graph& g = ctx.graph();
  m.Validate(g.n());
  const CoherentConfig& cfg = ctx.orbits().closure;
  CutRelaxationSpec spec;
  spec.b_sizes = {m.m1, m.m2, m.m3};
  spec.class_is_edge = EdgeFlags(g, cfg, Iota(g.n()));
  spec.max_vars = max_vars;
  return BuildCutRelaxation(cfg, spec);
}

void ReduceMcQapScheme(CutRelaxation& rel, const SchemeSpectrum& spectrum) {
  rel.problem.blocks = SchemeBlocks(rel, spectrum);
}

McBound McQap(const BoundContext& ctx, const PartitionM& m, const BoundOptions& options) {
  CutRelaxation rel = BuildMcQap(ctx, m, options.max_vars);
  if (options.use_scheme) {
    if (const SchemeSpectrum* s = ctx.scheme()) ReduceMcQapScheme(rel, *s);
  }
  const Solution sol = Solve(rel.problem, options.solver);
  CheckSolution(sol, "qap " + m.ToString());
  McBound r;
  r.method = Method::kQap;
  r.m = m;
  r.alpha = SafeLowerBound(sol);
  r.bandwidth_lb = BandwidthFromMincut(r.alpha, m.m3);
  r.gap = sol.gap;
  r.max_residual = sol.max_residual();
  r.iterations = sol.iterations;
  r.vars = rel.num_vars();
  return r;
}

FixSubproblem BuildFixSubproblem(const BoundContext& ctx, const PartitionM& m, int h,
                                 int max_vars) {
  const Graph& g = ctx.graph();
  m.Validate(g.n());
  if (g.n() < 3) throw InputError("fixing a cut edge needs at least 3 vertices");
  const OrbitClasses& oc = ctx.orbits();
  if (h < 0 || h >= oc.t()) throw InputError("orbit class index out of range");

  FixSubproblem fs;
  fs.h = h;
  fs.rep = oc.representative[h];
  const auto [r1, r2] = fs.rep;
  fs.alpha = PuncturedVertices(g.n(), r1, r2);
  fs.dh = 2.0 * g.adjacent(r1, r2);
  const int na = static_cast<int>(fs.alpha.size());
  const int p1 = m.m1 - 1, p2 = m.m2 - 1;

  fs.chat = Eigen::MatrixXd::Zero(na, na);
  for (int x = 0; x < na; ++x) {
    const double to_r1 = g.adjacent(fs.alpha[x], r1), to_r2 = g.adjacent(fs.alpha[x], r2);
    for (int b = 0; b < p1; ++b) fs.chat(x, b) = 2 * to_r2;
    for (int b = p1; b < p1 + p2; ++b) fs.chat(x, b) = 2 * to_r1;
  }

  const std::shared_ptr<const CoherentConfig> cfg = ctx.punctured(h);
  CutRelaxationSpec spec;
  spec.b_sizes = {p1, p2, m.m3};
  spec.class_is_edge = EdgeFlags(g, *cfg, fs.alpha);
  // Fixing r1 into part 1 and r2 into part 2 adds one cut edge per
  // neighbor of r2 placed in part 1 and per neighbor of r1 in part 2.
  spec.diag_linear[0].assign(cfg->rank, 0.0);
  spec.diag_linear[1].assign(cfg->rank, 0.0);
  for (int x = 0; x < na; ++x) {
    spec.diag_linear[0][cfg->fiber(x)] += g.adjacent(fs.alpha[x], r2);
    spec.diag_linear[1][cfg->fiber(x)] += g.adjacent(fs.alpha[x], r1);
  }
  spec.constant = 0.5 * fs.dh;
  spec.max_vars = max_vars;
  fs.relaxation = BuildCutRelaxation(*cfg, spec);
  return fs;
}

McBound McFix(const BoundContext& ctx, const PartitionM& m, const BoundOptions& options) {
  m.Validate(ctx.graph().n());
  const int t = ctx.orbits().t();
  if (t == 0) throw InputError("graph has no off-diagonal pair classes");
  std::vector<SubproblemValue> subs(t);
  internal::ParallelFor(t, options.workers, [&](int h) {
    FixSubproblem fs = BuildFixSubproblem(ctx, m, h, options.max_vars);
    const Solution sol = Solve(fs.relaxation.problem, options.solver);
    CheckSolution(sol, "fix " + m.ToString() + " class " + std::to_string(h));
    SubproblemValue& s = subs[h];
    s.h = h;
    s.rep = fs.rep;
    s.classes = fs.relaxation.a.rank;
    s.vars = fs.relaxation.num_vars();
    s.mu = SafeLowerBound(sol);
    s.gap = sol.gap;
    s.max_residual = sol.max_residual();
    s.iterations = sol.iterations;
  });
  McBound r;
  r.method = Method::kFix;
  r.m = m;
  r.alpha = std::numeric_limits<double>::infinity();
  for (const SubproblemValue& s : subs) {
    r.alpha = std::min(r.alpha, s.mu);
    r.gap = std::max(r.gap, s.gap);
    r.max_residual = std::max(r.max_residual, s.max_residual);
    r.iterations = std::max(r.iterations, s.iterations);
    r.vars = std::max(r.vars, s.vars);
  }
  r.bandwidth_lb = BandwidthFromMincut(r.alpha, m.m3);
  r.sub = std::move(subs);
  return r;
}

McBound ComputeBound(const BoundContext& ctx, Method method, const PartitionM& m,
                     const BoundOptions& options) {
  switch (method) {
    case Method::kEig:
      return McEig(ctx, m);
    case Method::kQap:
      return McQap(ctx, m, options);
    case Method::kFix:
      return McFix(ctx, m, options);
  }
  throw InputError("unknown method");
}

std::vector<PartitionM> EnumeratePartitions(int n, int m3_min) {
  std::vector<PartitionM> out;
  for (int m1 = 1; 2 * m1 <= n; ++m1) {
    for (int m2 = m1; m1 + m2 <= n; ++m2) {
      const int m3 = n - m1 - m2;
      if (m3 >= m3_min) out.push_back({m1, m2, m3});
    }
  }
  return out;
}

McBound Scan(const BoundContext& ctx, Method method, const ScanOptions& options) {
  const Graph& g = ctx.graph();
  const int n = g.n();

  auto best_eig = [&](int m3_min) {
    std::optional<McBound> best;
    for (const PartitionM& m : EnumeratePartitions(n, m3_min)) {
      McBound r = McEig(ctx, m);
      if (!best || std::tuple(r.bandwidth_lb, r.m.m3, r.alpha) >
                       std::tuple(best->bandwidth_lb, best->m.m3, best->alpha)) {
        best = std::move(r);
      }
    }
    if (!best) throw InputError("no partition with m3 >= " + std::to_string(m3_min));
    return *best;
  };

  if (method == Method::kEig) return best_eig(std::max(options.m3_min, 0));

  const int m3_min = options.m3_min >= 0 ? options.m3_min : best_eig(0).m.m3;
  std::vector<PartitionM> cands = EnumeratePartitions(n, m3_min);
  if (cands.empty()) throw InputError("no partition with m3 >= " + std::to_string(m3_min));
  std::vector<int> proxy(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    proxy[i] = BandwidthFromMincut(McEig(ctx, cands[i]).alpha, cands[i].m3);
  }
  std::vector<size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (proxy[a] != proxy[b]) return proxy[a] > proxy[b];
    return cands[a].m3 > cands[b].m3;
  });

  std::optional<McBound> best;
  int solved = 0;
  for (size_t idx : order) {
    const PartitionM& m = cands[idx];
    const int incumbent = std::max(options.floor, best ? best->bandwidth_lb : 0);
    if (options.stop_at && incumbent >= *options.stop_at) break;
    if (best || options.floor > 0) {
      const double ceiling = std::min<double>(double(m.m1) * m.m2, double(g.num_edges()));
      if (BandwidthFromMincut(ceiling, m.m3) <= incumbent) continue;
    }
    if (options.budget > 0 && solved >= options.budget) break;
    McBound r = options.evaluate ? options.evaluate(method, m)
                                 : ComputeBound(ctx, method, m, options.bound);
    ++solved;
    if (!best || r.bandwidth_lb > best->bandwidth_lb) best = std::move(r);
    if (options.stop_at && best->bandwidth_lb >= *options.stop_at) break;
  }
  if (!best) {
    // Nothing solved (budget exhausted or everything pruned by the floor).
    McBound r;
    r.method = method;
    r.m = cands[order.front()];
    best = r;
  }
  return *best;
}

int64_t BruteForceMincut(const Graph& g, const PartitionM& m, int64_t cap) {
  const int n = g.n();
  m.Validate(n);
  const int64_t count = Binomial(n, m.m1) * Binomial(n - m.m1, m.m2);
  if (count > cap || count < 0) {
    throw InputError("partition count for " + m.ToString() + " exceeds the enumeration cap");
  }
  // For fixed S1 the best S2 takes the m2 vertices with fewest neighbors in
  // S1, so only S1 is enumerated. By symmetry enumerate the smaller side.
  const int k = std::min(m.m1, m.m2), other = std::max(m.m1, m.m2);
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<char> in_s1(n);
  int64_t best = std::numeric_limits<int64_t>::max();
  while (true) {
    std::fill(in_s1.begin(), in_s1.end(), 0);
    for (int v : pick) in_s1[v] = 1;
    std::vector<int> rest;
    rest.reserve(n - k);
    for (int v = 0; v < n; ++v) {
      if (in_s1[v]) continue;
      int d = 0;
      for (int w : g.neighbors(v)) d += in_s1[w];
      rest.push_back(d);
    }
    std::nth_element(rest.begin(), rest.begin() + (other - 1), rest.end());
    const int64_t cut = std::accumulate(rest.begin(), rest.begin() + other, int64_t{0});
    best = std::min(best, cut);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace bwbounds

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

#include "app/compute.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "bwbounds/errors.h"
#include "bwbounds/heuristic.h"

namespace bwbounds::app {
namespace {

double SecondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string BoundKey(const Graph& g, Method method, const PartitionM& m,
                     const BoundOptions& options) {
  char tol[32];
  std::snprintf(tol, sizeof(tol), "%.17g", options.solver.tol);
  return std::string(kCacheVersion) + "|" + AdjacencyHash(g) + "|" + std::string(ToString(method)) +
         "|" + m.ToString() + "|tol=" + tol + "|vars=" + std::to_string(options.max_vars) +
         "|scheme=" + (options.use_scheme ? "1" : "0");
}

}  // namespace

void ValidateRequest(const RunRequest& req, int n) {
  if (!req.eig && !req.qap && !req.fix && !req.heuristic) {
    throw InputError("no method requested");
  }
  for (const auto& m : req.m) m.Validate(n);
  if (req.runs < 1) throw InputError("--runs must be at least 1");
  if (!(req.tol > 0.0)) throw InputError("--tol must be positive");
  if (req.budget < 0) throw InputError("--budget must be nonnegative");
  if (req.m3_min > n - 2) throw InputError("--m3-min leaves no room for two nonempty parts");
}

BoundEntry CachedBound(const BoundContext& ctx, Method method, const PartitionM& m,
                       const BoundOptions& options, const ResultCache& cache) {
  const std::string key = BoundKey(ctx.graph(), method, m, options);
  if (auto hit = cache.Get(key)) {
    try {
      return BoundFromJson(*hit);
    } catch (const std::exception&) {
      // Unreadable entry: recompute and overwrite.
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  BoundEntry entry;
  entry.bound = ComputeBound(ctx, method, m, options);
  entry.wall_time_s = SecondsSince(t0);
  cache.Put(key, BoundToJson(ctx.graph().tag(), ctx.graph().n(), entry));
  return entry;
}

HeuristicEntry CachedHeuristic(const Graph& g, const HeuristicConfig& cfg,
                               const ResultCache& cache) {
  const std::string key = std::string(kCacheVersion) + "|" + AdjacencyHash(g) +
                          "|heuristic|runs=" + std::to_string(cfg.runs) +
                          "|seed=" + std::to_string(cfg.seed) +
                          "|iters=" + std::to_string(cfg.max_improve_iters);
  if (auto hit = cache.Get(key)) {
    try {
      return HeuristicFromJson(*hit);
    } catch (const std::exception&) {
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  HeuristicEntry entry;
  entry.runs = cfg.runs;
  entry.seed = cfg.seed;
  entry.best = RunHeuristic(g, cfg);
  entry.wall_time_s = SecondsSince(t0);
  cache.Put(key, HeuristicToJson(entry));
  return entry;
}

RunReport Compute(const RunRequest& req, const ResultCache& cache) {
  const Graph g = BuildGraph(req.spec);
  ValidateRequest(req, g.n());
  const BoundContext ctx(g);

  RunReport report;
  report.graph = req.spec.ToString();
  report.n = g.n();
  report.known_bandwidth = KnownBandwidth(req.spec);

  BoundOptions options;
  options.solver.tol = req.tol;
  options.max_vars = req.max_vars;
  options.workers = req.workers;

  std::optional<int> stop = report.known_bandwidth;
  if (req.heuristic) {
    HeuristicConfig cfg;
    cfg.runs = req.runs;
    cfg.seed = req.seed;
    cfg.workers = req.workers;
    report.heuristic = CachedHeuristic(g, cfg, cache);
    const int ub = report.heuristic->best.bandwidth;
    stop = stop ? std::min(*stop, ub) : ub;
  }

  auto scan = [&](Method method, int floor) -> BoundEntry {
    if (method != Method::kEig && stop && floor >= *stop) {
      BoundEntry e;
      e.bound.method = method;
      e.skipped = "qap bound already meets the upper bound";
      return e;
    }
    ScanOptions so;
    so.m3_min = method == Method::kEig ? std::max(req.m3_min, 0) : req.m3_min;
    so.budget = req.budget;
    if (method != Method::kEig) so.stop_at = stop;
    so.floor = floor;
    so.bound = options;
    int solved = 0;
    so.evaluate = [&](Method mm, const PartitionM& m) {
      ++solved;
      return CachedBound(ctx, mm, m, options, cache).bound;
    };
    const McBound best = Scan(ctx, method, so);
    if (method != Method::kEig && solved == 0) {
      BoundEntry e;
      e.bound = best;
      e.skipped = floor > 0 ? "no partition can improve on the qap bound"
                            : "no partition evaluated within the budget";
      return e;
    }
    return CachedBound(ctx, method, best.m, options, cache);
  };

  int qap_best = 0;
  const std::pair<bool, Method> methods[] = {
      {req.eig, Method::kEig}, {req.qap, Method::kQap}, {req.fix, Method::kFix}};
  for (const auto& [wanted, method] : methods) {
    if (!wanted) continue;
    if (req.m.empty()) {
      BoundEntry e = scan(method, method == Method::kFix ? qap_best : 0);
      if (method == Method::kQap && !e.skipped) qap_best = e.bound.bandwidth_lb;
      report.bounds.push_back(std::move(e));
    } else {
      for (const auto& m : req.m) report.bounds.push_back(CachedBound(ctx, method, m, options, cache));
    }
  }
  return report;
}

}  // namespace bwbounds::app

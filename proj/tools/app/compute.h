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

#ifndef BWBOUNDS_TOOLS_APP_COMPUTE_H_
#define BWBOUNDS_TOOLS_APP_COMPUTE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "app/cache.h"
#include "app/report.h"
#include "bwbounds/bounds.h"
#include "bwbounds/graph.h"

namespace bwbounds::app {

struct RunRequest {
  GraphSpec spec;
  bool eig = false;
  bool qap = false;
  bool fix = false;
  bool heuristic = false;
  // Explicit partitions; empty means scan.
  std::vector<PartitionM> m;
  int m3_min = -1;
  int budget = 0;
  int runs = 1000;
  uint64_t seed = 1;
  double tol = 1e-8;
  int workers = 0;
  int max_vars = 5000;
};

// Throws InputError for malformed requests (no method, bad m).
void ValidateRequest(const RunRequest& req, int n);

// Runs the heuristic first, so that its bound (or the known bandwidth) can
// stop the qap and fix scans early. A fix scan starts from the qap value of
// the same run and is skipped when that value already meets the upper bound.
RunReport Compute(const RunRequest& req, const ResultCache& cache);

// A single relaxation, through the cache. The key covers the adjacency,
// method, m, tolerance, variable cap and code version.
BoundEntry CachedBound(const BoundContext& ctx, Method method, const PartitionM& m,
                       const BoundOptions& options, const ResultCache& cache);
HeuristicEntry CachedHeuristic(const Graph& g, const HeuristicConfig& cfg,
                               const ResultCache& cache);

}  // namespace bwbounds::app

#endif  // BWBOUNDS_TOOLS_APP_COMPUTE_H_

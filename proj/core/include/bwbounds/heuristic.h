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

// Bandwidth upper bounds: reverse Cuthill-McKee from random vertex orders,
// followed by a label-rotation improvement, best over many restarts.

#ifndef BWBOUNDS_HEURISTIC_H_
#define BWBOUNDS_HEURISTIC_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bwbounds/graph.h"

namespace bwbounds {

// labels[v] is the label of vertex v, in 1..n.
struct Labeling {
  std::vector<int> labels;
  int bandwidth = 0;
};

struct HeuristicConfig {
  int runs = 1000;
  uint64_t seed = 1;
  // Improvement steps per run; negative means n * n.
  int64_t max_improve_iters = -1;
  // 0 means std::thread::hardware_concurrency().
  int workers = 0;
};

// max over edges of the label difference, 0 without edges. Throws InputError
// unless labels is a permutation of 1..n.
int BandwidthOfLabeling(const Graph& g, std::span<const int> labels);

// Breadth-first visitation starting, per component, at the first unvisited
// vertex of `initial_order`; neighbors are queued by increasing degree, ties
// by position in `initial_order`. Labels are the visitation order reversed.
Labeling CuthillMcKeeOrder(const Graph& g, std::span<const int> initial_order);

// Repeats until no move applies or `cap` steps (negative: n * n):
// u = the largest-labeled vertex on an edge of maximum length, w = its
// partner label(u) - bandwidth, z = the largest-labeled vertex below u with
// no neighbor labeled <= label(w). Labels label(z)+1..label(u) move down by one
// and z takes the old label(u). Never increases bandwidth.
Labeling ImproveLabeling(const Graph& g, Labeling labeling, int64_t cap = -1);

// Best of cfg.runs independent runs; ties keep the earliest run. Run r
// shuffles with a generator seeded from (cfg.seed, r), so the result does
// not depend on the worker count.
Labeling RunHeuristic(const Graph& g, const HeuristicConfig& cfg);

// n lines, line v holding the label of v.
void WritePermutation(const Labeling& labeling, std::ostream& out);

}  // namespace bwbounds

#endif  // BWBOUNDS_HEURISTIC_H_

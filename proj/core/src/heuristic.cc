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

#include "bwbounds/heuristic.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "bwbounds/errors.h"
#include "parallel.h"

namespace bwbounds {
namespace {

int Bandwidth(const Graph& g, const std::vector<int>& labels) {
  int bw = 0;
  for (int u = 0; u < g.n(); ++u) {
    for (int v : g.neighbors(u)) bw = std::max(bw, std::abs(labels[u] - labels[v]));
  }
  return bw;
}

}  // namespace

int BandwidthOfLabeling(const Graph& g, std::span<const int> labels) {
  const int n = g.n();
  if (static_cast<int>(labels.size()) != n) throw InputError("labeling has the wrong length");
  std::vector<char> seen(n + 1, 0);
  for (int label : labels) {
    if (label < 1 || label > n || seen[label]) {
      throw InputError("labeling is not a permutation of 1.." + std::to_string(n));
    }
    seen[label] = 1;
  }
  return Bandwidth(g, std::vector<int>(labels.begin(), labels.end()));
}

Labeling CuthillMcKeeOrder(const Graph& g, std::span<const int> initial_order) {
  const int n = g.n();
  if (static_cast<int>(initial_order.size()) != n) {
    throw InputError("initial order has the wrong length");
  }
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    const int v = initial_order[i];
    if (v < 0 || v >= n || pos[v] >= 0) throw InputError("initial order is not a permutation");
    pos[v] = i;
  }
  std::vector<char> visited(n, 0);
  std::vector<int> visit;
  visit.reserve(n);
  std::vector<int> nbrs;
  for (int start : initial_order) {
    if (visited[start]) continue;
    visited[start] = 1;
    size_t head = visit.size();
    visit.push_back(start);
    while (head < visit.size()) {
      const int u = visit[head++];
      nbrs.clear();
      for (int w : g.neighbors(u)) {
        if (!visited[w]) nbrs.push_back(w);
      }
      std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return pos[a] < pos[b];
      });
      for (int w : nbrs) {
        visited[w] = 1;
        visit.push_back(w);
      }
    }
  }
  Labeling out;
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) out.labels[visit[i]] = n - i;
  out.bandwidth = Bandwidth(g, out.labels);
  return out;
}

Labeling ImproveLabeling(const Graph& g, Labeling labeling, int64_t cap) {
  const int n = g.n();
  if (cap < 0) cap = static_cast<int64_t>(n) * n;
  std::vector<int>& lab = labeling.labels;
  std::vector<int> at(n + 1);  // vertex holding each label
  for (int v = 0; v < n; ++v) at[lab[v]] = v;
  std::vector<int> min_nbr(n);

  labeling.bandwidth = Bandwidth(g, lab);
  for (int64_t step = 0; step < cap; ++step) {
    const int sigma = labeling.bandwidth;
    if (sigma == 0) break;
    // Largest-labeled critical vertex; its partner lies sigma below.
    int u = -1;
    for (int label = n; label > sigma && u < 0; --label) {
      const int v = at[label];
      for (int w : g.neighbors(v)) {
        if (lab[w] == label - sigma) {
          u = v;
          break;
        }
      }
    }
    if (u < 0) break;
    const int lw = lab[u] - sigma;
    for (int v = 0; v < n; ++v) {
      int lo = n + 1;
      for (int w : g.neighbors(v)) lo = std::min(lo, lab[w]);
      min_nbr[v] = lo;
    }
    // Searching above label(u) would always stop at label n: no vertex there
    // has a neighbor at or below label(w).
    int z = -1;
    for (int label = lab[u] - 1; label >= 1; --label) {
      if (min_nbr[at[label]] > lw) {
        z = at[label];
        break;
      }
    }
    if (z < 0) break;
    const int lz = lab[z], lu = lab[u];
    for (int label = lz + 1; label <= lu; ++label) {
      const int v = at[label];
      lab[v] = label - 1;
      at[label - 1] = v;
    }
    lab[z] = lu;
    at[lu] = z;
    labeling.bandwidth = Bandwidth(g, lab);
  }
  return labeling;
}

Labeling RunHeuristic(const Graph& g, const HeuristicConfig& cfg) {
  if (cfg.runs < 1) throw InputError("heuristic needs at least one run");
  const int n = g.n();
  std::vector<Labeling> results(cfg.runs);
  internal::ParallelFor(cfg.runs, cfg.workers, [&](int run) {
    std::seed_seq seq{static_cast<uint32_t>(cfg.seed), static_cast<uint32_t>(cfg.seed >> 32),
                      static_cast<uint32_t>(run)};
    std::mt19937_64 rng(seq);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    results[run] = ImproveLabeling(g, CuthillMcKeeOrder(g, order), cfg.max_improve_iters);
  });
  int best = 0;
  for (int run = 1; run < cfg.runs; ++run) {
    if (results[run].bandwidth < results[best].bandwidth) best = run;
  }
  return std::move(results[best]);
}

void WritePermutation(const Labeling& labeling, std::ostream& out) {
  for (int label : labeling.labels) out << label << "\n";
}

}  // namespace bwbounds

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

#include "bwbounds/cut_relaxation.h"

#include <cmath>
#include <string>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

constexpr int kLabels = CutConfig::kNumLabels;

std::vector<int> NonemptyParts(const CutConfig& b) {
  std::vector<int> parts;
  for (int p = 0; p < 3; ++p) {
    if (b.part_sizes[p] > 0) parts.push_back(p);
  }
  return parts;
}

// Projector onto span(sqrt(s)) over the nonempty parts.
Eigen::MatrixXd SizeProjector(const CutConfig& b, const std::vector<int>& parts) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (size_t k = 0; k < parts.size(); ++k) v[k] = std::sqrt(double(b.part_sizes[parts[k]]));
  v.normalize();
  return v * v.transpose();
}

// Adds 0.5 * value at (r, c) and (c, r), i.e. the symmetric part of a
// possibly nonsymmetric contribution.
void AddSym(LmiBlock& blk, int var, int r, int c, double value) {
  if (r == c) {
    blk.entries.push_back({var, r, c, value});
  } else {
    blk.entries.push_back({var, std::min(r, c), std::max(r, c), 0.5 * value});
  }
}

}  // namespace

CutRelaxation BuildCutRelaxation(const CoherentConfig& a, const CutRelaxationSpec& spec) {
  CutRelaxation rel;
  rel.a = a;
  auto [b, phi] = MakeCutConfig(spec.b_sizes[0], spec.b_sizes[1], spec.b_sizes[2]);
  rel.b = b;
  rel.phi = phi;
  if (b.n() != a.n) {
    throw InputError("cut sizes sum to " + std::to_string(b.n()) + " but the ground set has " +
                     std::to_string(a.n) + " vertices");
  }
  if (static_cast<int>(spec.class_is_edge.size()) != a.rank) {
    throw InputError("edge flags must cover every class");
  }
  const int r = a.rank;

  int next = 0;
  for (int j = 1; j <= kLabels; ++j) {
    rel.var_of[j].assign(r, -1);
    if (!b.present(j)) continue;
    for (int i = 0; i < r; ++i) {
      if (CutConfig::IsDiagonalLabel(j) != a.is_diagonal(i)) continue;
      rel.var_of[j][i] = next++;
    }
  }
  if (next > spec.max_vars) {
    throw BoundError("relaxation needs " + std::to_string(next) + " variables, above the cap of " +
                     std::to_string(spec.max_vars));
  }
  ConicProblem& prob = rel.problem;
  prob.num_vars = next;
  prob.c.assign(next, 0.0);
  prob.c0 = spec.constant;
  auto var = [&](int j, int i) { return rel.var_of[j][i]; };

  for (int j = 1; j <= kLabels; ++j) {
    for (int i = 0; i < r; ++i) {
      const int v = var(j, i);
      if (v < 0) continue;
      prob.nonneg.push_back(v);
      const int w = var(CutConfig::Transpose(j), a.transpose_of[i]);
      if (w > v) prob.var_links.emplace_back(v, w);
    }
  }

  // Objective: edges between the first two parts, plus the linear term.
  for (int j : {3, 5}) {
    for (int i = 0; i < r; ++i) {
      if (var(j, i) >= 0 && spec.class_is_edge[i]) {
        prob.c[var(j, i)] += 0.5 * static_cast<double>(a.sizes[i]);
      }
    }
  }
  for (int p = 0; p < 3; ++p) {
    const auto& lin = spec.diag_linear[p];
    const int j = CutConfig::DiagonalLabel(p);
    for (size_t i = 0; i < lin.size(); ++i) {
      if (lin[i] != 0.0 && var(j, static_cast<int>(i)) >= 0) prob.c[var(j, i)] += lin[i];
    }
  }

  // sum_j X_j = J.
  for (int i = 0; i < r; ++i) {
    LinearRow row;
    for (int j = 1; j <= kLabels; ++j) {
      if (var(j, i) >= 0) row.terms.emplace_back(var(j, i), 1.0);
    }
    row.rhs = 1.0;
    prob.equalities.push_back(std::move(row));
  }
  // tr(J X_j) = q_j.
  for (int j = 1; j <= kLabels; ++j) {
    if (!b.present(j)) continue;
    LinearRow row;
    for (int i = 0; i < r; ++i) {
      if (var(j, i) >= 0) row.terms.emplace_back(var(j, i), static_cast<double>(a.sizes[i]));
    }
    row.rhs = static_cast<double>(b.q[j]);
    prob.equalities.push_back(std::move(row));
  }
  // Row sums of each part: sum_{row(j)=P} X_j = x_P 1'.
  const std::vector<int> parts = NonemptyParts(b);
  for (int p : parts) {
    const int dj = CutConfig::DiagonalLabel(p);
    for (int i = 0; i < r; ++i) {
      if (a.is_diagonal(i)) continue;
      LinearRow row;
      for (int j = 1; j <= kLabels; ++j) {
        if (CutConfig::RowPart(j) == p && var(j, i) >= 0) row.terms.emplace_back(var(j, i), 1.0);
      }
      row.terms.emplace_back(var(dj, a.row_fiber[i]), -1.0);
      prob.equalities.push_back(std::move(row));
    }
  }
  // X_j 1 / q_j agrees across labels sharing a row part (summed per fiber).
  for (int p : parts) {
    std::vector<int> labels;
    for (int j = 1; j <= kLabels; ++j) {
      if (CutConfig::RowPart(j) == p && b.present(j)) labels.push_back(j);
    }
    for (int f : a.diag_classes) {
      for (size_t t = 1; t < labels.size(); ++t) {
        LinearRow row;
        for (int sgn = 0; sgn < 2; ++sgn) {
          const int j = sgn == 0 ? labels[t] : labels[0];
          const double scale = (sgn == 0 ? 1.0 : -1.0) / static_cast<double>(b.q[j]);
          for (int i = 0; i < r; ++i) {
            if (a.row_fiber[i] == f && var(j, i) >= 0) {
              row.terms.emplace_back(var(j, i), scale * static_cast<double>(a.sizes[i]));
            }
          }
        }
        prob.equalities.push_back(std::move(row));
      }
    }
  }

  prob.blocks = FullBlocks(rel);
  return rel;
}

std::vector<LmiBlock> FullBlocks(const CutRelaxation& rel) {
  const CoherentConfig& a = rel.a;
  const CutConfig& b = rel.b;
  const int n = a.n;
  const double inv_n = 1.0 / n;
  std::vector<std::vector<std::pair<int, int>>> pairs(a.rank);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) pairs[a.at(u, v)].emplace_back(u, v);
  }

  std::vector<LmiBlock> blocks;
  for (int p = 0; p < 3; ++p) {
    if (b.part_sizes[p] < 2) continue;
    LmiBlock blk;
    blk.order = n;
    for (int j = 1; j <= kLabels; ++j) {
      const double coef = rel.phi.of[j].scalar[p];
      if (coef == 0.0 || !b.present(j)) continue;
      for (int i = 0; i < a.rank; ++i) {
        const int v = rel.var_of[j][i];
        if (v < 0) continue;
        for (auto [x, y] : pairs[i]) AddSym(blk, v, x, y, coef / b.q[j]);
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = x; y < n; ++y) blk.entries.push_back({-1, x, y, inv_n});
    }
    blocks.push_back(std::move(blk));
  }

  const std::vector<int> parts = NonemptyParts(b);
  const int np = static_cast<int>(parts.size());
  std::array<int, 3> slot{-1, -1, -1};
  for (int k = 0; k < np; ++k) slot[parts[k]] = k;
  LmiBlock blk;
  blk.order = n * np;
  for (int j = 1; j <= kLabels; ++j) {
    if (!b.present(j)) continue;
    const Eigen::Matrix3d& m = rel.phi.of[j].block;
    const int rp = CutConfig::RowPart(j), cp = CutConfig::ColPart(j);
    const double coef = m(rp, cp) / b.q[j];
    if (coef == 0.0) continue;
    for (int i = 0; i < a.rank; ++i) {
      const int v = rel.var_of[j][i];
      if (v < 0) continue;
      for (auto [x, y] : pairs[i]) AddSym(blk, v, slot[rp] * n + x, slot[cp] * n + y, coef);
    }
  }
  const Eigen::MatrixXd ps = SizeProjector(b, parts);
  for (int k = 0; k < np; ++k) {
    for (int l = k; l < np; ++l) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          const int row = k * n + x, col = l * n + y;
          if (row > col) continue;
          const double value = ps(k, l) * ((x == y ? 1.0 : 0.0) - inv_n) +
                               ((k == l ? 1.0 : 0.0) - ps(k, l)) * inv_n;
          if (value != 0.0) blk.entries.push_back({-1, row, col, value});
        }
      }
    }
  }
  blocks.push_back(std::move(blk));
  return blocks;
}

std::vector<LmiBlock> SchemeBlocks(const CutRelaxation& rel, const SchemeSpectrum& spectrum) {
  const CoherentConfig& a = rel.a;
  const CutConfig& b = rel.b;
  if (spectrum.eigenvalues.cols() != a.rank) {
    throw InputError("scheme spectrum has the wrong number of classes");
  }
  int total = 0;
  for (int mult : spectrum.multiplicity) total += mult;
  if (total != a.n) throw InputError("scheme spectrum multiplicities do not sum to n");

  const std::vector<int> parts = NonemptyParts(b);
  const int np = static_cast<int>(parts.size());
  std::array<int, 3> slot{-1, -1, -1};
  for (int k = 0; k < np; ++k) slot[parts[k]] = k;
  const Eigen::MatrixXd ps = SizeProjector(b, parts);

  std::vector<LmiBlock> blocks;
  for (int e = 0; e < spectrum.num_eigenspaces(); ++e) {
    const bool trivial = e == 0;
    for (int p = 0; p < 3; ++p) {
      if (b.part_sizes[p] < 2) continue;
      LmiBlock blk;
      blk.order = 1;
      for (int j = 1; j <= kLabels; ++j) {
        const double coef = rel.phi.of[j].scalar[p];
        if (coef == 0.0 || !b.present(j)) continue;
        for (int i = 0; i < a.rank; ++i) {
          const int v = rel.var_of[j][i];
          const double ev = spectrum.eigenvalues(e, i);
          if (v >= 0 && ev != 0.0) blk.entries.push_back({v, 0, 0, coef / b.q[j] * ev});
        }
      }
      if (trivial) blk.entries.push_back({-1, 0, 0, 1.0});
      blocks.push_back(std::move(blk));
    }
    LmiBlock blk;
    blk.order = np;
    for (int j = 1; j <= kLabels; ++j) {
      if (!b.present(j)) continue;
      const int rp = CutConfig::RowPart(j), cp = CutConfig::ColPart(j);
      const double coef = rel.phi.of[j].block(rp, cp) / b.q[j];
      if (coef == 0.0) continue;
      for (int i = 0; i < a.rank; ++i) {
        const int v = rel.var_of[j][i];
        const double ev = spectrum.eigenvalues(e, i);
        if (v >= 0 && ev != 0.0) AddSym(blk, v, slot[rp], slot[cp], coef * ev);
      }
    }
    for (int k = 0; k < np; ++k) {
      for (int l = k; l < np; ++l) {
        const double value = trivial ? (k == l ? 1.0 : 0.0) - ps(k, l) : ps(k, l);
        if (value != 0.0) blk.entries.push_back({-1, k, l, value});
      }
    }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

}  // namespace bwbounds

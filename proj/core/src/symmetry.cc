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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

struct VectorHash {
  size_t operator()(const std::vector<int64_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (int64_t x : v) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Renumbers arbitrary pair colors by first occurrence in row-major order and
// derives the bookkeeping fields. Assumes the coloring is transpose-consistent.
CoherentConfig Finalize(int n, std::span<const int> colors) {
  CoherentConfig cfg;
  cfg.n = n;
  cfg.class_of.resize(static_cast<size_t>(n) * n);
  std::unordered_map<int, int> ids;
  for (int p = 0; p < n * n; ++p) {
    auto [it, inserted] = ids.try_emplace(colors[p], static_cast<int>(ids.size()));
    cfg.class_of[p] = it->second;
    if (inserted) cfg.representative.emplace_back(p / n, p % n);
  }
  cfg.rank = static_cast<int>(ids.size());
  cfg.sizes.assign(cfg.rank, 0);
  for (int k : cfg.class_of) ++cfg.sizes[k];
  cfg.transpose_of.resize(cfg.rank);
  cfg.row_fiber.resize(cfg.rank);
  cfg.col_fiber.resize(cfg.rank);
  for (int k = 0; k < cfg.rank; ++k) {
    auto [u, v] = cfg.representative[k];
    cfg.transpose_of[k] = cfg.at(v, u);
    cfg.row_fiber[k] = cfg.at(u, u);
    cfg.col_fiber[k] = cfg.at(v, v);
    if (u == v) cfg.diag_classes.push_back(k);
  }
  return cfg;
}

// Structure-constant counts p_ij^k at one pair (u, v), keyed i * rank + j.
std::unordered_map<int64_t, int> CountsAt(const CoherentConfig& cfg, int u, int v) {
  std::unordered_map<int64_t, int> counts;
  for (int w = 0; w < cfg.n; ++w) {
    ++counts[int64_t{cfg.at(u, w)} * cfg.rank + cfg.at(w, v)];
  }
  return counts;
}

constexpr std::array<int, 13> kRowPart = {-1, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
constexpr std::array<int, 13> kColPart = {-1, 0, 0, 1, 2, 0, 1, 1, 2, 0, 1, 2, 2};
constexpr std::array<int, 13> kTranspose = {0, 1, 2, 5, 9, 3, 6, 7, 10, 4, 8, 11, 12};

}  // namespace

bool CoherentConfig::IsSymmetric() const {
  for (int k = 0; k < rank; ++k) {
    if (transpose_of[k] != k) return false;
  }
  return true;
}

std::optional<std::string> VerifyCoherent(const CoherentConfig& cfg) {
  const int n = cfg.n;
  int64_t total = 0;
  for (int64_t s : cfg.sizes) total += s;
  if (total != int64_t{n} * n) return "class sizes do not sum to n^2";
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int k = cfg.at(u, v);
      const bool diag_class = cfg.representative[k].first == cfg.representative[k].second;
      if (diag_class != (u == v)) {
        return "class " + std::to_string(k) + " mixes diagonal and off-diagonal pairs";
      }
      if (cfg.at(v, u) != cfg.transpose_of[k]) {
        return "transpose of class " + std::to_string(k) + " is not a class";
      }
    }
  }
  std::vector<std::unordered_map<int64_t, int>> reference(cfg.rank);
  for (int k = 0; k < cfg.rank; ++k) {
    reference[k] = CountsAt(cfg, cfg.representative[k].first, cfg.representative[k].second);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (CountsAt(cfg, u, v) != reference[cfg.at(u, v)]) {
        return "products are not constant on class " + std::to_string(cfg.at(u, v));
      }
    }
  }
  return std::nullopt;
}

bool IsCommutative(const CoherentConfig& cfg) {
  for (int k = 0; k < cfg.rank; ++k) {
    const auto counts = CountsAt(cfg, cfg.representative[k].first, cfg.representative[k].second);
    for (const auto& [key, count] : counts) {
      const int64_t i = key / cfg.rank, j = key % cfg.rank;
      auto it = counts.find(j * cfg.rank + i);
      if (it == counts.end() || it->second != count) return false;
    }
  }
  return true;
}

CoherentConfig WLClosure(int n, std::span<const int> initial) {
  if (initial.size() != static_cast<size_t>(n) * n) {
    throw InputError("initial pair coloring has the wrong size");
  }
  std::vector<int> color(static_cast<size_t>(n) * n);
  int num_colors = 0;
  {
    std::map<std::tuple<int, int, int>, int> ids;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        auto key = std::make_tuple(initial[u * n + v], initial[v * n + u], u == v);
        auto [it, inserted] = ids.try_emplace(key, static_cast<int>(ids.size()));
        color[u * n + v] = it->second;
      }
    }
    num_colors = static_cast<int>(ids.size());
  }

  std::vector<int> next(color.size());
  std::vector<int64_t> key(n + 1);
  for (;;) {
    std::unordered_map<std::vector<int64_t>, int, VectorHash> ids;
    ids.reserve(static_cast<size_t>(num_colors) * 4);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        key[0] = color[u * n + v];
        for (int w = 0; w < n; ++w) {
          key[w + 1] = int64_t{color[u * n + w]} * num_colors + color[w * n + v];
        }
        std::sort(key.begin() + 1, key.end());
        auto [it, inserted] = ids.try_emplace(key, static_cast<int>(ids.size()));
        next[u * n + v] = it->second;
      }
    }
    const int refined = static_cast<int>(ids.size());
    color.swap(next);
    if (refined == num_colors) break;
    num_colors = refined;
  }
  return Finalize(n, color);
}

OrbitClasses EdgeOrbitClasses(const Graph& g) {
  const int n = g.n();
  std::vector<int> initial(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      initial[u * n + v] = u == v ? 0 : (g.adjacent(u, v) ? 1 : 2);
    }
  }
  OrbitClasses out;
  out.closure = WLClosure(n, initial);
  for (int k = 0; k < out.closure.rank; ++k) {
    if (out.closure.is_diagonal(k)) continue;
    auto rep = out.closure.representative[k];
    out.class_ids.push_back(k);
    out.representative.push_back(rep);
    out.is_edge.push_back(g.adjacent(rep.first, rep.second));
  }
  return out;
}

std::vector<int> PuncturedVertices(int n, int r1, int r2) {
  std::vector<int> alpha;
  alpha.reserve(n - 2);
  for (int v = 0; v < n; ++v) {
    if (v != r1 && v != r2) alpha.push_back(v);
  }
  return alpha;
}

CoherentConfig StabilizerConfig(const Graph& g, int r1, int r2) {
  if (r1 == r2 || r1 < 0 || r2 < 0 || r1 >= g.n() || r2 >= g.n()) {
    throw InputError("stabilizer needs two distinct vertices of the graph");
  }
  const int n = g.n();
  std::vector<int> initial(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      initial[u * n + v] = (g.adjacent(u, v) << 0) | ((u == v) << 1) | ((u == r1) << 2) |
                           ((u == r2) << 3) | ((v == r1) << 4) | ((v == r2) << 5);
    }
  }
  return WLClosure(n, initial);
}

CoherentConfig RestrictConfig(const CoherentConfig& cfg, std::span<const int> vertices) {
  const int m = static_cast<int>(vertices.size());
  std::vector<char> inside(cfg.n, 0);
  for (int v : vertices) inside[v] = 1;
  for (int u = 0; u < cfg.n; ++u) {
    for (int v = 0; v < cfg.n; ++v) {
      if (cfg.fiber(u) == cfg.fiber(v) && inside[u] != inside[v]) {
        throw InputError("restriction set is not a union of fibers");
      }
    }
  }
  std::vector<int> colors(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) colors[i * m + j] = cfg.at(vertices[i], vertices[j]);
  }
  return Finalize(m, colors);
}

int CutConfig::RowPart(int label) { return kRowPart[label]; }
int CutConfig::ColPart(int label) { return kColPart[label]; }
int CutConfig::Transpose(int label) { return kTranspose[label]; }
bool CutConfig::IsDiagonalLabel(int label) {
  return label == 1 || label == 6 || label == 11;
}
int CutConfig::DiagonalLabel(int part) { return 1 + 5 * part; }
int CutConfig::OffDiagonalLabel(int part) { return 2 + 5 * part; }
int CutConfig::CrossLabel(int from_part, int to_part) {
  for (int label = 1; label <= kNumLabels; ++label) {
    if (kRowPart[label] == from_part && kColPart[label] == to_part &&
        from_part != to_part) {
      return label;
    }
  }
  return 0;
}

int CutConfig::part_of(int u) const {
  if (u < part_sizes[0]) return 0;
  if (u < part_sizes[0] + part_sizes[1]) return 1;
  return 2;
}

int CutConfig::label_at(int u, int v) const {
  const int pu = part_of(u), pv = part_of(v);
  if (pu != pv) return CrossLabel(pu, pv);
  return u == v ? DiagonalLabel(pu) : OffDiagonalLabel(pu);
}

CoherentConfig CutConfig::ToCoherentConfig() const {
  const int size = n();
  std::vector<int> labels(static_cast<size_t>(size) * size);
  for (int u = 0; u < size; ++u) {
    for (int v = 0; v < size; ++v) labels[u * size + v] = label_at(u, v);
  }
  return Finalize(size, labels);
}

PhiBlocks PhiImage::Apply(std::span<const double> coeff_by_label) const {
  PhiBlocks out;
  for (int label = 1; label <= CutConfig::kNumLabels; ++label) {
    const double c = coeff_by_label[label];
    if (c == 0.0) continue;
    for (int p = 0; p < 3; ++p) out.scalar[p] += c * of[label].scalar[p];
    out.block += c * of[label].block;
  }
  return out;
}

std::pair<CutConfig, PhiImage> MakeCutConfig(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw InputError("cut part sizes must be nonnegative");
  if (a + b + c < 1) throw InputError("cut configuration needs a nonempty part");
  CutConfig cfg;
  cfg.part_sizes = {a, b, c};
  PhiImage phi;
  for (int p = 0; p < 3; ++p) {
    const int64_t s = cfg.part_sizes[p];
    const int diag = CutConfig::DiagonalLabel(p), off = CutConfig::OffDiagonalLabel(p);
    cfg.q[diag] = s;
    cfg.q[off] = s * (s - 1);
    phi.of[diag].scalar[p] = 1.0;
    phi.of[diag].block(p, p) = 1.0;
    phi.of[off].scalar[p] = -1.0;
    phi.of[off].block(p, p) = static_cast<double>(s - 1);
    for (int r = 0; r < 3; ++r) {
      if (r == p) continue;
      const int cross = CutConfig::CrossLabel(p, r);
      cfg.q[cross] = s * cfg.part_sizes[r];
      phi.of[cross].block(p, r) = std::sqrt(static_cast<double>(s * cfg.part_sizes[r]));
    }
  }
  return {cfg, phi};
}

SchemeSpectrum ComputeSchemeSpectrum(const CoherentConfig& cfg, uint64_t seed) {
  if (!cfg.IsSymmetric()) throw InputError("scheme spectrum needs a symmetric configuration");
  if (!IsCommutative(cfg)) throw InputError("scheme spectrum needs a commutative configuration");
  const int n = cfg.n, r = cfg.rank;
  constexpr double kMergeTol = 1e-6;

  auto rayleigh = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(r);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) row[cfg.at(u, v)] += x[u] * x[v];
    }
    return row;
  };

  for (int attempt = 0; attempt < 3; ++attempt) {
    std::mt19937_64 rng(seed + 7919 * attempt);
    std::uniform_real_distribution<double> dist(1.0, 2.0);
    std::vector<double> weight(r);
    for (double& w : weight) w = dist(rng);
    Eigen::MatrixXd combo(n, n);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) combo(u, v) = weight[cfg.at(u, v)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(combo);
    if (es.info() != Eigen::Success) continue;
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = 1.0 + ev.cwiseAbs().maxCoeff();

    std::vector<Eigen::VectorXd> rows;
    std::vector<int> mult;
    bool consistent = true;
    for (int i = 0; i < n && consistent;) {
      int j = i + 1;
      while (j < n && ev[j] - ev[j - 1] <= 1e-9 * scale) ++j;
      const Eigen::VectorXd row = rayleigh(es.eigenvectors().col(i));
      for (int k = i + 1; k < j; ++k) {
        if ((rayleigh(es.eigenvectors().col(k)) - row).cwiseAbs().maxCoeff() > kMergeTol) {
          consistent = false;
          break;
        }
      }
      bool merged = false;
      for (size_t e = 0; e < rows.size(); ++e) {
        if ((rows[e] - row).cwiseAbs().maxCoeff() <= kMergeTol) {
          mult[e] += j - i;
          merged = true;
          break;
        }
      }
      if (!merged) {
        rows.push_back(row);
        mult.push_back(j - i);
      }
      i = j;
    }
    if (!consistent) continue;

    // All-ones eigenspace first: eigenvalue of A_k there is its valency.
    Eigen::VectorXd valency(r);
    for (int k = 0; k < r; ++k) valency[k] = static_cast<double>(cfg.sizes[k]) / n;
    auto trivial = std::find_if(rows.begin(), rows.end(), [&](const Eigen::VectorXd& row) {
      return (row - valency).cwiseAbs().maxCoeff() <= kMergeTol;
    });
    if (trivial == rows.end()) continue;
    const size_t t = trivial - rows.begin();
    std::rotate(rows.begin(), rows.begin() + t, rows.begin() + t + 1);
    std::rotate(mult.begin(), mult.begin() + t, mult.begin() + t + 1);

    SchemeSpectrum out;
    out.multiplicity = mult;
    out.eigenvalues.resize(static_cast<Eigen::Index>(rows.size()), r);
    for (size_t e = 0; e < rows.size(); ++e) out.eigenvalues.row(e) = rows[e].transpose();
    return out;
  }
  throw BoundError("could not separate scheme eigenspaces after 3 attempts");
}

}  // namespace bwbounds

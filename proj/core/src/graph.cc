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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

constexpr int kMaxVertices = 5000;

std::vector<int> ParseIntList(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError("malformed integer parameter '" + std::string(item) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw InputError("trailing comma in parameter list");
  }
  return out;
}

// Product of the parameters, or -1 if it exceeds kMaxVertices.
int64_t CheckedPower(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxVertices) return -1;
  }
  return r;
}

int64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (int64_t{1} << 40)) return r;
  }
  return r;
}

// Row-major tuples over alphabets of the given sizes, first coordinate most
// significant; adjacent iff exactly one coordinate differs.
Graph BuildProductOfCliques(const std::vector<int>& sizes, std::string tag) {
  int n = 1;
  for (int q : sizes) n *= q;
  const int d = static_cast<int>(sizes.size());
  std::vector<std::vector<int>> tuples(n, std::vector<int>(d));
  for (int v = 0; v < n; ++v) {
    int rest = v;
    for (int c = d - 1; c >= 0; --c) {
      tuples[v][c] = rest % sizes[c];
      rest /= sizes[c];
    }
  }
  std::vector<uint8_t> adj(static_cast<size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      int diff = 0;
      for (int c = 0; c < d; ++c) diff += tuples[u][c] != tuples[v][c];
      if (diff == 1) adj[u * n + v] = adj[v * n + u] = 1;
    }
  }
  return Graph(n, std::move(adj), std::move(tag));
}

// Sorted d-subsets of {0..v-1} in lexicographic order; adjacent iff the
// intersection has exactly `shared` elements.
Graph BuildSubsetGraph(int v, int d, int shared, std::string tag) {
  std::vector<std::vector<int>> subsets;
  std::vector<int> current;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(current.size()) == d) {
      subsets.push_back(current);
      return;
    }
    for (int x = start; x < v; ++x) {
      current.push_back(x);
      rec(x + 1);
      current.pop_back();
    }
  };
  rec(0);
  const int n = static_cast<int>(subsets.size());
  std::vector<uint8_t> adj(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int common = 0;
      for (int x : subsets[a]) {
        common += std::binary_search(subsets[b].begin(), subsets[b].end(), x);
      }
      if (common == shared) adj[a * n + b] = adj[b * n + a] = 1;
    }
  }
  return Graph(n, std::move(adj), std::move(tag));
}

}  // namespace

GraphSpec GraphSpec::Parse(std::string_view text) {
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("graph spec must look like family:params, got '" +
                     std::string(text) + "'");
  }
  const std::string_view family = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  GraphSpec spec;
  if (family == "file") {
    spec.family = Family::kFile;
    spec.path = std::string(rest);
    if (spec.path.empty()) throw InputError("file: spec needs a path");
    return spec;
  }
  if (family == "hamming") {
    spec.family = Family::kHamming;
  } else if (family == "genhamming") {
    spec.family = Family::kGenHamming;
  } else if (family == "johnson") {
    spec.family = Family::kJohnson;
  } else if (family == "kneser") {
    spec.family = Family::kKneser;
  } else {
    throw InputError("unknown graph family '" + std::string(family) + "'");
  }
  spec.params = ParseIntList(rest);
  spec.Validate();
  return spec;
}

void GraphSpec::Validate() const {
  auto need = [&](size_t count) {
    if (params.size() != count) {
      throw InputError(ToString() + ": expected " + std::to_string(count) +
                       " parameters");
    }
  };
  switch (family) {
    case Family::kHamming: {
      need(2);
      const int d = params[0], q = params[1];
      if (d < 1 || q < 2) throw InputError("hamming needs d >= 1 and q >= 2");
      if (CheckedPower(q, d) < 0) throw InputError("hamming graph too large");
      break;
    }
    case Family::kGenHamming: {
      need(3);
      for (int q : params) {
        if (q < 2) throw InputError("genhamming needs every q_i >= 2");
      }
      if (int64_t{params[0]} * params[1] * params[2] > kMaxVertices) {
        throw InputError("genhamming graph too large");
      }
      break;
    }
    case Family::kJohnson:
    case Family::kKneser: {
      need(2);
      const int v = params[0], d = params[1];
      if (d < 1 || 2 * d > v) throw InputError("subset graphs need 1 <= d <= v/2");
      if (Binomial(v, d) > kMaxVertices) throw InputError("subset graph too large");
      if (Binomial(v, d) < 2) throw InputError("graph needs at least 2 vertices");
      break;
    }
    case Family::kFile:
      if (path.empty()) throw InputError("file: spec needs a path");
      break;
  }
}

std::string GraphSpec::ToString() const {
  std::string name;
  switch (family) {
    case Family::kHamming: name = "hamming"; break;
    case Family::kGenHamming: name = "genhamming"; break;
    case Family::kJohnson: name = "johnson"; break;
    case Family::kKneser: name = "kneser"; break;
    case Family::kFile: return "file:" + path;
  }
  name += ':';
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) name += ',';
    name += std::to_string(params[i]);
  }
  return name;
}

Graph::Graph(int n, std::vector<uint8_t> adjacency, std::string tag)
    : n_(n), adj_(std::move(adjacency)), tag_(std::move(tag)) {
  if (n_ < 2) throw InputError("graph needs at least 2 vertices");
  if (adj_.size() != static_cast<size_t>(n_) * n_) {
    throw InputError("adjacency size does not match n");
  }
  neighbors_.resize(n_);
  for (int u = 0; u < n_; ++u) {
    if (adj_[u * n_ + u] != 0) throw InputError("adjacency has a nonzero diagonal");
    for (int v = 0; v < n_; ++v) {
      const uint8_t a = adj_[u * n_ + v];
      if (a > 1) throw InputError("adjacency entries must be 0 or 1");
      if (a != adj_[v * n_ + u]) throw InputError("adjacency is not symmetric");
      if (a) neighbors_[u].push_back(v);
    }
    num_edges_ += static_cast<int64_t>(neighbors_[u].size());
  }
  num_edges_ /= 2;
}

Graph Graph::FromEdges(int n, std::span<const std::pair<int, int>> edges,
                       std::string tag) {
  if (n < 2) throw InputError("graph needs at least 2 vertices");
  std::vector<uint8_t> adj(static_cast<size_t>(n) * n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge endpoint out of range: " + std::to_string(u + 1) +
                       " " + std::to_string(v + 1));
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u + 1));
    if (adj[u * n + v]) {
      throw InputError("duplicate edge " + std::to_string(u + 1) + " " +
                       std::to_string(v + 1));
    }
    adj[u * n + v] = adj[v * n + u] = 1;
  }
  return Graph(n, std::move(adj), std::move(tag));
}

std::vector<std::pair<int, int>> Graph::Edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(num_edges_);
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Eigen::MatrixXd Graph::AdjacencyMatrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors_[u]) a(u, v) = 1.0;
  }
  return a;
}

Eigen::MatrixXd Graph::LaplacianMatrix() const {
  Eigen::MatrixXd l = -AdjacencyMatrix();
  for (int u = 0; u < n_; ++u) l(u, u) = degree(u);
  return l;
}

Graph BuildGraph(const GraphSpec& spec) {
  spec.Validate();
  const std::string tag = spec.ToString();
  switch (spec.family) {
    case Family::kHamming:
      return BuildProductOfCliques(std::vector<int>(spec.params[0], spec.params[1]),
                                   tag);
    case Family::kGenHamming:
      return BuildProductOfCliques(spec.params, tag);
    case Family::kJohnson:
      return BuildSubsetGraph(spec.params[0], spec.params[1], spec.params[1] - 1, tag);
    case Family::kKneser:
      return BuildSubsetGraph(spec.params[0], spec.params[1], 0, tag);
    case Family::kFile:
      return LoadAdjacency(spec.path);
  }
  throw InputError("unhandled graph family");
}

LaplacianSpectrum ComputeLaplacianSpectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.LaplacianMatrix(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw BoundError("Laplacian eigensolver did not converge");
  }
  LaplacianSpectrum out;
  const Eigen::VectorXd& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

std::optional<int> KnownBandwidth(const GraphSpec& spec) {
  if (spec.family == Family::kHamming && spec.params.size() == 2) {
    const int d = spec.params[0], q = spec.params[1];
    if (q == 2) {
      // Harper: sum_{i<d} C(i, floor(i/2)).
      int64_t sum = 0;
      for (int i = 0; i < d; ++i) sum += Binomial(i, i / 2);
      return static_cast<int>(sum);
    }
    if (d == 2) return (q + 1) * q / 2 - 1;
  }
  if (spec.family == Family::kJohnson && spec.params.size() == 2 &&
      spec.params[1] == 2) {
    const int v = spec.params[0];
    return v * v / 4 + (v + 1) / 2 - 2;
  }
  return std::nullopt;
}

Graph ParseEdgeList(std::istream& in, std::string tag) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw InputError("edge list is empty");
  int64_t n = 0, m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) {
      throw InputError("edge list header must be 'n m'");
    }
  }
  if (n < 2 || n > kMaxVertices) throw InputError("edge list: n out of range");
  if (m < 0 || m > n * (n - 1) / 2) throw InputError("edge list: m out of range");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int64_t e = 0; e < m; ++e) {
    if (!next_line()) {
      throw InputError("edge list ends after " + std::to_string(e) + " of " +
                       std::to_string(m) + " edges");
    }
    std::istringstream row(line);
    int64_t u = 0, v = 0;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) {
      throw InputError("malformed edge line '" + line + "'");
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw InputError("vertex index out of range in '" + line + "'");
    }
    edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  if (next_line()) throw InputError("edge list has more lines than announced");
  return Graph::FromEdges(static_cast<int>(n), edges, std::move(tag));
}

Graph LoadAdjacency(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path.string() + "'");
  return ParseEdgeList(in, "file:" + path.string());
}

void WriteEdgeList(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.Edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace bwbounds

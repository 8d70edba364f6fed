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

// Simple undirected graphs, the symmetric families used throughout the
// library (Hamming, generalized Hamming, Johnson, Kneser), Laplacian spectra,
// and the plain-text edge-list format.

#ifndef BWBOUNDS_GRAPH_H_
#define BWBOUNDS_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bwbounds {

enum class Family { kHamming, kGenHamming, kJohnson, kKneser, kFile };

// A graph family plus its integer parameters, or a path for file input.
// Text form: "hamming:d,q", "genhamming:q1,q2,q3", "johnson:v,d",
// "kneser:v,d", "file:<path>".
struct GraphSpec {
  Family family = Family::kHamming;
  std::vector<int> params;
  std::string path;

  // Throws InputError on unknown families or malformed parameter lists.
  static GraphSpec Parse(std::string_view text);

  // Throws InputError when the parameters are out of range for the family.
  void Validate() const;

  std::string ToString() const;
};

class Graph {
 public:
  // `adjacency` is row-major n*n with entries in {0,1}. Throws InputError
  // unless it is symmetric with a zero diagonal and n >= 2.
  Graph(int n, std::vector<uint8_t> adjacency, std::string tag = {});

  // Undirected edge list with 0-based endpoints. Throws InputError on
  // self-loops, duplicates or out-of-range endpoints.
  static Graph FromEdges(int n, std::span<const std::pair<int, int>> edges,
                         std::string tag = {});

  int n() const { return n_; }
  bool adjacent(int u, int v) const { return adj_[u * n_ + v] != 0; }
  std::span<const int> neighbors(int u) const { return neighbors_[u]; }
  int degree(int u) const { return static_cast<int>(neighbors_[u].size()); }
  int64_t num_edges() const { return num_edges_; }
  const std::string& tag() const { return tag_; }
  const std::vector<uint8_t>& adjacency() const { return adj_; }

  // Edges as (u, v) with u < v, in row-major order.
  std::vector<std::pair<int, int>> Edges() const;

  Eigen::MatrixXd AdjacencyMatrix() const;
  Eigen::MatrixXd LaplacianMatrix() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  int n_;
  std::vector<uint8_t> adj_;
  std::vector<std::vector<int>> neighbors_;
  int64_t num_edges_ = 0;
  std::string tag_;
};

// Vertices are enumerated in lexicographic order: tuples for the Hamming
// families (first coordinate most significant), sorted d-subsets of
// {0..v-1} for Johnson and Kneser.
Graph BuildGraph(const GraphSpec& spec);

struct LaplacianSpectrum {
  std::vector<double> eigenvalues;  // nondecreasing

  double lambda2() const { return eigenvalues[1]; }
  double lambda_max() const { return eigenvalues.back(); }
};

// Dense symmetric eigensolve of Diag(degrees) - A.
LaplacianSpectrum ComputeLaplacianSpectrum(const Graph& g);

// Exact bandwidths known in closed form: hypercubes H(d,2), lattice graphs
// H(2,q), triangular graphs J(v,2). nullopt for everything else.
std::optional<int> KnownBandwidth(const GraphSpec& spec);

// Edge-list text: first line "n m", then m lines "u v" with 1-based
// endpoints. Undirected; duplicates and self-loops are rejected.
Graph ParseEdgeList(std::istream& in, std::string tag = {});
Graph LoadAdjacency(const std::filesystem::path& path);
void WriteEdgeList(const Graph& g, std::ostream& out);

}  // namespace bwbounds

#endif  // BWBOUNDS_GRAPH_H_

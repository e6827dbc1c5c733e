#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace zgs {

/// Unordered edge stored with lo < hi. Node indices are 0-based here; the
/// scenario parser converts from the 1-based indices users write.
struct Edge {
  int lo = 0;
  int hi = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct LaplacianSpectrum {
  double lambda2 = 0.0;  // algebraic connectivity
  double lambdaN = 0.0;  // spectral radius
};

/// Connected undirected graph. Immutable once constructed.
class Graph {
 public:
  /// Throws InvalidGraph on fewer than two nodes, self loops, duplicate edges,
  /// out-of-range endpoints, or a disconnected edge set.
  Graph(int n_nodes, const std::vector<std::pair<int, int>>& edges);

  static Graph path(int n);
  static Graph ring(int n);
  static Graph complete(int n);
  /// Erdos-Renyi G(n, p) conditioned on connectivity by rejection.
  static Graph random_connected(int n, double edge_probability, std::uint64_t seed);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_index(int i, int j) const;  // -1 when {i,j} is not an edge

  /// Sorted ascending.
  const std::vector<int>& neighbors(int i) const;
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }
  int max_degree() const;

  Eigen::MatrixXd laplacian() const;
  /// Laplacian with per-edge weights, indexed like edges().
  Eigen::MatrixXd weighted_laplacian(const std::vector<double>& edge_weights) const;

  LaplacianSpectrum spectrum() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace zgs

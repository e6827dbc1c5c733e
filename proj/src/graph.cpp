#include "zgs/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "zgs/errors.hpp"
#include "zgs/linalg.hpp"
#include "zgs/random.hpp"

namespace zgs {

namespace {

bool connected(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j : adj[i]) {
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

}  // namespace

Graph::Graph(int n_nodes, const std::vector<std::pair<int, int>>& edges)
    : n_(n_nodes), adjacency_(static_cast<std::size_t>(std::max(n_nodes, 0))) {
  if (n_nodes < 2) throw InvalidGraph("graph needs at least 2 nodes");
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) {
      throw InvalidGraph("edge {" + std::to_string(a) + "," + std::to_string(b) +
                         "} has an endpoint out of range");
    }
    if (a == b) throw InvalidGraph("self loop at node " + std::to_string(a));
    const Edge e{std::min(a, b), std::max(a, b)};
    if (!seen.insert(e).second) {
      throw InvalidGraph("duplicate edge {" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                         "}");
    }
  }
  edges_.assign(seen.begin(), seen.end());
  for (const auto& e : edges_) {
    adjacency_[e.lo].push_back(e.hi);
    adjacency_[e.hi].push_back(e.lo);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  if (!connected(n_, adjacency_)) throw InvalidGraph("graph is not connected");
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph Graph::ring(int n) {
  if (n < 3) return path(n);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph(n, e);
}

Graph Graph::random_connected(int n, double edge_probability, std::uint64_t seed) {
  if (n < 2) throw InvalidGraph("graph needs at least 2 nodes");
  if (!(edge_probability > 0.0 && edge_probability <= 1.0)) {
    throw InvalidGraph("edge probability must be in (0, 1]");
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<std::pair<int, int>> e;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < edge_probability) {
          e.emplace_back(i, j);
          adj[i].push_back(j);
          adj[j].push_back(i);
        }
      }
    }
    if (connected(n, adj)) return Graph(n, e);
  }
  throw InvalidGraph("random_connected: no connected sample after 100000 draws");
}

int Graph::edge_index(int i, int j) const {
  const Edge e{std::min(i, j), std::max(i, j)};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

const std::vector<int>& Graph::neighbors(int i) const {
  if (i < 0 || i >= n_) throw InvalidArgument("node index " + std::to_string(i) + " out of range");
  return adjacency_[i];
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nb : adjacency_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

Eigen::MatrixXd Graph::laplacian() const {
  return weighted_laplacian(std::vector<double>(edges_.size(), 1.0));
}

Eigen::MatrixXd Graph::weighted_laplacian(const std::vector<double>& w) const {
  if (w.size() != edges_.size()) throw DimensionMismatch("one weight per edge required");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n_, n_);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto [i, j] = edges_[k];
    l(i, i) += w[k];
    l(j, j) += w[k];
    l(i, j) -= w[k];
    l(j, i) -= w[k];
  }
  return l;
}

LaplacianSpectrum Graph::spectrum() const {
  const auto eig = jacobi_eigen(laplacian());
  return {eig.values(1), eig.values(n_ - 1)};
}

}  // namespace zgs

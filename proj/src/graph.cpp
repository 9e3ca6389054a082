#include "clusterforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace clusterforge {

namespace {

void check_adjacency(const Matrix& a, bool allow_diagonal) {
  if (a.rows() != a.cols()) throw InvalidParam("adjacency matrix must be square");
  if (a.rows() < 1) throw InvalidParam("graph needs at least one node");
  if (!a.allFinite()) throw InvalidParam("adjacency entries must be finite");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (!allow_diagonal && a(i, i) != 0.0)
      throw InvalidParam("cluster graph carries no self-loops (node " +
                         std::to_string(i + 1) + ")");
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i))
        throw InvalidParam("adjacency matrix must be exactly symmetric");
  }
}

double checked_weight(double w) {
  if (!std::isfinite(w) || w == 0.0)
    throw InvalidParam("edge weight must be finite and nonzero");
  return w;
}

// Reconstructs one odd cycle from the BFS forest once an edge joins two
// same-colored nodes u, v. Returned 0-based, canonicalized so the smallest
// node comes first and its smaller neighbor second.
std::vector<int> odd_cycle_certificate(int u, int v, const std::vector<int>& parent,
                                       const std::vector<int>& depth) {
  std::vector<int> from_u{u}, from_v{v};
  int a = u, b = v;
  while (depth[a] > depth[b]) from_u.push_back(a = parent[a]);
  while (depth[b] > depth[a]) from_v.push_back(b = parent[b]);
  while (a != b) {
    from_u.push_back(a = parent[a]);
    from_v.push_back(b = parent[b]);
  }
  std::vector<int> cycle = from_u;  // u .. ancestor
  for (int k = static_cast<int>(from_v.size()) - 2; k >= 0; --k)
    cycle.push_back(from_v[k]);  // ancestor-exclusive .. v

  auto lowest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), lowest, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1])
    std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

}  // namespace

ClusterGraph::ClusterGraph(Matrix adjacency) : adj_(std::move(adjacency)) {
  check_adjacency(adj_, /*allow_diagonal=*/false);
}

ClusterGraph ClusterGraph::from_cross_block(const Matrix& cross_block) {
  const Eigen::Index l = cross_block.rows(), m = cross_block.cols();
  if (l + m < 1) throw InvalidParam("cross block spans no nodes");
  Matrix a = Matrix::Zero(l + m, l + m);
  a.topRightCorner(l, m) = cross_block;
  a.bottomLeftCorner(m, l) = cross_block.transpose();
  return ClusterGraph(std::move(a));
}

TmsGraph::TmsGraph(Matrix coupling) : g_(std::move(coupling)) {
  check_adjacency(g_, /*allow_diagonal=*/true);
}

TmsGraph TmsGraph::from_symmetrized(const Matrix& coupling) {
  if (coupling.rows() != coupling.cols())
    throw InvalidParam("coupling matrix must be square");
  if (!is_symmetric(coupling, 1e-9))
    throw NotSymmetric("coupling matrix is not symmetric");
  return TmsGraph(symmetrized(coupling));
}

bool TmsGraph::is_full_rank(double rank_tol) const {
  const Vector sv = g_.jacobiSvd().singularValues();
  return sv(sv.size() - 1) > rank_tol * sv(0);
}

BipartitePartition partition_for_block(const Matrix& cross_block) {
  const int l = static_cast<int>(cross_block.rows());
  const int n = l + static_cast<int>(cross_block.cols());
  BipartitePartition p;
  p.perm.resize(n);
  for (int i = 0; i < n; ++i) {
    p.perm[i] = i;
    (i < l ? p.plus_set : p.minus_set).push_back(i);
  }
  p.cross_block = cross_block;
  return p;
}

BipartitePartition bipartite_partition(const ClusterGraph& g) {
  const int n = g.size();
  std::vector<int> color(n, -1), parent(n, -1), depth(n, 0);

  for (int root = 0; root < n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;  // lowest node of the component lands in the plus set
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v) {
        if (!g.has_edge(u, v)) continue;
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          std::vector<int> cycle = odd_cycle_certificate(u, v, parent, depth);
          for (int& node : cycle) ++node;  // report 1-based
          throw NotBipartite(std::move(cycle));
        }
      }
    }
  }

  BipartitePartition p;
  p.perm.assign(n, -1);
  for (int i = 0; i < n; ++i)
    (color[i] == 0 ? p.plus_set : p.minus_set).push_back(i);
  const int l = p.plus_count();
  for (int k = 0; k < l; ++k) p.perm[p.plus_set[k]] = k;
  for (int k = 0; k < static_cast<int>(p.minus_set.size()); ++k)
    p.perm[p.minus_set[k]] = l + k;

  p.cross_block.resize(l, n - l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < n - l; ++j)
      p.cross_block(i, j) = g.weight(p.plus_set[i], p.minus_set[j]);
  return p;
}

std::pair<ClusterGraph, Matrix> canonical_permute(const ClusterGraph& g,
                                                  const BipartitePartition& p) {
  const int n = g.size();
  if (p.size() != n || p.plus_count() + static_cast<int>(p.minus_set.size()) != n)
    throw PartitionMismatch("partition covers a different node count");

  std::vector<int> side(n, -1);
  for (int i : p.plus_set) {
    if (i < 0 || i >= n || side[i] != -1) throw PartitionMismatch("plus set is not a valid node subset");
    side[i] = 0;
  }
  for (int i : p.minus_set) {
    if (i < 0 || i >= n || side[i] != -1) throw PartitionMismatch("minus set is not a valid node subset");
    side[i] = 1;
  }
  const int l = p.plus_count();
  for (int k = 0; k < l; ++k)
    if (p.perm[p.plus_set[k]] != k) throw PartitionMismatch("permutation disagrees with the plus set");
  for (int k = 0; k < n - l; ++k)
    if (p.perm[p.minus_set[k]] != l + k) throw PartitionMismatch("permutation disagrees with the minus set");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.has_edge(i, j) && side[i] == side[j])
        throw PartitionMismatch("edge does not cross the partition");

  Matrix relabeled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) relabeled(p.perm[i], p.perm[j]) = g.weight(i, j);
  Matrix block = relabeled.topRightCorner(l, n - l);
  if (p.cross_block.rows() != block.rows() || p.cross_block.cols() != block.cols() ||
      (block.size() > 0 && p.cross_block != block))
    throw PartitionMismatch("stored cross block disagrees with the graph");
  return {ClusterGraph(std::move(relabeled)), std::move(block)};
}

ClusterGraph generate_chain(int n, double weight) {
  if (n < 1) throw InvalidParam("chain needs n >= 1");
  const double w = checked_weight(weight);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = w;
  return ClusterGraph(std::move(a));
}

ClusterGraph generate_cycle(int n, double weight) {
  if (n < 3) throw InvalidParam("cycle needs n >= 3");
  const double w = checked_weight(weight);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    a(i, j) = a(j, i) = w;
  }
  return ClusterGraph(std::move(a));
}

ClusterGraph generate_star(int n, double weight) {
  if (n < 1) throw InvalidParam("star needs n >= 1");
  const double w = checked_weight(weight);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) a(0, i) = a(i, 0) = w;
  return ClusterGraph(std::move(a));
}

ClusterGraph generate_complete(int n, double weight) {
  if (n < 1) throw InvalidParam("complete graph needs n >= 1");
  const double w = checked_weight(weight);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = w;
  return ClusterGraph(std::move(a));
}

ClusterGraph generate_square_lattice(int rows, int cols, double weight) {
  if (rows < 1 || cols < 1) throw InvalidParam("lattice needs rows, cols >= 1");
  const double w = checked_weight(weight);
  const int n = rows * cols;
  Matrix a = Matrix::Zero(n, n);
  auto id = [cols](int r, int c) { return r * cols + c; };  // row-major
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) a(id(r, c), id(r, c + 1)) = a(id(r, c + 1), id(r, c)) = w;
      if (r + 1 < rows) a(id(r, c), id(r + 1, c)) = a(id(r + 1, c), id(r, c)) = w;
    }
  return ClusterGraph(std::move(a));
}

}  // namespace clusterforge

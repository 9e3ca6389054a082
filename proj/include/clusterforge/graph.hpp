#pragma once

#include <utility>
#include <vector>

#include "clusterforge/errors.hpp"
#include "clusterforge/numeric.hpp"

namespace clusterforge {

/// Weighted simple graph of a CV cluster state.
///
/// The adjacency matrix is stored dense, exactly symmetric, with a zero
/// diagonal (no self-loops). Node indices are 0-based throughout the C++
/// API; external formats and reports are 1-based.
class ClusterGraph {
 public:
  /// Takes ownership of the adjacency matrix. Throws InvalidParam unless the
  /// matrix is square with n >= 1, finite, exactly symmetric, and zero on the
  /// diagonal.
  explicit ClusterGraph(Matrix adjacency);

  /// Builds the canonical bipartite adjacency [[0, X], [X^T, 0]] from the
  /// cross block X (plus rows, minus columns).
  static ClusterGraph from_cross_block(const Matrix& cross_block);

  int size() const { return static_cast<int>(adj_.rows()); }
  const Matrix& adjacency() const { return adj_; }
  double weight(int i, int j) const { return adj_(i, j); }

  /// An edge exists iff its stored weight is nonzero, exactly.
  bool has_edge(int i, int j) const { return adj_(i, j) != 0.0; }

  bool operator==(const ClusterGraph& other) const {
    return adj_.rows() == other.adj_.rows() && adj_ == other.adj_;
  }

 private:
  Matrix adj_;
};

/// Symmetric coupling matrix of a multimode two-mode-squeezing Hamiltonian.
/// Diagonal entries are allowed (single-mode squeezing terms).
class TmsGraph {
 public:
  /// Throws InvalidParam unless square, n >= 1, finite, exactly symmetric.
  explicit TmsGraph(Matrix coupling);

  /// Symmetrizes the input first; for matrices assembled by arithmetic whose
  /// asymmetry is pure rounding noise.
  static TmsGraph from_symmetrized(const Matrix& coupling);

  int size() const { return static_cast<int>(g_.rows()); }
  const Matrix& matrix() const { return g_; }

  /// Smallest singular value > rank_tol * largest.
  bool is_full_rank(double rank_tol = kDefaultRankTol) const;

 private:
  Matrix g_;
};

/// Two-coloring of a bipartite graph together with the node relabeling that
/// brings the adjacency into block form [[0, A0], [A0^T, 0]].
struct BipartitePartition {
  std::vector<int> plus_set;   ///< ascending, 0-based
  std::vector<int> minus_set;  ///< ascending, 0-based
  std::vector<int> perm;       ///< perm[original] = canonical index, 0-based
  Matrix cross_block;          ///< L x (n-L) block of the relabeled adjacency

  int plus_count() const { return static_cast<int>(plus_set.size()); }
  int size() const { return static_cast<int>(perm.size()); }
};

/// Partition of a graph already in canonical block order: modes 0..L-1 are
/// plus, the rest minus, identity relabeling.
BipartitePartition partition_for_block(const Matrix& cross_block);

/// Two-colors the graph, putting the lowest-indexed node of each connected
/// component into the plus set. Throws NotBipartite with an odd-cycle
/// certificate when no two-coloring exists.
BipartitePartition bipartite_partition(const ClusterGraph& g);

/// Relabels g by p.perm and returns the relabeled graph along with its
/// cross block. Throws PartitionMismatch if p was not produced for g.
std::pair<ClusterGraph, Matrix> canonical_permute(const ClusterGraph& g,
                                                  const BipartitePartition& p);

// Standard generators. Nodes are numbered from 1 externally; the weight
// applies uniformly to every edge and must be finite and nonzero.
ClusterGraph generate_chain(int n, double weight = 1.0);
ClusterGraph generate_cycle(int n, double weight = 1.0);  // n >= 3
ClusterGraph generate_star(int n, double weight = 1.0);   // node 1 is the hub
ClusterGraph generate_complete(int n, double weight = 1.0);
ClusterGraph generate_square_lattice(int rows, int cols, double weight = 1.0);

}  // namespace clusterforge

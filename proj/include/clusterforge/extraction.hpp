#pragma once

#include <vector>

#include "clusterforge/graph.hpp"
#include "clusterforge/numeric.hpp"

namespace clusterforge {

/// Weighted bipartite cluster recovered from a full-rank squeezing matrix:
/// after relabeling modes by perm, the original coupling matrix equals the
/// synthesis of cross_block with the returned factors.
struct ExtractionResult {
  Matrix cross_block;     ///< L x (n-L)
  Matrix plus_factor;     ///< L x L, SPD
  Matrix minus_factor;    ///< (n-L) x (n-L), SPD
  std::vector<int> perm;  ///< perm[original mode] = canonical index, 0-based
  int plus_count = 0;     ///< number of positive eigenvalues of the input
};

/// Recovers a cluster graph that the Hamiltonian of g generates.
///
/// Splits the eigenvector basis by eigenvalue sign, selects pivot rows by a
/// greedy volume-maximizing rule (exhaustive fallback for n <= 12), and
/// column-reduces both subspaces to the common echelon form. Throws
/// RankDeficient when g has a numerically null eigenvalue, PivotFailure when
/// no row selection yields acceptably conditioned blocks.
ExtractionResult extract_cluster(const TmsGraph& g, double tol = kDefaultRankTol);

/// |synthesize(result) - P g P^T| / |g| in spectral norm.
double resynthesis_residual(const TmsGraph& g, const ExtractionResult& result);

}  // namespace clusterforge

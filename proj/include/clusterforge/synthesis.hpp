#pragma once

#include <utility>

#include "clusterforge/graph.hpp"
#include "clusterforge/numeric.hpp"

namespace clusterforge {

/// The free parameters of the squeezing-matrix family for a fixed cluster:
/// two symmetric positive-definite matrices, one per partition side.
struct SynthesisFreedom {
  Matrix plus_factor;   ///< L x L, acts on the plus modes
  Matrix minus_factor;  ///< (n-L) x (n-L), acts on the minus modes

  static SynthesisFreedom identity(int plus_dim, int minus_dim);
  /// scale * identity on both sides; scale 0.5 reproduces the square-cluster
  /// coupling matrix verbatim.
  static SynthesisFreedom uniform(int plus_dim, int minus_dim, double scale);
};

/// The mutually orthogonal PSD factors
///   G_+ = [I; X^T] B [I, X],   G_- = [-X; I] C [-X^T, I]
/// for cross block X. Their difference is the synthesized coupling matrix.
/// Throws DimensionMismatch / NotPositiveDefinite.
std::pair<Matrix, Matrix> tms_psd_parts(const Matrix& cross_block,
                                        const SynthesisFreedom& freedom,
                                        double pd_tol = kDefaultPdTol);

/// Most general full-rank squeezing matrix generating the bipartite cluster
/// with the given cross block. Symmetric to the last bit; full rank for any
/// valid freedom.
TmsGraph synthesize_tms(const Matrix& cross_block, const SynthesisFreedom& freedom,
                        double pd_tol = kDefaultPdTol);

/// max(|[-X^T, I] G_+|, |[I, X] G_-|) in spectral norm; ~0 for factors
/// produced by tms_psd_parts.
double orthogonality_residual(const Matrix& cross_block, const Matrix& g_plus,
                              const Matrix& g_minus);

/// Spectral norm of the assembled nullifier matrix [-A, I] T U_alpha for a
/// cluster graph in canonical block order. Decays to zero with alpha exactly
/// when g generates the cluster.
double sufficiency_residual(const ClusterGraph& canonical, const TmsGraph& g,
                            double alpha);

}  // namespace clusterforge

#pragma once

#include "clusterforge/graph.hpp"
#include "clusterforge/numeric.hpp"

namespace clusterforge {

/// Decomposition of a symmetric matrix G into mutually orthogonal PSD parts,
/// G = positive - negative, with Moore-Penrose pseudoinverses and the
/// projectors onto the positive and negative eigenspaces.
struct SignedSplit {
  Matrix positive;             ///< PSD, spectrum = positive eigenvalues of G
  Matrix negative;             ///< PSD, spectrum = |negative eigenvalues| of G
  Matrix projector_positive;   ///< orthogonal projector onto the positive subspace
  Matrix projector_negative;
  Matrix positive_pinv;        ///< pseudoinverse of positive
  Matrix negative_pinv;
  Vector eigenvalues;          ///< sorted descending
  Matrix eigenvectors;         ///< columns, aligned with eigenvalues
  int rank_positive = 0;
  int rank_negative = 0;
  bool rank_deficient = false; ///< some |eigenvalue| fell below the threshold

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Splits a symmetric matrix by sign of its spectrum. Eigenvalues with
/// |lambda| <= rank_tol * max|lambda| are treated as zero; their presence is
/// flagged through rank_deficient, not fatal. Throws NotSymmetric.
SignedSplit split_signed(const Matrix& g, double rank_tol = kDefaultRankTol);
SignedSplit split_signed(const TmsGraph& g, double rank_tol = kDefaultRankTol);

/// e^{s G} for symmetric G, via eigendecomposition. Symmetric positive
/// definite by construction. Throws NotSymmetric.
Matrix matrix_exp_sym(const Matrix& g, double s);

/// Diagnostics for the exponential factorization and the projector limits of
/// a signed split at squeezing strength alpha. Smaller is better.
struct ProjectorLimitCheck {
  /// |e^{aG} - e^{-a G_-} e^{a G_+}| / max(1, |e^{aG}|); an exact identity at
  /// every alpha, so this measures rounding only.
  double factorization_residual = 0.0;
  /// |e^{-a G_+} - P_-|; decays like e^{-a lambda_min+} for full-rank G.
  double limit_residual_plus = 0.0;
  /// |e^{-a G_-} - P_+|.
  double limit_residual_minus = 0.0;
};

ProjectorLimitCheck check_projector_limit(const SignedSplit& split, double alpha);

}  // namespace clusterforge

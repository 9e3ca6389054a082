#pragma once

#include <optional>
#include <vector>

#include "clusterforge/graph.hpp"
#include "clusterforge/numeric.hpp"

namespace clusterforge {

/// Linear transform on the quadrature vector x = (q_1..q_n, p_1..p_n).
struct SymplecticTransform {
  int modes = 0;
  double alpha = 0.0;  ///< squeezing strength that produced the transform, if any
  Matrix s;            ///< 2n x 2n
};

/// 2n x 2n symplectic form J = [[0, I], [-I, 0]].
Matrix symplectic_form(int modes);

/// |S J S^T - J| in spectral norm; zero for an exact symplectic matrix.
double symplecticity_residual(const Matrix& s);

/// Heisenberg transform of the squeezing Hamiltonian at strength alpha:
/// block diagonal (e^{aG}, e^{-aG}). Throws InvalidParam for alpha < 0.
SymplecticTransform heisenberg_transform(const TmsGraph& g, double alpha);

/// Output phase-shift matrix rotating every minus mode by -pi/2
/// (q -> -p, p -> q there) and fixing the plus modes. Orthogonal and
/// symplectic. The partition's sets index modes of the transform directly.
SymplecticTransform phase_shift_matrix(const BipartitePartition& p);

/// Covariance S S^T of the output state for vacuum input (unit vacuum
/// variance per quadrature).
Matrix output_covariance(const SymplecticTransform& s);

/// Williamson symplectic spectrum of a covariance matrix, descending.
/// All ones for a pure Gaussian state.
std::vector<double> symplectic_eigenvalues(const Matrix& sigma);

/// Variances of the nullifier components p - A q on the output state.
struct NullifierReport {
  double alpha = 0.0;
  std::vector<double> variances;  ///< per mode, vacuum-noise units
  double max_variance = 0.0;
  Matrix covariance;              ///< n x n nullifier covariance, symmetric PSD
};

/// Evaluates the assembled nullifier matrix [-A, I] T U_alpha against vacuum.
/// A, p and g must share one labeling of the modes; every edge of A must
/// cross p's sets. Throws DimensionMismatch / PartitionMismatch.
NullifierReport nullifier_report(const ClusterGraph& a, const BipartitePartition& p,
                                 const TmsGraph& g, double alpha);

struct AlphaSweep {
  std::vector<NullifierReport> reports;
  /// Least-squares slope of log(max_variance) vs alpha, ignoring points
  /// below 1e-14; empty when fewer than two usable points exist.
  std::optional<double> decay_rate;
};

/// One report per alpha; the list must be nonempty, nonnegative, ascending.
AlphaSweep sweep_alpha(const ClusterGraph& a, const BipartitePartition& p,
                       const TmsGraph& g, const std::vector<double>& alphas);

}  // namespace clusterforge

#pragma once

#include <Eigen/Dense>

namespace clusterforge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative eigenvalue threshold below which a spectrum entry counts as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// Relative threshold for the positive-definiteness check on freedom matrices.
inline constexpr double kDefaultPdTol = 1e-10;

/// Largest singular value; 0 for matrices with an empty dimension.
double spectral_norm(const Matrix& m);

/// Largest absolute entry; 0 for matrices with an empty dimension.
double max_abs(const Matrix& m);

/// (m + m^T) / 2. The result is symmetric to the last bit.
Matrix symmetrized(const Matrix& m);

/// True when every entry agrees with its transpose within tol * max(1, |m|_max).
bool is_symmetric(const Matrix& m, double tol = 1e-10);

}  // namespace clusterforge

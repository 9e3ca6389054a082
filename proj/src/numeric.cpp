#include "clusterforge/numeric.hpp"

#include <cmath>

namespace clusterforge {

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double max_abs(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) return false;
  return true;
}

}  // namespace clusterforge

#include "clusterforge/synthesis.hpp"

#include <string>

#include "clusterforge/errors.hpp"
#include "clusterforge/gaussian.hpp"

namespace clusterforge {

namespace {

void check_spd(const Matrix& m, double pd_tol, const char* name) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(name) + " must be square");
  if (m.size() == 0) return;  // empty side of the partition
  if (!is_symmetric(m, 1e-10))
    throw NotPositiveDefinite(std::string(name) + " must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m));
  const double low = solver.eigenvalues()(0);
  const double high = solver.eigenvalues()(m.rows() - 1);
  if (high <= 0 || low <= pd_tol * high)
    throw NotPositiveDefinite(std::string(name) + " must be positive definite");
}

void check_dims(const Matrix& cross_block, const SynthesisFreedom& f) {
  if (f.plus_factor.rows() != cross_block.rows())
    throw DimensionMismatch("plus factor does not match the cross block rows");
  if (f.minus_factor.rows() != cross_block.cols())
    throw DimensionMismatch("minus factor does not match the cross block columns");
}

}  // namespace

SynthesisFreedom SynthesisFreedom::identity(int plus_dim, int minus_dim) {
  return uniform(plus_dim, minus_dim, 1.0);
}

SynthesisFreedom SynthesisFreedom::uniform(int plus_dim, int minus_dim, double scale) {
  if (plus_dim < 0 || minus_dim < 0) throw InvalidParam("negative freedom dimension");
  if (scale <= 0) throw InvalidParam("freedom scale must be positive");
  SynthesisFreedom f;
  f.plus_factor = scale * Matrix::Identity(plus_dim, plus_dim);
  f.minus_factor = scale * Matrix::Identity(minus_dim, minus_dim);
  return f;
}

std::pair<Matrix, Matrix> tms_psd_parts(const Matrix& cross_block,
                                        const SynthesisFreedom& freedom,
                                        double pd_tol) {
  check_dims(cross_block, freedom);
  check_spd(freedom.plus_factor, pd_tol, "plus factor");
  check_spd(freedom.minus_factor, pd_tol, "minus factor");

  const Eigen::Index l = cross_block.rows(), m = cross_block.cols(), n = l + m;
  Matrix plus_frame(n, l);  // [I; X^T]
  plus_frame.topRows(l) = Matrix::Identity(l, l);
  plus_frame.bottomRows(m) = cross_block.transpose();
  Matrix minus_frame(n, m);  // [-X; I]
  minus_frame.topRows(l) = -cross_block;
  minus_frame.bottomRows(m) = Matrix::Identity(m, m);

  Matrix g_plus = symmetrized(plus_frame * freedom.plus_factor * plus_frame.transpose());
  Matrix g_minus =
      symmetrized(minus_frame * freedom.minus_factor * minus_frame.transpose());
  return {std::move(g_plus), std::move(g_minus)};
}

TmsGraph synthesize_tms(const Matrix& cross_block, const SynthesisFreedom& freedom,
                        double pd_tol) {
  auto [g_plus, g_minus] = tms_psd_parts(cross_block, freedom, pd_tol);
  TmsGraph g(symmetrized(g_plus - g_minus));
  // Invertible for any valid freedom: the assembly is a congruence of
  // diag(B, -C) by a matrix whose Gram matrix dominates the identity.
  if (!g.is_full_rank())
    throw RankDeficient("synthesized coupling matrix failed the rank check");
  return g;
}

double orthogonality_residual(const Matrix& cross_block, const Matrix& g_plus,
                              const Matrix& g_minus) {
  const Eigen::Index l = cross_block.rows(), m = cross_block.cols(), n = l + m;
  if (g_plus.rows() != n || g_plus.cols() != n || g_minus.rows() != n ||
      g_minus.cols() != n)
    throw DimensionMismatch("factor size does not match the cross block");

  Matrix minus_side(m, n);  // [-X^T, I]
  minus_side.leftCols(l) = -cross_block.transpose();
  minus_side.rightCols(m) = Matrix::Identity(m, m);
  Matrix plus_side(l, n);  // [I, X]
  plus_side.leftCols(l) = Matrix::Identity(l, l);
  plus_side.rightCols(m) = cross_block;

  return std::max(spectral_norm(minus_side * g_plus),
                  spectral_norm(plus_side * g_minus));
}

double sufficiency_residual(const ClusterGraph& canonical, const TmsGraph& g,
                            double alpha) {
  const int n = canonical.size();
  if (g.size() != n) throw DimensionMismatch("cluster and TMS graph sizes differ");
  const BipartitePartition p = bipartite_partition(canonical);

  Matrix rows(n, 2 * n);  // [-A, I]
  rows.leftCols(n) = -canonical.adjacency();
  rows.rightCols(n) = Matrix::Identity(n, n);
  const Matrix k =
      rows * phase_shift_matrix(p).s * heisenberg_transform(g, alpha).s;
  return spectral_norm(k);
}

}  // namespace clusterforge

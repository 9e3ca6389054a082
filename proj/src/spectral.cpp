#include "clusterforge/spectral.hpp"

#include <cmath>

#include "clusterforge/errors.hpp"

namespace clusterforge {

namespace {

// Eigendecomposition with eigenvalues sorted descending.
void eig_descending(const Matrix& g, Vector& values, Matrix& vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(g));
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition did not converge");
  const Eigen::Index n = g.rows();
  values.resize(n);
  vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values(k) = solver.eigenvalues()(n - 1 - k);
    vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
}

void require_symmetric(const Matrix& g, const char* what) {
  if (g.rows() != g.cols() || !is_symmetric(g, 1e-10))
    throw NotSymmetric(std::string(what) + " requires a symmetric matrix");
}

// V f(lambda) V^T for a scalar map over the stored spectrum.
template <typename F>
Matrix spectral_map(const SignedSplit& s, F&& f) {
  Vector d(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = f(k);
  return s.eigenvectors * d.asDiagonal() * s.eigenvectors.transpose();
}

}  // namespace

SignedSplit split_signed(const Matrix& g, double rank_tol) {
  require_symmetric(g, "split_signed");
  if (rank_tol <= 0) throw InvalidParam("rank_tol must be positive");

  SignedSplit s;
  eig_descending(g, s.eigenvalues, s.eigenvectors);
  const Eigen::Index n = s.eigenvalues.size();
  const double threshold = rank_tol * s.eigenvalues.cwiseAbs().maxCoeff();

  // sign class per eigenvalue: +1, -1, or 0 (numerically null)
  std::vector<int> sign(n, 0);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (s.eigenvalues(k) > threshold) sign[k] = 1;
    else if (s.eigenvalues(k) < -threshold) sign[k] = -1;
    else s.rank_deficient = true;
  }
  for (int c : sign) {
    if (c > 0) ++s.rank_positive;
    if (c < 0) ++s.rank_negative;
  }

  auto pick = [&](int wanted, auto&& f) {
    return spectral_map(s, [&](Eigen::Index k) {
      return sign[k] == wanted ? f(s.eigenvalues(k)) : 0.0;
    });
  };
  s.positive = symmetrized(pick(1, [](double v) { return v; }));
  s.negative = symmetrized(pick(-1, [](double v) { return -v; }));
  s.positive_pinv = symmetrized(pick(1, [](double v) { return 1.0 / v; }));
  s.negative_pinv = symmetrized(pick(-1, [](double v) { return -1.0 / v; }));
  s.projector_positive = symmetrized(pick(1, [](double) { return 1.0; }));
  s.projector_negative = symmetrized(pick(-1, [](double) { return 1.0; }));
  return s;
}

SignedSplit split_signed(const TmsGraph& g, double rank_tol) {
  return split_signed(g.matrix(), rank_tol);
}

Matrix matrix_exp_sym(const Matrix& g, double s) {
  require_symmetric(g, "matrix_exp_sym");
  Vector values;
  Matrix vectors;
  eig_descending(g, values, vectors);
  const Vector scaled = (s * values.array()).exp();
  return symmetrized(vectors * scaled.asDiagonal() * vectors.transpose());
}

ProjectorLimitCheck check_projector_limit(const SignedSplit& split, double alpha) {
  if (alpha < 0) throw InvalidParam("alpha must be nonnegative");
  const auto& lam = split.eigenvalues;

  // Recover the per-eigenvalue class from the stored ranks: eigenvalues are
  // descending, so the first rank_positive are positive, the last
  // rank_negative are negative.
  const Eigen::Index n = lam.size();
  auto is_pos = [&](Eigen::Index k) { return k < split.rank_positive; };
  auto is_neg = [&](Eigen::Index k) { return k >= n - split.rank_negative; };

  const Matrix exp_g =
      spectral_map(split, [&](Eigen::Index k) { return std::exp(alpha * lam(k)); });
  const Matrix grow_plus = spectral_map(split, [&](Eigen::Index k) {
    return is_pos(k) ? std::exp(alpha * lam(k)) : 1.0;  // e^{a G_+}
  });
  const Matrix decay_minus = spectral_map(split, [&](Eigen::Index k) {
    return is_neg(k) ? std::exp(alpha * lam(k)) : 1.0;  // e^{-a G_-}
  });
  const Matrix decay_plus = spectral_map(split, [&](Eigen::Index k) {
    return is_pos(k) ? std::exp(-alpha * lam(k)) : 1.0;  // e^{-a G_+}
  });

  ProjectorLimitCheck out;
  out.factorization_residual = spectral_norm(exp_g - decay_minus * grow_plus) /
                               std::max(1.0, spectral_norm(exp_g));
  out.limit_residual_plus = spectral_norm(decay_plus - split.projector_negative);
  out.limit_residual_minus = spectral_norm(decay_minus - split.projector_positive);
  return out;
}

}  // namespace clusterforge

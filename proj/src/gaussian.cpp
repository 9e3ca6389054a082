#include "clusterforge/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "clusterforge/errors.hpp"
#include "clusterforge/spectral.hpp"

namespace clusterforge {

Matrix symplectic_form(int modes) {
  Matrix j = Matrix::Zero(2 * modes, 2 * modes);
  j.topRightCorner(modes, modes) = Matrix::Identity(modes, modes);
  j.bottomLeftCorner(modes, modes) = -Matrix::Identity(modes, modes);
  return j;
}

double symplecticity_residual(const Matrix& s) {
  const int modes = static_cast<int>(s.rows()) / 2;
  const Matrix j = symplectic_form(modes);
  return spectral_norm(s * j * s.transpose() - j);
}

SymplecticTransform heisenberg_transform(const TmsGraph& g, double alpha) {
  if (alpha < 0) throw InvalidParam("alpha must be nonnegative");
  const int n = g.size();
  const Matrix expand = matrix_exp_sym(g.matrix(), alpha);
  const Matrix contract = matrix_exp_sym(g.matrix(), -alpha);
  SymplecticTransform t;
  t.modes = n;
  t.alpha = alpha;
  t.s = Matrix::Zero(2 * n, 2 * n);
  t.s.topLeftCorner(n, n) = expand;
  t.s.bottomRightCorner(n, n) = contract;
  return t;
}

SymplecticTransform phase_shift_matrix(const BipartitePartition& p) {
  const int n = p.size();
  SymplecticTransform t;
  t.modes = n;
  t.s = Matrix::Zero(2 * n, 2 * n);
  for (int i : p.plus_set) {
    t.s(i, i) = 1.0;
    t.s(n + i, n + i) = 1.0;
  }
  for (int j : p.minus_set) {
    t.s(j, n + j) = -1.0;  // q_j <- -p_j
    t.s(n + j, j) = 1.0;   // p_j <-  q_j
  }
  return t;
}

Matrix output_covariance(const SymplecticTransform& s) {
  return symmetrized(s.s * s.s.transpose());
}

std::vector<double> symplectic_eigenvalues(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0)
    throw DimensionMismatch("covariance matrix must be 2n x 2n");
  const int modes = static_cast<int>(sigma.rows()) / 2;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(sigma));
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition did not converge");
  if (solver.eigenvalues()(0) <= 0)
    throw InvalidParam("covariance matrix must be positive definite");
  const Matrix root = solver.operatorSqrt();

  // sqrt(Sigma) J sqrt(Sigma) is skew with eigenvalues +-i nu; its singular
  // values carry each nu twice.
  const Matrix core = root * symplectic_form(modes) * root;
  Vector sv = core.jacobiSvd().singularValues();
  std::vector<double> nu(modes);
  for (int k = 0; k < modes; ++k) nu[k] = 0.5 * (sv(2 * k) + sv(2 * k + 1));
  return nu;
}

namespace {

// [-A, I] as an n x 2n block row.
Matrix nullifier_rows(const ClusterGraph& a) {
  const int n = a.size();
  Matrix rows(n, 2 * n);
  rows.leftCols(n) = -a.adjacency();
  rows.rightCols(n) = Matrix::Identity(n, n);
  return rows;
}

void check_consistency(const ClusterGraph& a, const BipartitePartition& p,
                       const TmsGraph& g) {
  const int n = a.size();
  if (g.size() != n) throw DimensionMismatch("cluster graph and TMS graph sizes differ");
  if (p.size() != n) throw DimensionMismatch("partition covers a different node count");
  std::vector<int> side(n, -1);
  for (int i : p.plus_set) side[i] = 0;
  for (int i : p.minus_set) side[i] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a.has_edge(i, j) && side[i] == side[j])
        throw PartitionMismatch("cluster edge does not cross the partition");
}

}  // namespace

NullifierReport nullifier_report(const ClusterGraph& a, const BipartitePartition& p,
                                 const TmsGraph& g, double alpha) {
  check_consistency(a, p, g);
  const SymplecticTransform shift = phase_shift_matrix(p);
  const SymplecticTransform evolve = heisenberg_transform(g, alpha);
  const Matrix k = nullifier_rows(a) * shift.s * evolve.s;

  NullifierReport report;
  report.alpha = alpha;
  report.covariance = symmetrized(k * k.transpose());
  report.variances.resize(a.size());
  for (int i = 0; i < a.size(); ++i) report.variances[i] = report.covariance(i, i);
  report.max_variance =
      *std::max_element(report.variances.begin(), report.variances.end());
  return report;
}

AlphaSweep sweep_alpha(const ClusterGraph& a, const BipartitePartition& p,
                       const TmsGraph& g, const std::vector<double>& alphas) {
  if (alphas.empty()) throw InvalidParam("alpha list must be nonempty");
  for (size_t k = 0; k < alphas.size(); ++k) {
    if (alphas[k] < 0) throw InvalidParam("alpha values must be nonnegative");
    if (k > 0 && alphas[k] < alphas[k - 1])
      throw InvalidParam("alpha values must be ascending");
  }

  AlphaSweep sweep;
  sweep.reports.reserve(alphas.size());
  for (double alpha : alphas) sweep.reports.push_back(nullifier_report(a, p, g, alpha));

  // Log-linear fit of max variance, skipping values at the numerical floor.
  constexpr double kFloor = 1e-14;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : sweep.reports) {
    if (r.max_variance <= kFloor) continue;
    const double x = r.alpha, y = std::log(r.max_variance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  if (m >= 2 && denom > 0) sweep.decay_rate = (m * sxy - sx * sy) / denom;
  return sweep;
}

}  // namespace clusterforge

#include "clusterforge/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "clusterforge/errors.hpp"
#include "clusterforge/spectral.hpp"
#include "clusterforge/synthesis.hpp"

namespace clusterforge {

namespace {

constexpr double kMaxPivotCondition = 1e12;
constexpr int kExhaustiveLimit = 12;

double condition_number(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  const Vector sv = m.jacobiSvd().singularValues();
  const double smallest = sv(sv.size() - 1);
  return smallest > 0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
}

// Greedy volume-maximizing choice of `count` rows of `basis` (orthonormal
// columns): repeatedly pick the row with the largest residual after
// projecting out the span of the rows already chosen; ties go to the lowest
// index. Returns ascending indices.
std::vector<int> greedy_pivot_rows(const Matrix& basis, int count) {
  const int n = static_cast<int>(basis.rows());
  std::vector<int> chosen;
  std::vector<bool> used(n, false);
  Matrix residual = basis;
  for (int step = 0; step < count; ++step) {
    int best = -1;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double norm = residual.row(i).norm();
      if (norm > best_norm + 1e-12 * std::max(best_norm, 0.0)) {
        best_norm = norm;
        best = i;
      }
    }
    used[best] = true;
    chosen.push_back(best);
    if (best_norm > 0) {
      const Eigen::RowVectorXd direction = residual.row(best) / best_norm;
      residual -= (residual * direction.transpose()) * direction;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// All size-count subsets of 0..n-1, maximizing |det| of the selected rows.
std::vector<int> exhaustive_pivot_rows(const Matrix& basis, int count) {
  const int n = static_cast<int>(basis.rows());
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + count, true);
  std::vector<int> best;
  double best_volume = -1.0;
  do {
    std::vector<int> rows;
    for (int i = 0; i < n; ++i)
      if (mask[i]) rows.push_back(i);
    Matrix block(count, count);
    for (int k = 0; k < count; ++k) block.row(k) = basis.row(rows[k]);
    const double volume = std::abs(block.determinant());
    if (volume > best_volume) {
      best_volume = volume;
      best = rows;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

Matrix select_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (size_t k = 0; k < rows.size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
  return out;
}

struct ReducedBasis {
  Matrix cross_block;   // from the positive subspace's reduction
  Matrix cross_check;   // same block from the negative subspace
  Matrix top_block;     // pivot block of the positive basis
  Matrix bottom_block;  // pivot block of the negative basis
};

ReducedBasis reduce(const Matrix& v_pos, const Matrix& v_neg,
                    const std::vector<int>& plus_rows,
                    const std::vector<int>& minus_rows) {
  const auto l = static_cast<Eigen::Index>(plus_rows.size());
  const auto m = static_cast<Eigen::Index>(minus_rows.size());
  ReducedBasis r;
  r.top_block = select_rows(v_pos, plus_rows);
  r.bottom_block = select_rows(v_neg, minus_rows);

  // V+ M+ = [I; X^T] with M+ = top^-1, so X solves top^T X = rest-of-V+^T.
  const Matrix plus_rest = select_rows(v_pos, minus_rows);
  r.cross_block = l > 0 ? Matrix(r.top_block.transpose().fullPivLu().solve(
                              plus_rest.transpose()))
                        : Matrix(l, m);

  // V- M- = [-X; I] with M- = bottom^-1.
  const Matrix minus_rest = select_rows(v_neg, plus_rows);
  r.cross_check = m > 0 ? Matrix(-r.bottom_block.transpose()
                                      .fullPivLu()
                                      .solve(minus_rest.transpose())
                                      .transpose())
                        : Matrix(l, m);
  return r;
}

}  // namespace

ExtractionResult extract_cluster(const TmsGraph& g, double tol) {
  const int n = g.size();
  const SignedSplit split = split_signed(g, tol);
  if (split.rank_deficient)
    throw RankDeficient("coupling matrix is not full-rank within tolerance");

  const int l = split.rank_positive;
  const Matrix v_pos = split.eigenvectors.leftCols(l);
  const Matrix v_neg = split.eigenvectors.rightCols(n - l);

  auto complement = [n](const std::vector<int>& rows) {
    std::vector<bool> in(n, false);
    for (int i : rows) in[i] = true;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
      if (!in[i]) rest.push_back(i);
    return rest;
  };

  std::vector<int> plus_rows = greedy_pivot_rows(v_pos, l);
  std::vector<int> minus_rows = complement(plus_rows);
  ReducedBasis reduced = reduce(v_pos, v_neg, plus_rows, minus_rows);

  const bool ill_conditioned =
      condition_number(reduced.top_block) > kMaxPivotCondition ||
      condition_number(reduced.bottom_block) > kMaxPivotCondition;
  if (ill_conditioned && n <= kExhaustiveLimit && l > 0 && l < n) {
    plus_rows = exhaustive_pivot_rows(v_pos, l);
    minus_rows = complement(plus_rows);
    reduced = reduce(v_pos, v_neg, plus_rows, minus_rows);
  }
  if (condition_number(reduced.top_block) > kMaxPivotCondition ||
      condition_number(reduced.bottom_block) > kMaxPivotCondition) {
    throw PivotFailure(
        "no row selection yields invertible subspace blocks; condition numbers " +
        std::to_string(condition_number(reduced.top_block)) + " (plus), " +
        std::to_string(condition_number(reduced.bottom_block)) + " (minus)");
  }

  // Both subspace reductions expose the same cross block (the subspaces are
  // orthogonal complements); a real discrepancy means the input violated the
  // symmetry or rank hypotheses.
  const double discrepancy = max_abs(reduced.cross_block - reduced.cross_check);
  if (discrepancy > 1e-8 * (1.0 + max_abs(reduced.cross_block)))
    throw Error("subspace reductions disagree on the cross block by " +
                std::to_string(discrepancy));

  ExtractionResult result;
  result.plus_count = l;
  result.cross_block = reduced.cross_block;
  result.perm.resize(n);
  for (size_t k = 0; k < plus_rows.size(); ++k)
    result.perm[plus_rows[k]] = static_cast<int>(k);
  for (size_t k = 0; k < minus_rows.size(); ++k)
    result.perm[minus_rows[k]] = l + static_cast<int>(k);

  // B = M+^-1 nu+ M+^-T with M+ = top^-1; likewise C from the negative side.
  const Vector lam = split.eigenvalues;
  result.plus_factor = symmetrized(reduced.top_block * lam.head(l).asDiagonal() *
                                   reduced.top_block.transpose());
  result.minus_factor =
      symmetrized(-(reduced.bottom_block * lam.tail(n - l).asDiagonal() *
                    reduced.bottom_block.transpose()));
  return result;
}

double resynthesis_residual(const TmsGraph& g, const ExtractionResult& result) {
  const int n = g.size();
  if (static_cast<int>(result.perm.size()) != n)
    throw DimensionMismatch("extraction result does not match the graph size");

  SynthesisFreedom freedom{result.plus_factor, result.minus_factor};
  const Matrix resynthesized =
      synthesize_tms(result.cross_block, freedom).matrix();

  Matrix permuted(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      permuted(result.perm[i], result.perm[j]) = g.matrix()(i, j);

  const double scale = spectral_norm(g.matrix());
  return spectral_norm(resynthesized - permuted) / std::max(scale, 1e-300);
}

}  // namespace clusterforge

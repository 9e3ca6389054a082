#pragma once

// Seeded random instances shared by the property tests and the acceptance
// suite.

#include <algorithm>
#include <random>

#include "clusterforge/graph.hpp"
#include "clusterforge/numeric.hpp"

namespace testgen {

using clusterforge::Matrix;
using clusterforge::Vector;

inline Matrix random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

inline Matrix random_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  return Eigen::HouseholderQR<Matrix>(m).householderQ();
}

/// Symmetric matrix with the given eigenvalues in a random orthogonal basis.
inline Matrix with_spectrum(std::mt19937_64& rng, const Vector& eigenvalues) {
  const int n = static_cast<int>(eigenvalues.size());
  const Matrix q = random_orthogonal(rng, n);
  return clusterforge::symmetrized(q * eigenvalues.asDiagonal() * q.transpose());
}

/// Full-rank symmetric matrix with eigenvalue magnitudes in [low, high] and
/// random signs; at least one of each sign when mixed_signs is set and n > 1.
inline Matrix random_full_rank_symmetric(std::mt19937_64& rng, int n, double low,
                                         double high, bool mixed_signs = false) {
  std::uniform_real_distribution<double> mag(low, high);
  std::bernoulli_distribution coin(0.5);
  Vector ev(n);
  for (;;) {
    bool pos = false, neg = false;
    for (int i = 0; i < n; ++i) {
      ev(i) = (coin(rng) ? 1.0 : -1.0) * mag(rng);
      (ev(i) > 0 ? pos : neg) = true;
    }
    if (!mixed_signs || n == 1 || (pos && neg)) break;
  }
  return with_spectrum(rng, ev);
}

/// SPD matrix with eigenvalues in [low, high].
inline Matrix random_spd(std::mt19937_64& rng, int n, double low, double high) {
  std::uniform_real_distribution<double> mag(low, high);
  Vector ev(n);
  for (int i = 0; i < n; ++i) ev(i) = mag(rng);
  return with_spectrum(rng, ev);
}

/// Cross block of a random bipartite graph: L x M, each entry present with
/// probability density, weights uniform over +-[w_low, w_high].
inline Matrix random_cross_block(std::mt19937_64& rng, int plus, int minus,
                                 double density, double w_low, double w_high) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> mag(w_low, w_high);
  std::bernoulli_distribution coin(0.5);
  Matrix block = Matrix::Zero(plus, minus);
  for (int i = 0; i < plus; ++i)
    for (int j = 0; j < minus; ++j)
      if (u01(rng) < density) block(i, j) = (coin(rng) ? 1.0 : -1.0) * mag(rng);
  return block;
}

/// Random bipartite cluster graph in scrambled (non-canonical) node order.
inline clusterforge::ClusterGraph random_bipartite_graph(std::mt19937_64& rng, int n,
                                                         double density, double w_low,
                                                         double w_high) {
  std::uniform_int_distribution<int> split(1, n - 1);
  const int plus = n >= 2 ? split(rng) : n;
  Matrix block = random_cross_block(rng, plus, n - plus, density, w_low, w_high);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Matrix canonical = Matrix::Zero(n, n);
  canonical.topRightCorner(plus, n - plus) = block;
  canonical.bottomLeftCorner(n - plus, plus) = block.transpose();
  Matrix scrambled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scrambled(order[i], order[j]) = canonical(i, j);
  return clusterforge::ClusterGraph(std::move(scrambled));
}

}  // namespace testgen

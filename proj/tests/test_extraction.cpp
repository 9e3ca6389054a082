#include <doctest.h>

#include <cmath>
#include <random>

#include "clusterforge/extraction.hpp"
#include "clusterforge/gaussian.hpp"
#include "clusterforge/synthesis.hpp"
#include "support/random_inputs.hpp"

using namespace clusterforge;

namespace {

// Canonical-basis view of the original coupling under the extraction's
// relabeling.
Matrix permuted_coupling(const TmsGraph& g, const ExtractionResult& r) {
  const int n = g.size();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(r.perm[i], r.perm[j]) = g.matrix()(i, j);
  return out;
}

bool is_spd(const Matrix& m) {
  if (m.size() == 0) return true;
  if (!is_symmetric(m, 1e-10)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
  return es.eigenvalues()(0) > 0;
}

}  // namespace

TEST_CASE("the complete graph on four modes extracts to the unit star") {
  const TmsGraph k4(generate_complete(4).adjacency());
  const ExtractionResult r = extract_cluster(k4);
  CHECK(r.plus_count == 1);
  CHECK(r.perm == std::vector<int>{0, 1, 2, 3});
  REQUIRE(r.cross_block.rows() == 1);
  for (int j = 0; j < 3; ++j)
    CHECK(r.cross_block(0, j) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.plus_factor(0, 0) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(is_spd(r.minus_factor));
  CHECK(resynthesis_residual(k4, r) <= 1e-8);
}

TEST_CASE("diag(1, -1) extracts to two uncoupled squeezed modes") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  const ExtractionResult r = extract_cluster(TmsGraph(d));
  CHECK(r.plus_count == 1);
  CHECK(std::abs(r.cross_block(0, 0)) <= 1e-14);
  CHECK(r.plus_factor(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.minus_factor(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the square coupling extracts back to its own cross block") {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix block(2, 2);
  block << -s, s, s, s;
  const TmsGraph g(ClusterGraph::from_cross_block(block).adjacency());
  const ExtractionResult r = extract_cluster(g);
  CHECK(r.plus_count == 2);
  CHECK(resynthesis_residual(g, r) <= 1e-8);
  // the reduced form of a graph already in block shape is unique
  CHECK(max_abs(r.cross_block - block) <= 1e-8);
}

TEST_CASE("rank-deficient couplings are rejected") {
  CHECK_THROWS_AS(extract_cluster(TmsGraph(Matrix(Matrix::Ones(4, 4)))), RankDeficient);
  Matrix nearly = Matrix::Identity(3, 3);
  nearly(2, 2) = 1e-13;
  CHECK_THROWS_AS(extract_cluster(TmsGraph(nearly)), RankDeficient);
}

TEST_CASE("perturbing the extraction breaks the resynthesis") {
  const TmsGraph k4(generate_complete(4).adjacency());
  ExtractionResult r = extract_cluster(k4);
  r.cross_block(0, 0) += 0.1;
  CHECK(resynthesis_residual(k4, r) > 1e-3);

  r.perm = {0, 1};
  CHECK_THROWS_AS(resynthesis_residual(k4, r), DimensionMismatch);
}

TEST_CASE("one-signed spectra extract to edgeless clusters") {
  std::mt19937_64 rng(61);
  const Matrix spd = testgen::random_spd(rng, 4, 0.5, 2.0);

  const ExtractionResult all_plus = extract_cluster(TmsGraph(spd));
  CHECK(all_plus.plus_count == 4);
  CHECK(all_plus.cross_block.cols() == 0);
  CHECK(is_spd(all_plus.plus_factor));
  CHECK(resynthesis_residual(TmsGraph(spd), all_plus) <= 1e-8);

  const ExtractionResult all_minus = extract_cluster(TmsGraph(Matrix(-spd)));
  CHECK(all_minus.plus_count == 0);
  CHECK(all_minus.cross_block.rows() == 0);
  CHECK(is_spd(all_minus.minus_factor));
  CHECK(resynthesis_residual(TmsGraph(Matrix(-spd)), all_minus) <= 1e-8);

  // and the negative-definite case still generates its (edgeless) cluster
  const ClusterGraph a = ClusterGraph::from_cross_block(all_minus.cross_block);
  const BipartitePartition p = partition_for_block(all_minus.cross_block);
  const TmsGraph canonical(permuted_coupling(TmsGraph(Matrix(-spd)), all_minus));
  CHECK(nullifier_report(a, p, canonical, 12.0).max_variance < 1e-6);
}

TEST_CASE("cluster-to-coupling round trip") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::uniform_int_distribution<int> lu(1, n - 1);
    const int l = lu(rng);
    Matrix block = testgen::random_cross_block(rng, l, n - l, 0.5, 0.2, 1.5);
    const double norm = spectral_norm(block);
    if (norm > 0.8) block *= 0.8 / norm;

    const TmsGraph g = synthesize_tms(block, SynthesisFreedom::identity(l, n - l));
    const ExtractionResult r = extract_cluster(g);

    CHECK(r.plus_count == l);  // rank of the positive factor is preserved
    CHECK(resynthesis_residual(g, r) <= 1e-8);
    CHECK(is_spd(r.plus_factor));
    CHECK(is_spd(r.minus_factor));

    // end to end: the extracted cluster is generated by the original
    // Hamiltonian once the modes are relabeled
    const ClusterGraph a = ClusterGraph::from_cross_block(r.cross_block);
    const BipartitePartition p = partition_for_block(r.cross_block);
    const TmsGraph canonical(permuted_coupling(g, r));
    CHECK(nullifier_report(a, p, canonical, 12.0).max_variance < 1e-6);
  }
}

TEST_CASE("coupling-to-cluster round trip for generic spectra") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const TmsGraph g(testgen::random_full_rank_symmetric(rng, n, 0.1, 10.0));
    const ExtractionResult r = extract_cluster(g);

    CHECK(resynthesis_residual(g, r) <= 1e-8);
    CHECK(is_symmetric(r.plus_factor, 1e-10));
    CHECK(is_symmetric(r.minus_factor, 1e-10));
    CHECK(is_spd(r.plus_factor));
    CHECK(is_spd(r.minus_factor));

    // perm is a permutation with plus rows ascending first
    std::vector<int> seen(n, 0);
    for (int v : r.perm) {
      REQUIRE(v >= 0);
      REQUIRE(v < n);
      ++seen[v];
    }
    for (int count : seen) CHECK(count == 1);
    int last_plus = -1, last_minus = -1;
    for (int i = 0; i < n; ++i) {
      if (r.perm[i] < r.plus_count) {
        CHECK(r.perm[i] > last_plus);
        last_plus = r.perm[i];
      } else {
        CHECK(r.perm[i] > last_minus);
        last_minus = r.perm[i];
      }
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "clusterforge/graph.hpp"
#include "support/oracles.hpp"
#include "support/random_inputs.hpp"

using namespace clusterforge;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// The four-mode square cluster: edges 1-3, 1-4, 2-3, 2-4 with weights
// -1/sqrt2, +1/sqrt2, +1/sqrt2, +1/sqrt2.
ClusterGraph square_cluster() {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 2) = a(2, 0) = -kInvSqrt2;
  a(0, 3) = a(3, 0) = kInvSqrt2;
  a(1, 2) = a(2, 1) = kInvSqrt2;
  a(1, 3) = a(3, 1) = kInvSqrt2;
  return ClusterGraph(std::move(a));
}

oracle::PlainMatrix to_plain(const Matrix& m) {
  oracle::PlainMatrix out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("cluster graph construction enforces the invariants") {
  CHECK_THROWS_AS(ClusterGraph(Matrix::Zero(2, 3)), InvalidParam);
  CHECK_THROWS_AS(ClusterGraph(Matrix(0, 0)), InvalidParam);

  Matrix loop = Matrix::Zero(2, 2);
  loop(0, 0) = 1.0;
  CHECK_THROWS_AS(ClusterGraph{loop}, InvalidParam);

  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(ClusterGraph{asym}, InvalidParam);

  Matrix inf = Matrix::Zero(2, 2);
  inf(0, 1) = inf(1, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ClusterGraph{inf}, InvalidParam);

  CHECK(ClusterGraph(Matrix::Zero(1, 1)).size() == 1);
}

TEST_CASE("square cluster partitions into {1,2} | {3,4}") {
  const auto p = bipartite_partition(square_cluster());
  CHECK(p.plus_set == std::vector<int>{0, 1});
  CHECK(p.minus_set == std::vector<int>{2, 3});
  CHECK(p.cross_block.rows() == 2);
  CHECK(p.cross_block(0, 0) == -kInvSqrt2);
  CHECK(p.cross_block(0, 1) == kInvSqrt2);
  CHECK(p.cross_block(1, 0) == kInvSqrt2);
  CHECK(p.cross_block(1, 1) == kInvSqrt2);
}

TEST_CASE("path graph partitions into {1,3} | {2}") {
  const auto p = bipartite_partition(generate_chain(3));
  CHECK(p.plus_set == std::vector<int>{0, 2});
  CHECK(p.minus_set == std::vector<int>{1});
  CHECK(p.cross_block == Matrix::Ones(2, 1));
}

TEST_CASE("triangle is rejected with the cycle 1-2-3") {
  try {
    bipartite_partition(generate_complete(3));
    FAIL("expected NotBipartite");
  } catch (const NotBipartite& e) {
    CHECK(e.odd_cycle() == std::vector<int>{1, 2, 3});
  }
}

TEST_CASE("odd cycle certificates re-walk for 5-cycle and K5") {
  for (const ClusterGraph& g : {generate_cycle(5), generate_complete(5)}) {
    try {
      bipartite_partition(g);
      FAIL("expected NotBipartite");
    } catch (const NotBipartite& e) {
      CHECK(oracle::valid_odd_cycle(to_plain(g.adjacency()), e.odd_cycle()));
    }
  }
}

TEST_CASE("canonical permute of the square is the identity relabeling") {
  const ClusterGraph g = square_cluster();
  const auto p = bipartite_partition(g);
  const auto [relabeled, block] = canonical_permute(g, p);
  CHECK(p.perm == std::vector<int>{0, 1, 2, 3});
  CHECK(relabeled == g);
  CHECK(block == p.cross_block);
}

TEST_CASE("canonical permute of a single node yields a 1x0 block") {
  const ClusterGraph g(Matrix::Zero(1, 1));
  const auto p = bipartite_partition(g);
  const auto [relabeled, block] = canonical_permute(g, p);
  CHECK(relabeled.size() == 1);
  CHECK(block.rows() == 1);
  CHECK(block.cols() == 0);
}

// The tie-break rule sends the lowest node of the component to the plus set,
// so a star centered on node 3 keeps nodes {1,2,4} on the plus side and the
// hub alone on the minus side.
TEST_CASE("canonical permute of a star centered on node 3") {
  Matrix a = Matrix::Zero(4, 4);
  for (int leaf : {0, 1, 3}) a(2, leaf) = a(leaf, 2) = 1.0;
  const ClusterGraph g(std::move(a));

  const auto p = bipartite_partition(g);
  CHECK(p.plus_set == std::vector<int>{0, 1, 3});
  CHECK(p.minus_set == std::vector<int>{2});
  CHECK(p.perm == std::vector<int>{0, 1, 3, 2});

  const auto [relabeled, block] = canonical_permute(g, p);
  CHECK(block == Matrix::Ones(3, 1));
  Matrix expected = Matrix::Zero(4, 4);
  expected.topRightCorner(3, 1) = Matrix::Ones(3, 1);
  expected.bottomLeftCorner(1, 3) = Matrix::Ones(1, 3);
  CHECK(relabeled.adjacency() == expected);
}

TEST_CASE("canonical permute rejects a partition for a different graph") {
  const auto p = bipartite_partition(square_cluster());
  CHECK_THROWS_AS(canonical_permute(generate_chain(4), p), PartitionMismatch);
  CHECK_THROWS_AS(canonical_permute(generate_chain(3), p), PartitionMismatch);
}

TEST_CASE("generators produce the documented graphs") {
  const ClusterGraph k4 = generate_complete(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(k4.weight(i, j) == (i == j ? 0.0 : 1.0));

  const ClusterGraph star = generate_star(4);
  for (int leaf = 1; leaf < 4; ++leaf) {
    CHECK(star.weight(0, leaf) == 1.0);
    for (int other = 1; other < 4; ++other)
      CHECK(star.weight(leaf, other) == 0.0);
  }

  // A 2x2 lattice is a 4-cycle.
  const ClusterGraph lattice = generate_square_lattice(2, 2);
  int edges = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) edges += lattice.has_edge(i, j) ? 1 : 0;
  CHECK(edges == 4);
  CHECK_FALSE(lattice.has_edge(0, 3));
  CHECK_FALSE(lattice.has_edge(1, 2));

  CHECK(generate_chain(1).size() == 1);
  CHECK_THROWS_AS(generate_chain(0), InvalidParam);
  CHECK_THROWS_AS(generate_star(-2), InvalidParam);
  CHECK_THROWS_AS(generate_cycle(2), InvalidParam);
  CHECK_THROWS_AS(generate_square_lattice(0, 3), InvalidParam);
  CHECK_THROWS_AS(generate_chain(3, 0.0), InvalidParam);
}

TEST_CASE("generator bipartiteness matches the theory") {
  for (int n = 3; n <= 9; ++n) {
    CHECK_NOTHROW(bipartite_partition(generate_chain(n)));
    CHECK_NOTHROW(bipartite_partition(generate_star(n)));
    if (n % 2 == 0) {
      CHECK_NOTHROW(bipartite_partition(generate_cycle(n)));
    } else {
      CHECK_THROWS_AS(bipartite_partition(generate_cycle(n)), NotBipartite);
    }
    if (n > 2) CHECK_THROWS_AS(bipartite_partition(generate_complete(n)), NotBipartite);
  }
  CHECK_NOTHROW(bipartite_partition(generate_complete(2)));
  CHECK_NOTHROW(bipartite_partition(generate_square_lattice(3, 4)));
}

TEST_CASE("verdicts agree with exhaustive two-coloring for n <= 8") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (u01(rng) < 0.4) a(i, j) = a(j, i) = u01(rng) * 2 - 1;
    const ClusterGraph g(a);
    const bool expected = oracle::two_colorable_brute_force(to_plain(a));
    try {
      bipartite_partition(g);
      CHECK(expected);
    } catch (const NotBipartite& e) {
      CHECK_FALSE(expected);
      CHECK(oracle::valid_odd_cycle(to_plain(a), e.odd_cycle()));
    }
  }
}

TEST_CASE("partition blocks are exactly zero within each color class") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const ClusterGraph g = testgen::random_bipartite_graph(rng, n, 0.5, 0.1, 2.0);
    const auto p = bipartite_partition(g);
    const auto [relabeled, block] = canonical_permute(g, p);
    const int l = p.plus_count();
    CHECK(max_abs(relabeled.adjacency().topLeftCorner(l, l)) == 0.0);
    CHECK(max_abs(relabeled.adjacency().bottomRightCorner(n - l, n - l)) == 0.0);
    CHECK(relabeled.adjacency().topRightCorner(l, n - l) == block);

    // Deterministic: a second run reproduces the partition.
    const auto q = bipartite_partition(g);
    CHECK(q.plus_set == p.plus_set);
    CHECK(q.perm == p.perm);
  }
}

TEST_CASE("disconnected graphs are colored per component, lowest node plus") {
  // Two components: an edge {1,2} and a path 3-4-5.
  Matrix a = Matrix::Zero(5, 5);
  a(0, 1) = a(1, 0) = 1.0;
  a(2, 3) = a(3, 2) = 1.0;
  a(3, 4) = a(4, 3) = 1.0;
  const auto p = bipartite_partition(ClusterGraph(std::move(a)));
  CHECK(p.plus_set == std::vector<int>{0, 2, 4});
  CHECK(p.minus_set == std::vector<int>{1, 3});
}

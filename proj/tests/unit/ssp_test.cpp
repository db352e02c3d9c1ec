#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "iepg/errors.hpp"
#include "iepg/realize.hpp"
#include "iepg/ssp.hpp"
#include "oracles.hpp"

namespace iepg {
namespace {

// Dimension of {X symmetric, zero on the diagonal and on edges of g : AX = XA},
// computed from the Kronecker form of the commutator over full vec(X).
int commutator_nullity(const Matrix& a, const Graph& g) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i + 1, j + 1)) free.emplace_back(i, j);
  if (free.empty()) return 0;
  const Matrix id = Matrix::Identity(n, n);
  Matrix kron(n * n, n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      kron.block(r * n, c * n, n, n) = a(c, r) * id - (r == c ? a : Matrix::Zero(n, n));
  // Columns of vec(X) for each free symmetric pair.
  Matrix basis = Matrix::Zero(n * n, static_cast<int>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const auto [i, j] = free[k];
    basis(j * n + i, k) = 1.0;
    basis(i * n + j, k) = 1.0;
  }
  Eigen::FullPivLU<Matrix> lu(kron * basis);
  lu.setThreshold(1e-9);
  return static_cast<int>(free.size()) - static_cast<int>(lu.rank());
}

Matrix random_in_pattern(std::mt19937_64& rng, const Graph& g) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> gauss;
  const int n = g.order();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = gauss(rng);
  for (const Edge& e : g.edges()) {
    const double v = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    m(e.u - 1, e.v - 1) = m(e.v - 1, e.u - 1) = v;
  }
  return m;
}

void expect_valid_witness(const SymMatrix& a, const SspReport& r) {
  ASSERT_TRUE(r.witness.has_value());
  const Matrix& x = r.witness->dense();
  EXPECT_GT(x.norm(), 0.5);
  EXPECT_LT((a.dense() * x - x * a.dense()).norm(), 1e-8);
  EXPECT_LT((x - x.transpose()).norm(), 1e-14);
  for (int i = 0; i < a.dim(); ++i) EXPECT_EQ(x(i, i), 0.0);
}

TEST(Ssp, DistinctDiagonalHolds) {
  const std::vector<double> d{1.0, 2.0};
  const SspReport r = ssp_check(SymMatrix::diagonal(d));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.nullity, 0);
  EXPECT_EQ(r.free_entries, 1);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Ssp, IdentityFailsWithWitness) {
  const std::vector<double> d{1.0, 1.0};
  const SymMatrix a = SymMatrix::diagonal(d);
  const SspReport r = ssp_check(a);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.nullity, 1);
  expect_valid_witness(a, r);
  EXPECT_NEAR(std::abs(r.witness->dense()(0, 1)), 1.0, 1e-12);
}

TEST(Ssp, CompletePatternHasNoFreeEntries) {
  std::mt19937_64 rng(30);
  const Graph k4 = complete_graph(4);
  const SymMatrix a(random_in_pattern(rng, k4));
  const SspReport r = ssp_check(a, k4);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.free_entries, 0);
}

TEST(Ssp, JacobiMatricesHold) {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 8; ++n) {
    const SymMatrix a = jacobi_from_spectrum(oracle::distinct_spectrum(rng, n));
    EXPECT_TRUE(ssp_check(a).holds);
    EXPECT_TRUE(ssp_check(a, path_graph(n)).holds);
  }
}

TEST(Ssp, DimensionMismatchIsInputError) {
  EXPECT_THROW(ssp_check(SymMatrix::zeros(3), path_graph(2)), InputError);
}

TEST(SspProperty, AgreesWithKroneckerOracle) {
  std::mt19937_64 rng(32);
  int holding = 0, failing = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Graph g(n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (coin(rng)) g.add_edge(i, j);
    Matrix m = random_in_pattern(rng, g);
    if (trial % 3 == 0) {
      // duplicated blocks share their spectrum and always fail
      const Matrix half = random_in_pattern(rng, g);
      m = Matrix::Zero(2 * n, 2 * n);
      m.topLeftCorner(n, n) = half;
      m.bottomRightCorner(n, n) = half;
      g = disjoint_union(g, g);
    }
    const SymMatrix a(m);
    const SspReport r = ssp_check(a, g);
    const int nullity = commutator_nullity(m, g);
    EXPECT_EQ(r.holds, nullity == 0) << "trial " << trial;
    EXPECT_EQ(r.nullity, nullity) << "trial " << trial;
    if (r.holds) {
      ++holding;
    } else {
      ++failing;
      expect_valid_witness(a, r);
    }
  }
  EXPECT_GT(holding, 10);
  EXPECT_GT(failing, 10);
}

TEST(SspProperty, ShiftAndScaleInvariant) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Graph g = oracle::connected_graph(rng, n, 0.4);
    const Matrix m = random_in_pattern(rng, g);
    const double c = shift(rng), s = scale(rng);
    const bool base = ssp_check(SymMatrix(m), g).holds;
    const Matrix moved = s * m + c * Matrix::Identity(n, n);
    EXPECT_EQ(ssp_check(SymMatrix(moved), g).holds, base);
  }
}

TEST(EdgeExtend, PathToCycleKeepsSpectrum) {
  std::mt19937_64 rng(34);
  for (int n = 3; n <= 8; ++n) {
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, n);
    const SymMatrix a = jacobi_from_spectrum(lambda);
    EdgeExtendOptions options;
    options.eps = 0.1;
    const EdgeExtendResult r = ssp_edge_extend(a, path_graph(n), cycle_graph(n), options);
    EXPECT_TRUE(in_pattern(r.matrix, cycle_graph(n)).ok);
    EXPECT_LT(oracle::max_sorted_diff(lambda, oracle::eigenvalues_of(r.matrix.dense())),
              1e-9 * spread(lambda));
    EXPECT_LE(r.distance, r.eps_used);
    EXPECT_GE(std::abs(r.matrix(0, n - 1)), r.eps_used / 4.0);
    EXPECT_GT(r.matrix(0, n - 1), 0.0);
  }
}

TEST(EdgeExtend, RandomSignsAreSeeded) {
  std::mt19937_64 rng(35);
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, 5);
    const SymMatrix a = jacobi_from_spectrum(lambda);
    EdgeExtendOptions options;
    options.random_signs = true;
    options.seed = seed;
    EdgeExtendResult r1, r2;
    bool ok1 = true, ok2 = true;
    try {
      r1 = ssp_edge_extend(a, path_graph(5), complete_graph(5), options);
    } catch (const NumericError&) {
      ok1 = false;
    }
    try {
      r2 = ssp_edge_extend(a, path_graph(5), complete_graph(5), options);
    } catch (const NumericError&) {
      ok2 = false;
    }
    ASSERT_EQ(ok1, ok2);
    if (!ok1) continue;
    ++successes;
    EXPECT_EQ(r1.matrix.dense(), r2.matrix.dense());
    EXPECT_TRUE(in_pattern(r1.matrix, complete_graph(5)).ok);
    EXPECT_LE(r1.distance, r1.eps_used);
  }
  EXPECT_GT(successes, 0);
}

TEST(EdgeExtend, PreconditionsAreInputErrors) {
  const std::vector<double> same{1.0, 1.0, 2.0};
  EXPECT_THROW(ssp_edge_extend(SymMatrix::diagonal(same), empty_graph(3), path_graph(3)),
               InputError);
  const SymMatrix a = jacobi_from_spectrum(std::vector<double>{0.0, 1.0, 2.0});
  EXPECT_THROW(ssp_edge_extend(a, cycle_graph(3), path_graph(3)), InputError);
  EdgeExtendOptions bad;
  bad.eps = 0.0;
  EXPECT_THROW(ssp_edge_extend(a, path_graph(3), cycle_graph(3), bad), InputError);
}

TEST(EdgeExtend, NoNewEdgesIsIdentity) {
  const SymMatrix a = jacobi_from_spectrum(std::vector<double>{0.0, 1.0, 2.0});
  const auto r = ssp_edge_extend(a, path_graph(3), path_graph(3));
  EXPECT_EQ(r.matrix.dense(), a.dense());
}

}  // namespace
}  // namespace iepg

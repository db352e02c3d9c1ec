#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "iepg/certificate.hpp"
#include "iepg/errors.hpp"
#include "iepg/realize.hpp"
#include "iepg/ssp.hpp"
#include "oracles.hpp"

namespace iepg {
namespace {

double residual_of(const SymMatrix& a, const std::vector<double>& target) {
  return oracle::max_sorted_diff(oracle::eigenvalues_of(a.dense()), target);
}

TEST(Jacobi, SmallExamples) {
  const SymMatrix one = jacobi_from_spectrum(std::vector<double>{4.5});
  EXPECT_EQ(one.dim(), 1);
  EXPECT_DOUBLE_EQ(one(0, 0), 4.5);

  const SymMatrix two = jacobi_from_spectrum(std::vector<double>{-1.0, 1.0});
  EXPECT_NEAR(two(0, 0), 0.0, 1e-14);
  EXPECT_NEAR(two(1, 1), 0.0, 1e-14);
  EXPECT_NEAR(two(0, 1), 1.0, 1e-14);

  const SymMatrix three = jacobi_from_spectrum(std::vector<double>{0.0, 1.0, 2.0});
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(three(i, i), 1.0, 1e-14);
  EXPECT_NEAR(three(0, 1), std::sqrt(2.0 / 3.0), 1e-14);
  EXPECT_NEAR(three(1, 2), std::sqrt(1.0 / 3.0), 1e-14);
  EXPECT_LT(residual_of(three, {0.0, 1.0, 2.0}), 1e-14);
}

TEST(Jacobi, RejectsRepeatedOrUnsorted) {
  EXPECT_THROW(jacobi_from_spectrum(std::vector<double>{1.0, 1.0}), InputError);
  EXPECT_THROW(jacobi_from_spectrum(std::vector<double>{2.0, 1.0}), InputError);
  EXPECT_THROW(jacobi_from_spectrum(std::vector<double>{}), InputError);
}

TEST(JacobiProperty, TridiagonalWithPositiveCoupling) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, n);
    const SymMatrix a = jacobi_from_spectrum(lambda);
    EXPECT_TRUE(in_pattern(a, path_graph(n)).ok);
    for (int i = 0; i + 1 < n; ++i) EXPECT_GT(a(i, i + 1), 0.0);
    EXPECT_LT(residual_of(a, lambda), 1e-10 * spread(lambda));
  }
}

TEST(Schedule, UniformPathThree) {
  const ExponentSchedule s = exponent_schedule(path_graph(3), ScheduleMode::uniform);
  EXPECT_EQ(s.g, (std::vector<long>{1, 1}));
  EXPECT_EQ(s.n0, 3);
  EXPECT_EQ(s.f, (std::vector<long>{4, 4}));
  EXPECT_EQ(s.s_of(1, 3), 8);
  EXPECT_EQ(s.s_of(3, 1), 8);
  EXPECT_EQ(s.s_of(2, 2), 0);
  EXPECT_EQ(s.diameter, 2);
}

TEST(Schedule, InjectivePathThree) {
  const ExponentSchedule s = exponent_schedule(path_graph(3), ScheduleMode::injective);
  EXPECT_EQ(s.g, (std::vector<long>{1, 2}));
  EXPECT_EQ(s.n0, 7);
  EXPECT_EQ(s.f, (std::vector<long>{8, 9}));
  EXPECT_EQ(s.s_of(1, 3), 17);
  EXPECT_EQ(s.f_of(2, 3), 9);
}

TEST(Schedule, InjectiveStarSeparatesPairs) {
  const std::vector<int> k{3};
  const ExponentSchedule s = exponent_schedule(make_family(Family::star, k), ScheduleMode::injective);
  std::set<long> seen;
  for (Vertex i = 1; i <= 4; ++i)
    for (Vertex j = i + 1; j <= 4; ++j) EXPECT_TRUE(seen.insert(s.s_of(i, j)).second);
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Schedule, RejectsNonTreesAndHugeInjective) {
  EXPECT_THROW(exponent_schedule(cycle_graph(4), ScheduleMode::uniform), InputError);
  EXPECT_THROW(exponent_schedule(path_graph(12), ScheduleMode::injective), InputError);
}

TEST(ScheduleProperty, InjectiveOnRandomTrees) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph t = spanning_tree(oracle::connected_graph(rng, n, 0.5));
    const ExponentSchedule s = exponent_schedule(t, ScheduleMode::injective);
    std::set<long> seen;
    for (Vertex i = 1; i <= n; ++i)
      for (Vertex j = i + 1; j <= n; ++j) {
        EXPECT_TRUE(seen.insert(s.s_of(i, j)).second);
        long sum = 0;
        const auto path = oracle::bfs_path(t, i, j);
        for (std::size_t k = 1; k < path.size(); ++k) sum += s.f_of(path[k - 1], path[k]);
        EXPECT_EQ(s.s_of(i, j), sum);
      }
    const long max_g = *std::max_element(s.g.begin(), s.g.end());
    EXPECT_GT(s.n0, max_g * s.diameter);
  }
}

TEST(Homotopy, TwoByTwoClosedForm) {
  ExponentSchedule s = exponent_schedule(path_graph(2), ScheduleMode::uniform);
  s.f = {1};
  s.s = {{0, 1}, {1, 0}};
  const HomotopySolution sol = tree_homotopy_solve(s, std::vector<double>{0.0, 2.0}, 0.1);
  EXPECT_DOUBLE_EQ(sol.matrix(0, 1), 0.1);
  EXPECT_NEAR(sol.matrix(0, 0), 1.0 - std::sqrt(0.99), 1e-12);
  EXPECT_NEAR(sol.matrix(1, 1), 1.0 + std::sqrt(0.99), 1e-12);
}

TEST(Homotopy, PathThreeSmallT) {
  const ExponentSchedule s = exponent_schedule(path_graph(3), ScheduleMode::uniform);
  const std::vector<double> lambda{0.0, 1.0, 3.0};
  const HomotopySolution sol = tree_homotopy_solve(s, lambda, 0.05);
  EXPECT_LE(sol.residual, 1e-10 * 3.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(sol.matrix(i, i), lambda[i], 0.01);
  EXPECT_DOUBLE_EQ(sol.matrix(0, 1), std::pow(0.05, 4));
  EXPECT_EQ(sol.matrix(0, 2), 0.0);
}

TEST(Homotopy, VanishingTGivesTarget) {
  const ExponentSchedule s = exponent_schedule(path_graph(4), ScheduleMode::uniform);
  const std::vector<double> lambda{-2.0, 0.5, 1.0, 4.0};
  const HomotopySolution sol = tree_homotopy_solve(s, lambda, 1e-4);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(sol.matrix(i, i), lambda[i], 1e-12);
}

TEST(Homotopy, RejectsBadT) {
  const ExponentSchedule s = exponent_schedule(path_graph(3), ScheduleMode::uniform);
  const std::vector<double> lambda{0.0, 1.0, 3.0};
  EXPECT_THROW(tree_homotopy_solve(s, lambda, 0.0), InputError);
  EXPECT_THROW(tree_homotopy_solve(s, lambda, 1.0), InputError);
}

TEST(HomotopyProperty, DiagonalJacobianMatchesFiniteDifference) {
  // ∂λ_k/∂d_i = u_k(i)² for simple eigenvalues
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Graph t = spanning_tree(oracle::connected_graph(rng, n, 0.5));
    const ExponentSchedule s = exponent_schedule(t, ScheduleMode::uniform);
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, n);
    const SymMatrix a = tree_homotopy_solve(s, lambda, 0.3).matrix;
    const Matrix fd = oracle::eigenvalue_fd_jacobian(a.dense());
    const Matrix u = eigen_decompose(a).vectors;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) EXPECT_NEAR(fd(k, i), u(i, k) * u(i, k), 1e-6);
  }
}

TEST(HomotopyProperty, PerturbationStaysWithinT) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph t = spanning_tree(oracle::connected_graph(rng, n, 0.5));
    const ExponentSchedule s = exponent_schedule(t, ScheduleMode::uniform);
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, n);
    const HomotopySolution sol = tree_homotopy_solve(s, lambda, 0.05);
    EXPECT_TRUE(in_pattern(sol.matrix, t, 1e-300).ok);
    EXPECT_LE(residual_of(sol.matrix, lambda), 1e-10 * spread(lambda));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(sol.matrix(i, i), lambda[i], 10 * 0.05);
  }
}

TEST(Decay, ConstantsFromPathProducts) {
  const ExponentSchedule s = exponent_schedule(path_graph(3), ScheduleMode::injective);
  const std::vector<double> lambda{0.0, 1.0, 3.0};
  const Matrix c = decay_constants(s, lambda);
  EXPECT_DOUBLE_EQ(c(0, 2), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(c(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(c(2, 1), -0.5);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(c(j, j), 1.0);
  for (Vertex i = 1; i <= 3; ++i)
    for (Vertex j = 1; j <= 3; ++j)
      if (i != j)
        EXPECT_DOUBLE_EQ(c(i - 1, j - 1), oracle::decay_constant(s.tree, lambda, i, j));
}

TEST(Decay, RatiosApproachConstants) {
  const ExponentSchedule s = exponent_schedule(path_graph(3), ScheduleMode::injective);
  const std::vector<double> lambda{0.0, 1.0, 3.0};
  const DecayTable table = decay_ratio_table(s, lambda);
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_LT(table.relative_error(2, 0, 2), 0.05);
  for (std::size_t k = 1; k < table.rows.size(); ++k)
    EXPECT_LT(table.rows[k].max_off_diagonal, table.rows[k - 1].max_off_diagonal);
  for (const DecayRow& row : table.rows)
    for (int j = 0; j < 3; ++j) EXPECT_GE(row.u(j, j), 0.0);
  const std::string csv = table.to_csv();
  EXPECT_EQ(csv.rfind("t,", 0), 0u);
}

TEST(Eigenvectors, TreeRecursionMatchesDense) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph t = spanning_tree(oracle::connected_graph(rng, n, 0.5));
    const ExponentSchedule s = exponent_schedule(t, ScheduleMode::uniform);
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, n);
    const SymMatrix a = tree_homotopy_solve(s, lambda, 0.2).matrix;
    const EigenDecomposition d = eigen_decompose(a);
    const Matrix u = tree_eigenvectors(a, t, d.values);
    Matrix dense = d.vectors;
    normalize_column_signs(dense);
    EXPECT_LT((u - dense).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Generic, PathTwoWithOneTestVector) {
  const std::vector<Vector> tests{Vector::Unit(2, 0)};
  const GenericRealization r = generic_realize(path_graph(2), std::vector<double>{0.0, 2.0}, tests);
  EXPECT_GT(r.u.cwiseAbs().minCoeff(), 0.0);
  EXPECT_TRUE(verify_certificate(r.certificate).ok);
}

TEST(Generic, TriangleAndPentagon) {
  {
    const std::vector<Vector> tests = standard_basis(3);
    const GenericRealization r = generic_realize(complete_graph(3), std::vector<double>{0, 1, 3}, tests);
    ASSERT_TRUE(r.certificate.nowhere_zero_margin.has_value());
    EXPECT_GT(*r.certificate.nowhere_zero_margin, 0.0);
    EXPECT_TRUE(r.certificate.ssp->holds);
    EXPECT_TRUE(verify_certificate(r.certificate).ok);
  }
  {
    std::vector<Vector> tests = standard_basis(5);
    tests.push_back(Vector::Ones(5));
    const GenericRealization r =
        generic_realize(cycle_graph(5), std::vector<double>{1, 2, 3, 4, 5}, tests);
    EXPECT_TRUE(in_pattern(r.matrix, cycle_graph(5)).ok);
    EXPECT_GT(nowhere_zero_margin(r.u, tests), 1e-6);
    EXPECT_TRUE(verify_certificate(r.certificate).ok);
  }
}

TEST(Generic, DiagonalisesInCallerOrder) {
  const std::vector<double> values{3.0, -1.0, 0.5, 2.0};
  const std::vector<Vector> tests = standard_basis(4);
  const GenericRealization r = generic_realize(cycle_graph(4), values, tests);
  const Matrix lambda = r.u.transpose() * r.matrix.dense() * r.u;
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(lambda(k, k), values[k], 1e-8);
  EXPECT_LT((lambda - Matrix(lambda.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Generic, Preconditions) {
  const std::vector<Vector> none;
  EXPECT_THROW(generic_realize(path_graph(3), std::vector<double>{0, 1}, none), InputError);
  EXPECT_THROW(generic_realize(path_graph(2), std::vector<double>{1, 1}, none), InputError);
  EXPECT_THROW(generic_realize(empty_graph(2), std::vector<double>{0, 1}, none), InputError);
  const std::vector<Vector> zero{Vector::Zero(2)};
  EXPECT_THROW(generic_realize(path_graph(2), std::vector<double>{0, 1}, zero), InputError);
}

TEST(GenericProperty, RandomGraphsCertify) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Graph g = oracle::connected_graph(rng, n, 0.5);
    const std::vector<double> lambda = oracle::distinct_spectrum(rng, n);
    std::vector<Vector> tests = standard_basis(n);
    tests.push_back(oracle::gaussian_vector(rng, n));
    GenericOptions options;
    options.seed = trial;
    const GenericRealization r = generic_realize(g, lambda, tests, options);
    const VerifyReport v = verify_certificate(r.certificate);
    EXPECT_TRUE(v.ok) << "trial " << trial;
    EXPECT_LE(residual_of(r.matrix, lambda), 1e-8 * spread(lambda));
    EXPECT_GT(nowhere_zero_margin(r.u, tests), options.margin_floor);
  }
}

TEST(Realize01, SingleColumnIsTridiagonal) {
  const MultiplicityMatrix v = MultiplicityMatrix::from_rows({{1}, {1}, {1}});
  const BlockRealization r = realize_01_multiplicity(path_graph(3), v, std::vector<double>{0, 1, 2});
  EXPECT_TRUE(in_pattern(r.matrix, path_graph(3)).ok);
  EXPECT_LT(residual_of(r.matrix, {0, 1, 2}), 1e-8);
}

TEST(Realize01, TwoComponentsAssemble) {
  const Graph g = disjoint_union(path_graph(2), path_graph(3));
  const MultiplicityMatrix v = MultiplicityMatrix::from_rows({{1, 1}, {1, 1}, {0, 1}});
  const BlockRealization r = realize_01_multiplicity(g, v, std::vector<double>{0, 1, 2});
  EXPECT_TRUE(in_pattern(r.matrix, g).ok);
  EXPECT_EQ(spectrum_grouped(r.matrix).multiplicities(), (std::vector<int>{2, 2, 1}));
  EXPECT_TRUE(verify_certificate(r.certificate).ok);
}

TEST(Realize01, RejectsBadMatrices) {
  const MultiplicityMatrix short_col = MultiplicityMatrix::from_rows({{1}, {1}});
  EXPECT_THROW(realize_01_multiplicity(path_graph(3), short_col, std::vector<double>{0, 1}),
               InputError);
  const MultiplicityMatrix two = MultiplicityMatrix::from_rows({{2}, {1}});
  EXPECT_THROW(realize_01_multiplicity(path_graph(3), two, std::vector<double>{0, 1}), InputError);
}

TEST(CycleCheck, Examples) {
  EXPECT_TRUE(cycle_spectrum_check(std::vector<double>{1, 1, 2, 2}));
  EXPECT_FALSE(cycle_spectrum_check(std::vector<double>{0, 0, 0, 1}));
  EXPECT_TRUE(cycle_spectrum_check(std::vector<double>{1, 2, 3}));
  EXPECT_THROW(cycle_spectrum_check(std::vector<double>{1, 2}), InputError);
}

TEST(CycleCheckProperty, AgreesWithLiteralChains) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    std::vector<double> l(n);
    l[0] = 0.0;
    for (int k = 1; k < n; ++k) l[k] = l[k - 1] + static_cast<double>(rng() % 2);
    EXPECT_EQ(cycle_spectrum_check(l), oracle::cycle_pattern(l));
  }
}

TEST(CycleRealize, Examples) {
  const CycleRealization a = cycle_realize(std::vector<double>{0, 1, 2});
  EXPECT_TRUE(verify_certificate(a.certificate).ok);

  const CycleRealization b = cycle_realize(std::vector<double>{-1, -1, 2});
  EXPECT_TRUE(in_pattern(b.matrix, cycle_graph(3)).ok);
  EXPECT_LT(residual_of(b.matrix, {-1, -1, 2}), 1e-8 * 3);

  const CycleRealization c = cycle_realize(std::vector<double>{0, 0, 1, 1, 3, 3});
  EXPECT_TRUE(verify_certificate(c.certificate).ok);
  EXPECT_EQ(spectrum_grouped(c.matrix).multiplicities(), (std::vector<int>{2, 2, 2}));

  EXPECT_THROW(cycle_realize(std::vector<double>{0, 0, 0, 1}), InputError);
}

TEST(CycleRealizeProperty, AcceptedPatternsRealise) {
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    std::vector<double> l = oracle::distinct_spectrum(rng, n);
    if (trial % 2 == 1) {
      // pair up values (2k, 2k+1) where the pattern allows it
      for (int k = 0; k + 1 < n; k += 2) l[k + 1] = l[k];
      if (!oracle::cycle_pattern(l)) continue;
    }
    CycleOptions options;
    options.seed = trial;
    const CycleRealization r = cycle_realize(l, options);
    EXPECT_TRUE(in_pattern(r.matrix, cycle_graph(n)).ok);
    EXPECT_LE(residual_of(r.matrix, l), 1e-8 * spread(l));
  }
}

TEST(Complete, Examples) {
  const std::vector<Vector> none;
  const CompleteRealization one = complete_realize(std::vector<double>{7.0}, none);
  EXPECT_DOUBLE_EQ(one.matrix(0, 0), 7.0);

  const CompleteRealization two = complete_realize(std::vector<double>{0.0, 2.0}, standard_basis(2));
  EXPECT_TRUE(verify_certificate(two.certificate).ok);

  const CompleteRealization four =
      complete_realize(std::vector<double>{0, 0, 0, 4}, standard_basis(4));
  EXPECT_TRUE(in_pattern(four.matrix, complete_graph(4)).ok);
  EXPECT_EQ(spectrum_grouped(four.matrix).multiplicities(), (std::vector<int>{3, 1}));
  EXPECT_GT(nowhere_zero_margin(four.u, standard_basis(4)), 0.0);
  EXPECT_LT((four.u.transpose() * four.matrix.dense() * four.u -
             oracle::to_diag({0, 0, 0, 4})).cwiseAbs().maxCoeff(),
            1e-10);

  EXPECT_THROW(complete_realize(std::vector<double>{1, 1}, none), InputError);
}

TEST(Eigenbasis, Examples) {
  const EigenbasisResult id = nowhere_zero_eigenbasis(SymMatrix(Matrix::Identity(2, 2)));
  ASSERT_TRUE(id.found);
  EXPECT_NEAR(id.min_abs_entry, 1.0 / std::sqrt(2.0), 1e-12);

  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const EigenbasisResult s = nowhere_zero_eigenbasis(SymMatrix(swap));
  ASSERT_TRUE(s.found);
  EXPECT_EQ(s.mixes, 0);

  const CycleRealization c = cycle_realize(std::vector<double>{0, 0, 1, 1, 3, 3});
  const EigenbasisResult e = nowhere_zero_eigenbasis(c.matrix);
  ASSERT_TRUE(e.found);
  EXPECT_LT((e.basis.transpose() * e.basis - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((c.matrix.dense() * e.basis - e.basis * e.values.asDiagonal()).cwiseAbs().maxCoeff(),
            1e-8);
}

TEST(Eigenbasis, ReportsStuckCoordinate) {
  // Reducible with simple eigenvalues: eigenvectors are forced to vanish.
  const std::vector<double> d{1.0, 2.0};
  const EigenbasisResult r = nowhere_zero_eigenbasis(SymMatrix::diagonal(d));
  EXPECT_FALSE(r.found);
  EXPECT_GE(r.stuck_row, 0);
  EXPECT_GE(r.stuck_column, 0);
}

}  // namespace
}  // namespace iepg

#include "spectral_newton.hpp"

#include <cmath>
#include <numeric>

#include "iepg/errors.hpp"

namespace iepg::detail {

SymMatrix assemble(const SymMatrix& base, const std::vector<Position>& free,
                   const Vector& x) {
  SymMatrix out = base;
  for (std::size_t p = 0; p < free.size(); ++p) out.set(free[p].i, free[p].j, x(p));
  return out;
}

Vector extract(const SymMatrix& m, const std::vector<Position>& free) {
  Vector x(free.size());
  for (std::size_t p = 0; p < free.size(); ++p) x(p) = m(free[p].i, free[p].j);
  return x;
}

std::vector<int> singleton_groups(std::size_t n) { return std::vector<int>(n, 1); }

namespace {

struct Linearisation {
  Matrix jacobian;
  Vector residual;
};

Linearisation linearise(const NewtonProblem& problem, const EigenDecomposition& eig) {
  int rows = 0;
  for (int m : problem.group_sizes) rows += m * (m + 1) / 2;
  Linearisation lin{Matrix::Zero(rows, problem.free.size()), Vector::Zero(rows)};

  int row = 0;
  int start = 0;
  for (int m : problem.group_sizes) {
    const Matrix p = eig.vectors.middleCols(start, m);
    for (int a = 0; a < m; ++a) {
      for (int b = a; b < m; ++b, ++row) {
        if (a == b) lin.residual(row) = eig.values(start + a) - problem.target[start + a];
        for (std::size_t q = 0; q < problem.free.size(); ++q) {
          const int i = problem.free[q].i;
          const int j = problem.free[q].j;
          lin.jacobian(row, q) = i == j ? p(i, a) * p(i, b)
                                        : p(i, a) * p(j, b) + p(j, a) * p(i, b);
        }
      }
    }
    start += m;
  }
  return lin;
}

double merit(const Vector& values, const std::vector<double>& target) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double d = values(k) - target[k];
    out += d * d;
  }
  return out;
}

double max_residual(const Vector& values, const std::vector<double>& target) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k)
    out = std::max(out, std::abs(values(k) - target[k]));
  return out;
}

}  // namespace

NewtonResult spectral_newton(const NewtonProblem& problem, const Vector& x0,
                             const NewtonOptions& options) {
  const auto n = static_cast<std::size_t>(problem.base.dim());
  if (problem.target.size() != n ||
      std::accumulate(problem.group_sizes.begin(), problem.group_sizes.end(), 0) !=
          static_cast<int>(n)) {
    throw InputError("spectral_newton: target/group sizes do not match dimension");
  }

  NewtonResult result;
  result.x = x0;
  result.matrix = assemble(problem.base, problem.free, x0);
  EigenDecomposition eig = eigen_decompose(result.matrix);
  double current = merit(eig.values, problem.target);
  result.residual = max_residual(eig.values, problem.target);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (result.residual <= options.tol_abs) {
      result.converged = true;
      return result;
    }
    result.iterations = iter + 1;
    const Linearisation lin = linearise(problem, eig);
    const Vector step = -lin.jacobian.completeOrthogonalDecomposition().solve(lin.residual);
    if (!step.allFinite()) break;

    bool accepted = false;
    double scale = 1.0;
    for (int bt = 0; bt < options.max_backtracks; ++bt, scale *= 0.5) {
      const Vector trial_x = result.x + scale * step;
      const SymMatrix trial = assemble(problem.base, problem.free, trial_x);
      EigenDecomposition trial_eig = eigen_decompose(trial);
      const double trial_merit = merit(trial_eig.values, problem.target);
      if (trial_merit < current) {
        result.x = trial_x;
        result.matrix = trial;
        eig = std::move(trial_eig);
        current = trial_merit;
        result.residual = max_residual(eig.values, problem.target);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  result.converged = result.residual <= options.tol_abs;
  return result;
}

}  // namespace iepg::detail

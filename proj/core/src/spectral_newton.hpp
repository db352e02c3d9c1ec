#pragma once

#include <vector>

#include "iepg/symmat.hpp"

namespace iepg::detail {

/// A symmetric matrix entry (0-based, i <= j) treated as a free unknown.
struct Position {
  int i = 0;
  int j = 0;
};

/// Least-squares match of sorted eigenvalues to a sorted target over a set of
/// free entries. Clustered target values (group_sizes > 1) are handled by
/// requiring the compression Pᵀ(A - μI)P onto the current invariant subspace
/// to vanish, which stays smooth where the eigenvalues coalesce.
struct NewtonProblem {
  SymMatrix base;
  std::vector<Position> free;
  std::vector<double> target;    // ascending
  std::vector<int> group_sizes;  // consecutive clusters of `target`
};

struct NewtonOptions {
  int max_iterations = 100;
  double tol_abs = 1e-12;
  int max_backtracks = 40;
};

struct NewtonResult {
  Vector x;
  SymMatrix matrix;
  double residual = 0.0;  // max |λ_k - target_k|
  int iterations = 0;
  bool converged = false;
};

SymMatrix assemble(const SymMatrix& base, const std::vector<Position>& free,
                   const Vector& x);
Vector extract(const SymMatrix& m, const std::vector<Position>& free);

NewtonResult spectral_newton(const NewtonProblem& problem, const Vector& x0,
                             const NewtonOptions& options);

/// Groups of size one for every target value.
std::vector<int> singleton_groups(std::size_t n);

}  // namespace iepg::detail

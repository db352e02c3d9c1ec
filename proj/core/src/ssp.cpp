#include "iepg/ssp.hpp"

#include <cmath>
#include <random>

#include "iepg/errors.hpp"
#include "spectral_newton.hpp"

namespace iepg {

namespace {

double deviatoric_norm(const SymMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const double shift = a.dense().trace() / a.dim();
  return (a.dense() - shift * Matrix::Identity(a.dim(), a.dim())).norm();
}

// Columns: free pairs (k,l); rows: upper-triangular entries of AX - XA for
// X = E_kl + E_lk.
SspReport ssp_from_free(const SymMatrix& a, const std::vector<std::pair<int, int>>& free,
                        double tol) {
  const int n = a.dim();
  SspReport report;
  report.free_entries = static_cast<int>(free.size());
  report.threshold = tol * deviatoric_norm(a);
  if (free.empty()) {
    report.holds = true;
    report.smallest_singular_value = std::numeric_limits<double>::infinity();
    return report;
  }

  const int rows = n * (n - 1) / 2;
  Matrix map = Matrix::Zero(rows, static_cast<Eigen::Index>(free.size()));
  const Matrix& dense = a.dense();
  for (std::size_t c = 0; c < free.size(); ++c) {
    const auto [k, l] = free[c];
    // (AX - XA)(i,j) with X = e_k e_lᵀ + e_l e_kᵀ.
    int row = 0;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < j; ++i, ++row) {
        double value = 0.0;
        if (j == l) value += dense(i, k);
        if (j == k) value += dense(i, l);
        if (i == k) value -= dense(l, j);
        if (i == l) value -= dense(k, j);
        map(row, c) = value;
      }
    }
  }

  Eigen::JacobiSVD<Matrix> svd(map, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  report.smallest_singular_value = sv(sv.size() - 1);
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) <= report.threshold) ++report.nullity;
  report.holds = report.nullity == 0;
  if (!report.holds) {
    const Vector kernel = svd.matrixV().col(sv.size() - 1);
    SymMatrix x = SymMatrix::zeros(n);
    for (std::size_t c = 0; c < free.size(); ++c)
      x.set(free[c].first, free[c].second, kernel(c));
    report.witness = x;
  }
  return report;
}

}  // namespace

SspReport ssp_check(const SymMatrix& a, const SspOptions& options) {
  const double zero_tol =
      options.zero_tol > 0.0 ? options.zero_tol : 1e-8 * (1.0 + a.max_abs_off_diagonal());
  std::vector<std::pair<int, int>> free;
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < j; ++i)
      if (std::abs(a(i, j)) <= zero_tol) free.emplace_back(i, j);
  return ssp_from_free(a, free, options.tol);
}

SspReport ssp_check(const SymMatrix& a, const Graph& pattern, double tol) {
  if (pattern.order() != a.dim()) throw InputError("ssp_check: dimension mismatch");
  std::vector<std::pair<int, int>> free;
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < j; ++i)
      if (!pattern.has_edge(i + 1, j + 1)) free.emplace_back(i, j);
  return ssp_from_free(a, free, tol);
}

EdgeExtendResult ssp_edge_extend(const SymMatrix& a, const Graph& sub, const Graph& super,
                                 const EdgeExtendOptions& options) {
  const int n = a.dim();
  if (sub.order() != n || super.order() != n)
    throw InputError("ssp_edge_extend: dimension mismatch");
  if (!super.contains_spanning(sub))
    throw InputError("ssp_edge_extend: g_sub is not a spanning subgraph of g_super");
  if (!(options.eps > 0.0)) throw InputError("ssp_edge_extend: eps must be positive");
  if (!in_pattern(a, sub).ok) throw InputError("ssp_edge_extend: a is not in S(g_sub)");

  const std::vector<double> target = to_std(eigenvalues(a));
  const double scale = residual_scale(target);

  std::vector<Edge> added;
  for (const Edge& e : super.edges())
    if (!sub.has_edge(e.u, e.v)) added.push_back(e);
  if (added.empty()) return {a, options.eps, 0.0, 0.0, 0, 0};

  if (group_values(target).distinct() != n)
    throw InputError("ssp_edge_extend: a has a repeated eigenvalue; only the simple case is supported");
  const SspReport ssp = ssp_check(a, sub);
  if (!ssp.holds) throw InputError("ssp_edge_extend: a does not have the SSP");

  std::vector<double> signs(added.size(), 1.0);
  if (options.random_signs) {
    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution coin(0.5);
    for (double& s : signs) s = coin(rng) ? 1.0 : -1.0;
  }

  std::vector<detail::Position> free;
  for (int i = 0; i < n; ++i) free.push_back({i, i});
  for (const Edge& e : sub.edges()) free.push_back({e.u - 1, e.v - 1});

  detail::NewtonOptions newton;
  newton.max_iterations = options.max_iterations;
  newton.tol_abs = 1e-13 * std::max(scale, a.max_abs());

  double best = std::numeric_limits<double>::infinity();
  for (int h = 0; h <= options.max_halvings; ++h) {
    const double eps = options.eps * std::ldexp(1.0, -h);
    detail::NewtonProblem problem{a, free, target, detail::singleton_groups(n)};
    for (std::size_t k = 0; k < added.size(); ++k)
      problem.base.set(added[k].u - 1, added[k].v - 1, signs[k] * eps / 2.0);
    const detail::NewtonResult solved =
        detail::spectral_newton(problem, detail::extract(a, free), newton);
    best = std::min(best, solved.residual);
    if (solved.residual > options.residual_rel * scale) continue;

    const SymMatrix& out = solved.matrix;
    if (!in_pattern(out, super).ok) continue;
    const double distance = (out.dense() - a.dense()).cwiseAbs().maxCoeff();
    if (distance > eps) continue;
    if (!ssp_check(out, super).holds) continue;
    return {out, eps, solved.residual, distance, solved.iterations, h};
  }
  throw NumericError("ssp_edge_extend: no spectrum-preserving extension found down the eps schedule",
                     best);
}

}  // namespace iepg

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "iepg/errors.hpp"
#include "iepg/json_io.hpp"
#include "iepg/realize.hpp"
#include "iepg/ssp.hpp"
#include "random_orthogonal.hpp"
#include "spectral_newton.hpp"

namespace iepg {

bool cycle_spectrum_check(std::span<const double> lambdas, double tol) {
  const std::size_t n = lambdas.size();
  if (n < 3) throw InputError("cycle_spectrum_check: need at least 3 values");
  std::vector<bool> equal(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double gap = lambdas[k + 1] - lambdas[k];
    if (gap < -tol) throw InputError("cycle_spectrum_check: values must be ascending");
    equal[k] = gap <= tol;
  }
  return alternating_equalities_ok(equal);
}

namespace {

std::vector<detail::Position> cycle_positions(int n) {
  std::vector<detail::Position> free;
  for (int i = 0; i < n; ++i) free.push_back({i, i});
  for (int i = 0; i + 1 < n; ++i) free.push_back({i, i + 1});
  free.push_back({0, n - 1});
  return free;
}

// Circulant-type start: c0 on the diagonal, c1 on every cycle edge, the
// closing edge negated for the antiperiodic variant. Fitted by least squares
// to the sorted target.
struct CirculantSeed {
  Vector x;
  double misfit = 0.0;
};

CirculantSeed circulant_seed(const std::vector<double>& target, bool antiperiodic) {
  const int n = static_cast<int>(target.size());
  std::vector<double> profile(n);
  for (int k = 0; k < n; ++k) {
    const double angle = antiperiodic ? (2.0 * k + 1.0) * std::numbers::pi / n
                                      : 2.0 * k * std::numbers::pi / n;
    profile[k] = 2.0 * std::cos(angle);
  }
  CirculantSeed best{Vector(), std::numeric_limits<double>::infinity()};
  for (double sign : {1.0, -1.0}) {
    std::vector<double> p(n);
    for (int k = 0; k < n; ++k) p[k] = sign * profile[k];
    std::sort(p.begin(), p.end());
    Matrix design(n, 2);
    Vector rhs(n);
    for (int k = 0; k < n; ++k) {
      design(k, 0) = 1.0;
      design(k, 1) = p[k];
      rhs(k) = target[k];
    }
    Vector coef = design.colPivHouseholderQr().solve(rhs);
    if (!(coef(1) > 0.0)) coef(1) = 1e-3 * residual_scale(target);
    const double misfit = (design * coef - rhs).norm();
    if (misfit < best.misfit) {
      const double c1 = sign * coef(1) / 2.0;
      Vector x(2 * n);
      for (int i = 0; i < n; ++i) x(i) = coef(0);
      for (int i = 0; i < n; ++i) x(n + i) = c1;
      if (antiperiodic) x(2 * n - 1) = -c1;
      best = {x, misfit};
    }
  }
  return best;
}

double min_edge(const SymMatrix& m, const Graph& g) {
  double out = std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) out = std::min(out, std::abs(m(e.u - 1, e.v - 1)));
  return out;
}

}  // namespace

CycleRealization cycle_realize(std::span<const double> lambdas, const CycleOptions& options) {
  const int n = static_cast<int>(lambdas.size());
  if (n < 3) throw InputError("cycle_realize: need at least 3 values");
  std::vector<double> target(lambdas.begin(), lambdas.end());
  if (!std::is_sorted(target.begin(), target.end()))
    throw InputError("cycle_realize: values must be ascending");
  const double gap_tol = default_gap_tol(target);
  if (!cycle_spectrum_check(target, gap_tol))
    throw InputError("cycle_realize: spectrum violates the cycle interlacing pattern");

  const Graph cycle = cycle_graph(n);
  const Spectrum groups = group_values(target, gap_tol);
  const double scale = residual_scale(target);
  CycleRealization out;

  auto certify = [&](const SymMatrix& m, std::optional<double> eps) {
    out.matrix = m;
    out.certificate = make_certificate("cycle", cycle, m, target, options.spectral_tol_rel);
    out.certificate.ssp = ssp_check(m, cycle);
    out.certificate.parameters = {std::nullopt, eps, options.seed};
    return out;
  };

  if (groups.distinct() == n) {
    const SymMatrix jacobi = jacobi_from_spectrum(target);
    const Graph path = path_graph(n);
    if (!ssp_check(jacobi, path).holds)
      throw NumericError("cycle_realize: Jacobi matrix failed the SSP test");
    EdgeExtendOptions ext;
    ext.eps = options.eps0 * spread(target) / (n - 1);
    ext.seed = options.seed;
    for (bool flip : {false, true}) {
      ext.random_signs = flip;
      try {
        const EdgeExtendResult extended = ssp_edge_extend(jacobi, path, cycle, ext);
        return certify(extended.matrix, extended.eps_used);
      } catch (const NumericError&) {
      }
    }
    // No extension within the distance bound; solve on the cycle directly.
  }

  detail::NewtonProblem problem{SymMatrix::zeros(n), cycle_positions(n), groups.expanded(),
                                groups.multiplicities()};
  detail::NewtonOptions newton;
  newton.max_iterations = 200;
  newton.tol_abs = 1e-11 * scale;

  const CirculantSeed periodic = circulant_seed(problem.target, false);
  const CirculantSeed antiperiodic = circulant_seed(problem.target, true);
  const CirculantSeed& first = periodic.misfit <= antiperiodic.misfit ? periodic : antiperiodic;
  const CirculantSeed& second = periodic.misfit <= antiperiodic.misfit ? antiperiodic : periodic;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= 2 * options.restarts + 1; ++attempt) {
    Vector x0 = (attempt % 2 == 0 ? first : second).x;
    if (attempt >= 2) {
      const double size = 0.3 * scale / std::sqrt(static_cast<double>(n));
      for (Eigen::Index k = 0; k < x0.size(); ++k) x0(k) += size * normal(rng);
    }
    const detail::NewtonResult solved = detail::spectral_newton(problem, x0, newton);
    best = std::min(best, solved.residual);
    out.restarts_used = attempt;
    if (solved.residual > 0.1 * options.spectral_tol_rel * scale) continue;
    if (min_edge(solved.matrix, cycle) < 1e-6 * scale) continue;
    try {
      return certify(solved.matrix, std::nullopt);
    } catch (const NumericError&) {
    }
  }
  throw NumericError("cycle_realize: Gauss-Newton restarts exhausted", best);
}

CompleteRealization complete_realize(std::span<const double> values,
                                     std::span<const Vector> test_vectors,
                                     const CompleteOptions& options) {
  const int m = static_cast<int>(values.size());
  if (m == 0) throw InputError("complete_realize: empty spectrum");
  for (const Vector& y : test_vectors)
    if (y.size() != m || !(y.norm() > 0.0))
      throw InputError("complete_realize: test vectors must be nonzero of matching dimension");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (m >= 2 && group_values(sorted).distinct() < 2)
    throw InputError("complete_realize: a scalar spectrum is not realisable in S(K_m), m >= 2");

  const Graph complete = complete_graph(m);
  const double scale = residual_scale(sorted);
  const Vector lambda = to_eigen(values);
  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    const Matrix q = m == 1 ? Matrix::Ones(1, 1) : detail::random_orthogonal(m, rng);
    const SymMatrix a(q * lambda.asDiagonal() * q.transpose());
    if (m > 1 && min_edge(a, complete) < 1e-6 * scale) continue;
    if (!in_pattern(a, complete).ok) continue;
    if (nowhere_zero_margin(q, test_vectors) < options.margin_floor) continue;
    CompleteRealization out;
    out.matrix = a;
    out.u = q;
    try {
      out.certificate = make_certificate("complete", complete, a, sorted, options.spectral_tol_rel);
    } catch (const NumericError&) {
      continue;
    }
    attach_eigenbasis(out.certificate, q, std::vector<double>(values.begin(), values.end()),
                      std::vector<Vector>(test_vectors.begin(), test_vectors.end()));
    out.certificate.ssp = ssp_check(a, complete);
    out.certificate.parameters.seed = options.seed;
    out.certificate.extra["attempt"] = attempt;
    return out;
  }
  throw NumericError("complete_realize: random orthogonal retries exhausted");
}

namespace {

struct Eigenspaces {
  EigenDecomposition eig;
  Spectrum spectrum;
  std::vector<int> start;  // first column of each group
};

Eigenspaces eigenspaces(const SymMatrix& a, double gap_tol) {
  Eigenspaces out;
  out.eig = eigen_decompose(a);
  out.spectrum = group_values(to_std(out.eig.values), gap_tol);
  int col = 0;
  for (const SpectralGroup& grp : out.spectrum.groups) {
    out.start.push_back(col);
    col += grp.multiplicity;
  }
  return out;
}

Matrix rotation45() {
  const double c = std::sqrt(0.5);
  Matrix r(2, 2);
  r << c, -c, c, c;
  return r;
}

}  // namespace

EigenbasisResult nowhere_zero_eigenbasis(const SymMatrix& a, const EigenbasisOptions& options) {
  const double zero_tol = options.zero_tol > 0.0 ? options.zero_tol : default_zero_tol(a);
  const Eigenspaces spaces = eigenspaces(a, options.gap_tol);
  std::mt19937_64 rng(options.seed);

  EigenbasisResult out;
  out.values = spaces.eig.values;
  out.basis = spaces.eig.vectors;
  out.found = true;
  for (std::size_t grp = 0; grp < spaces.spectrum.groups.size(); ++grp) {
    const int d = spaces.spectrum.groups[grp].multiplicity;
    const int c0 = spaces.start[grp];
    const Matrix original = spaces.eig.vectors.middleCols(c0, d);
    Matrix mixed = original;
    bool ok = false;
    for (int mix = 0; mix <= options.max_mixes; ++mix) {
      if (mix > 0 || d >= 2) {
        const Matrix r = (mix == 0 && d == 2) ? rotation45() : detail::random_orthogonal(d, rng);
        mixed = original * r;
        ++out.mixes;
      }
      Eigen::Index row = 0;
      Eigen::Index col = 0;
      const double smallest = mixed.cwiseAbs().minCoeff(&row, &col);
      if (smallest > zero_tol) {
        ok = true;
        break;
      }
      out.stuck_row = static_cast<int>(row);
      out.stuck_column = c0 + static_cast<int>(col);
      if (d == 1) break;
    }
    out.basis.middleCols(c0, d) = mixed;
    if (!ok) {
      out.found = false;
      return out;
    }
  }
  out.stuck_row = out.stuck_column = -1;
  out.min_abs_entry = out.basis.cwiseAbs().minCoeff();
  return out;
}

MixedBasis generic_eigenbasis(const SymMatrix& a, std::span<const double> ordered_values,
                              std::span<const Vector> test_vectors, double margin_floor,
                              std::uint64_t seed, int attempts) {
  const int n = a.dim();
  if (static_cast<int>(ordered_values.size()) != n)
    throw InputError("generic_eigenbasis: need one value per column");
  const Eigenspaces spaces = eigenspaces(a, 0.0);
  const auto& groups = spaces.spectrum.groups;
  const double match_tol =
      std::max(spaces.spectrum.gap_tol, 1e-6 * residual_scale(to_std(spaces.eig.values)));

  std::vector<std::vector<int>> positions(groups.size());
  for (int k = 0; k < n; ++k) {
    std::size_t nearest = 0;
    for (std::size_t g = 1; g < groups.size(); ++g)
      if (std::abs(groups[g].value - ordered_values[k]) <
          std::abs(groups[nearest].value - ordered_values[k]))
        nearest = g;
    if (std::abs(groups[nearest].value - ordered_values[k]) > match_tol)
      throw InputError("generic_eigenbasis: value is not an eigenvalue of the matrix");
    positions[nearest].push_back(k);
  }
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (static_cast<int>(positions[g].size()) != groups[g].multiplicity)
      throw InputError("generic_eigenbasis: multiplicities do not match the matrix spectrum");

  EigenbasisOptions nz;
  nz.seed = seed;
  const EigenbasisResult start = nowhere_zero_eigenbasis(a, nz);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double best = 0.0;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Matrix u(n, n);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const int d = groups[g].multiplicity;
      Matrix block = start.basis.middleCols(spaces.start[g], d);
      if (attempt > 0 && d > 1) block = block * detail::random_orthogonal(d, rng);
      for (int c = 0; c < d; ++c) u.col(positions[g][c]) = block.col(c);
    }
    const double margin = nowhere_zero_margin(u, test_vectors);
    best = std::max(best, margin);
    if (margin >= margin_floor) return {u, margin, attempt + 1};
  }
  throw NumericError("generic_eigenbasis: no mixing reached the margin floor", best);
}

}  // namespace iepg

#include "iepg/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "iepg/errors.hpp"
#include "iepg/json_io.hpp"
#include "iepg/ssp.hpp"
#include "spectral_newton.hpp"

namespace iepg {

namespace {

void require_strictly_ascending(std::span<const double> values, const char* who) {
  for (std::size_t k = 1; k < values.size(); ++k)
    if (!(values[k] > values[k - 1]))
      throw InputError(std::string(who) + ": values must be strictly ascending and distinct");
}

constexpr double kUnderflowGuard = 1e-300;

}  // namespace

SymMatrix jacobi_from_spectrum(std::span<const double> lambdas) {
  const int n = static_cast<int>(lambdas.size());
  if (n == 0) throw InputError("jacobi_from_spectrum: empty spectrum");
  require_strictly_ascending(lambdas, "jacobi_from_spectrum");

  const Vector lambda = to_eigen(lambdas);
  Matrix q = Matrix::Zero(n, n);
  q.col(0) = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  SymMatrix out = SymMatrix::zeros(n);
  for (int k = 0; k < n; ++k) {
    Vector w = lambda.cwiseProduct(q.col(k));
    out.set(k, k, q.col(k).dot(w));
    if (k + 1 == n) break;
    // Full reorthogonalisation, twice.
    for (int pass = 0; pass < 2; ++pass)
      w -= q.leftCols(k + 1) * (q.leftCols(k + 1).transpose() * w);
    const double beta = w.norm();
    if (!(beta > 0.0)) throw NumericError("jacobi_from_spectrum: Lanczos breakdown");
    out.set(k, k + 1, beta);
    q.col(k + 1) = w / beta;
  }
  return out;
}

// ---------------------------------------------------------------------------

long ExponentSchedule::f_of(Vertex i, Vertex j) const {
  const Edge e{std::min(i, j), std::max(i, j)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) throw InputError("exponent schedule: not a tree edge");
  return f[static_cast<std::size_t>(it - edges.begin())];
}

long ExponentSchedule::max_f() const {
  return f.empty() ? 0 : *std::max_element(f.begin(), f.end());
}

long ExponentSchedule::max_s() const {
  long out = 0;
  for (const auto& row : s)
    for (long v : row) out = std::max(out, v);
  return out;
}

double ExponentSchedule::min_t() const {
  const long m = max_s();
  return m == 0 ? 0.0 : std::pow(kUnderflowGuard, 1.0 / static_cast<double>(m));
}

ExponentSchedule exponent_schedule(const Graph& tree, ScheduleMode mode) {
  if (!tree.is_tree()) throw InputError("exponent_schedule: input is not a tree");
  ExponentSchedule out;
  out.tree = tree;
  out.mode = mode;
  out.edges.assign(tree.edges().begin(), tree.edges().end());
  out.diameter = diameter(tree);
  const std::size_t m = out.edges.size();
  if (mode == ScheduleMode::injective && m > 40)
    throw InputError("exponent_schedule: tree too large for an injective schedule");

  out.g.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.g[k] = mode == ScheduleMode::uniform ? 1L : (1L << k);
  const long max_g = m == 0 ? 1 : *std::max_element(out.g.begin(), out.g.end());
  // Uniform: N0 = diam + 1. Injective: N0 exceeds every sum of distinct g,
  // so path length and edge set can both be read off s.
  out.n0 = mode == ScheduleMode::uniform ? out.diameter + 1
                                         : max_g * (out.diameter + 1) + 1;
  out.f.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.f[k] = out.n0 + out.g[k];

  const int n = tree.order();
  out.s.assign(n, std::vector<long>(n, 0));
  for (Vertex root = 1; root <= n; ++root) {
    std::vector<bool> seen(n + 1, false);
    std::queue<Vertex> todo;
    todo.push(root);
    seen[root] = true;
    while (!todo.empty()) {
      const Vertex v = todo.front();
      todo.pop();
      for (Vertex w : tree.neighbors(v)) {
        if (seen[w]) continue;
        seen[w] = true;
        out.s[root - 1][w - 1] = out.s[root - 1][v - 1] + out.f_of(v, w);
        todo.push(w);
      }
    }
  }

  if (mode == ScheduleMode::injective) {
    std::set<long> values;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!values.insert(out.s[i][j]).second)
          throw NumericError("exponent_schedule: path sums are not injective");
    if (out.min_t() >= 0.5)
      throw InputError("exponent_schedule: injective exponents underflow for every useful t; "
                       "use a smaller tree");
  }
  return out;
}

Matrix decay_constants(const ExponentSchedule& schedule, std::span<const double> lambdas) {
  const int n = schedule.tree.order();
  if (static_cast<int>(lambdas.size()) != n)
    throw InputError("decay_constants: need one eigenvalue per vertex");
  Matrix c = Matrix::Ones(n, n);
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = 1; j <= n; ++j) {
      if (i == j) continue;
      double product = 1.0;
      for (Vertex k : tree_path(schedule.tree, i, j))
        if (k != j) product /= lambdas[j - 1] - lambdas[k - 1];
      c(i - 1, j - 1) = product;
    }
  }
  return c;
}

HomotopySolution tree_homotopy_solve(const ExponentSchedule& schedule,
                                     std::span<const double> target, double t,
                                     const HomotopyOptions& options) {
  const int n = schedule.tree.order();
  if (static_cast<int>(target.size()) != n)
    throw InputError("tree_homotopy_solve: target size differs from tree order");
  require_strictly_ascending(target, "tree_homotopy_solve");
  if (!(t > 0.0 && t < 1.0)) throw InputError("tree_homotopy_solve: t must lie in (0, 1)");
  if (n > 1 && std::pow(t, static_cast<double>(schedule.max_f())) < kUnderflowGuard)
    throw InputError("tree_homotopy_solve: t^f underflows");

  SymMatrix base = SymMatrix::zeros(n);
  for (std::size_t k = 0; k < schedule.edges.size(); ++k) {
    const Edge& e = schedule.edges[k];
    base.set(e.u - 1, e.v - 1, std::pow(t, static_cast<double>(schedule.f[k])));
  }

  const Vector lambda = to_eigen(target);
  Vector d = options.initial_diagonal ? *options.initial_diagonal : lambda;
  if (d.size() != n) throw InputError("tree_homotopy_solve: initial diagonal has wrong size");

  const double tol = options.residual_rel * residual_scale(target);
  auto build = [&](const Vector& diag) {
    Matrix m = base.dense();
    m.diagonal() = diag;
    return SymMatrix(m);
  };

  SymMatrix a = build(d);
  EigenDecomposition eig = eigen_decompose(a);
  double residual = (eig.values - lambda).cwiseAbs().maxCoeff();
  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    if (residual <= tol) return {a, t, residual, iter};
    if (iter == options.max_iterations) break;
    // J(k,i) = ∂λ_k/∂d_i = u_k(i)².
    const Matrix jac = eig.vectors.cwiseAbs2().transpose();
    const Vector step = jac.fullPivLu().solve(eig.values - lambda);
    if (!step.allFinite()) break;
    bool accepted = false;
    double scale = 1.0;
    for (int bt = 0; bt < options.max_backtracks; ++bt, scale *= 0.5) {
      const Vector trial_d = d - scale * step;
      SymMatrix trial = build(trial_d);
      EigenDecomposition trial_eig = eigen_decompose(trial);
      const double trial_residual = (trial_eig.values - lambda).cwiseAbs().maxCoeff();
      if (trial_residual < residual) {
        d = trial_d;
        a = std::move(trial);
        eig = std::move(trial_eig);
        residual = trial_residual;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  throw NumericError("tree_homotopy_solve: Newton did not converge", residual);
}

Matrix tree_eigenvectors(const SymMatrix& a, const Graph& tree, const Vector& values) {
  const int n = a.dim();
  if (tree.order() != n || values.size() != n)
    throw InputError("tree_eigenvectors: dimension mismatch");
  Matrix u = Matrix::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const double lambda = values(col);
    const Vertex root = col + 1;
    std::vector<Vertex> order{root};
    std::vector<Vertex> parent(n + 1, 0);
    for (std::size_t k = 0; k < order.size(); ++k)
      for (Vertex w : tree.neighbors(order[k]))
        if (w != parent[order[k]] && w != root) {
          parent[w] = order[k];
          order.push_back(w);
        }
    if (static_cast<int>(order.size()) != n) throw InputError("tree_eigenvectors: not a tree");

    // r_i = v_i / v_parent(i), from the leaves up.
    std::vector<double> ratio(n + 1, 0.0);
    std::vector<double> child_sum(n + 1, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Vertex i = *it;
      if (i == root) break;
      const double pivot = a(i - 1, i - 1) - lambda + child_sum[i];
      const Vertex p = parent[i];
      ratio[i] = -a(i - 1, p - 1) / pivot;
      child_sum[p] += a(p - 1, i - 1) * ratio[i];
    }
    u(root - 1, col) = 1.0;
    for (std::size_t k = 1; k < order.size(); ++k) {
      const Vertex i = order[k];
      u(i - 1, col) = ratio[i] * u(parent[i] - 1, col);
    }
    u.col(col) /= u.col(col).norm();
  }
  return u;
}

// ---------------------------------------------------------------------------

std::vector<double> default_decay_t_values() { return {1e-1, 1e-2, 1e-3}; }

double DecayTable::relative_error(std::size_t k, int i, int j) const {
  return std::abs(rows.at(k).ratio(i, j) - c(i, j)) / std::abs(c(i, j));
}

std::string DecayTable::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t,i,j,s,u,ratio,c,rel_error\n";
  const int n = static_cast<int>(c.rows());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out << rows[k].t << ',' << i + 1 << ',' << j + 1 << ',' << schedule.s[i][j] << ','
            << rows[k].u(i, j) << ',' << rows[k].ratio(i, j) << ',' << c(i, j) << ','
            << relative_error(k, i, j) << '\n';
  return out.str();
}

DecayTable decay_ratio_table(const ExponentSchedule& schedule, std::span<const double> lambdas,
                             std::span<const double> t_values) {
  const int n = schedule.tree.order();
  if (n > 6) throw InputError("decay_ratio_table: tree order must be at most 6");
  std::vector<double> ts(t_values.begin(), t_values.end());
  if (ts.empty()) ts = default_decay_t_values();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0 && ts[k] < 1.0)) throw InputError("decay_ratio_table: t outside (0,1)");
    if (k > 0 && !(ts[k] < ts[k - 1])) throw InputError("decay_ratio_table: t values must decrease");
    if (ts[k] < schedule.min_t())
      throw InputError("decay_ratio_table: t below the underflow guard for this schedule");
  }

  DecayTable table;
  table.schedule = schedule;
  table.lambdas.assign(lambdas.begin(), lambdas.end());
  table.c = decay_constants(schedule, lambdas);
  for (double t : ts) {
    const HomotopySolution sol = tree_homotopy_solve(schedule, lambdas, t);
    DecayRow row;
    row.t = t;
    row.residual = sol.residual;
    // Column j belongs to λ_j, which the homotopy keeps at vertex j.
    row.u = tree_eigenvectors(sol.matrix, schedule.tree, eigenvalues(sol.matrix));
    normalize_column_signs(row.u);
    row.ratio = Matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        row.ratio(i, j) = row.u(i, j) / std::pow(t, static_cast<double>(schedule.s[i][j]));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) row.max_off_diagonal = std::max(row.max_off_diagonal, std::abs(row.u(i, j)));
    table.rows.push_back(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------

std::vector<double> default_t_schedule() {
  std::vector<double> out{0.99, 0.98, 0.97, 0.95, 0.9, 0.85, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2};
  for (double decade = 0.1; decade > 5e-7; decade /= 10.0) {
    out.push_back(decade);
    out.push_back(decade / 2.0);
    out.push_back(decade / 5.0);
  }
  out.push_back(1e-6);
  return out;
}

namespace {

struct Normalisation {
  double centre = 0.0;
  double unit = 1.0;
};

Normalisation normalisation_for(std::span<const double> sorted) {
  Normalisation out;
  const std::size_t n = sorted.size();
  out.centre = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  if (n > 1) out.unit = (sorted.back() - sorted.front()) / static_cast<double>(n - 1);
  return out;
}

// Homotopy solutions along an ascending grid, each warm-started from the
// previous one; a step that fails is bisected geometrically.
std::map<double, SymMatrix> continuation(const ExponentSchedule& schedule,
                                         std::span<const double> target,
                                         std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::map<double, SymMatrix> out;
  std::optional<Vector> diagonal;
  double previous = 0.0;
  for (double t : grid) {
    if (!(t > 0.0 && t < 1.0)) continue;
    if (std::pow(t, static_cast<double>(schedule.max_f())) < kUnderflowGuard) continue;
    std::vector<double> stops{t};
    bool reached = false;
    for (int depth = 0; depth < 8 && !reached; ++depth) {
      try {
        std::optional<Vector> d = diagonal;
        HomotopySolution sol;
        for (double stop : stops) {
          HomotopyOptions options;
          options.initial_diagonal = d;
          sol = tree_homotopy_solve(schedule, target, stop, options);
          d = sol.matrix.dense().diagonal();
        }
        out.emplace(t, sol.matrix);
        diagonal = d;
        reached = true;
      } catch (const NumericError&) {
        if (previous <= 0.0) break;
        const int pieces = 2 << depth;
        stops.clear();
        for (int p = 1; p <= pieces; ++p)
          stops.push_back(previous * std::pow(t / previous, static_cast<double>(p) / pieces));
      }
    }
    if (!reached) break;
    previous = t;
  }
  return out;
}

struct Candidate {
  SymMatrix matrix;
  Matrix u;  // sorted order
  double margin = 0.0;
};

Candidate evaluate(const SymMatrix& normalised, const Normalisation& norm,
                   std::span<const Vector> sorted_tests) {
  Candidate out;
  Matrix m = norm.unit * normalised.dense();
  m.diagonal().array() += norm.centre;
  out.matrix = SymMatrix(m);
  out.u = eigen_decompose(out.matrix).vectors;
  normalize_column_signs(out.u);
  out.margin = nowhere_zero_margin(out.u, sorted_tests);
  return out;
}

// Grows the tree entries of `start` geometrically, restoring the spectrum after
// each step. Stops at the first step that loses convergence, pattern or SSP.
std::vector<SymMatrix> relax_on_tree(const SymMatrix& start, const Graph& tree,
                                     std::span<const double> target, int steps, double growth) {
  const int n = start.dim();
  std::vector<detail::Position> free;
  for (int i = 0; i < n; ++i) free.push_back({i, i});
  for (const Edge& e : tree.edges()) free.push_back({e.u - 1, e.v - 1});
  detail::NewtonOptions newton;
  newton.tol_abs = 1e-12;
  const std::vector<double> sorted(target.begin(), target.end());

  std::vector<SymMatrix> out;
  SymMatrix current = start;
  for (int step = 0; step < steps; ++step) {
    Vector x = detail::extract(current, free);
    x.tail(x.size() - n) *= growth;
    const detail::NewtonProblem problem{current, free, sorted, detail::singleton_groups(n)};
    const detail::NewtonResult solved = detail::spectral_newton(problem, x, newton);
    if (!solved.converged) break;
    if (!in_pattern(solved.matrix, tree).ok || !ssp_check(solved.matrix, tree).holds) break;
    current = solved.matrix;
    out.push_back(current);
  }
  return out;
}

}  // namespace

GenericRealization generic_realize(const Graph& g, std::span<const double> values,
                                   std::span<const Vector> test_vectors,
                                   const GenericOptions& options) {
  const int n = g.order();
  if (n == 0) throw InputError("generic_realize: empty graph");
  if (static_cast<int>(values.size()) != n)
    throw InputError("generic_realize: need one eigenvalue per vertex");
  if (!g.is_connected()) throw InputError("generic_realize: graph must be connected");
  for (const Vector& y : test_vectors) {
    if (y.size() != n) throw InputError("generic_realize: test vector dimension mismatch");
    if (!(y.norm() > 0.0)) throw InputError("generic_realize: test vector is zero");
  }

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (int k = 0; k < n; ++k) sorted[k] = values[perm[k]];
  if (group_values(sorted).distinct() != n)
    throw InputError("generic_realize: eigenvalues must be distinct");
  std::vector<Vector> sorted_tests;
  for (const Vector& y : test_vectors) {
    Vector z(n);
    for (int k = 0; k < n; ++k) z(k) = y(perm[k]);
    sorted_tests.push_back(z);
  }

  const Normalisation norm = normalisation_for(sorted);
  std::vector<double> unit_target(n);
  for (int k = 0; k < n; ++k) unit_target[k] = (sorted[k] - norm.centre) / norm.unit;

  auto finish = [&](const Candidate& cand, std::optional<double> t, std::optional<double> eps,
                    const Graph& tree) {
    GenericRealization out;
    out.matrix = cand.matrix;
    out.u = Matrix(n, n);
    for (int k = 0; k < n; ++k) out.u.col(perm[k]) = cand.u.col(k);
    out.certificate = make_certificate("generic", g, cand.matrix, sorted, options.spectral_tol_rel);
    attach_eigenbasis(out.certificate, out.u, std::vector<double>(values.begin(), values.end()),
                      std::vector<Vector>(test_vectors.begin(), test_vectors.end()));
    out.certificate.ssp = ssp_check(cand.matrix, g);
    out.certificate.parameters = {t, eps, options.seed};
    out.certificate.extra["spanning_tree"] = tree;
    out.certificate.extra["margin_floor"] = options.margin_floor;
    return out;
  };

  if (n == 1) {
    Candidate cand;
    cand.matrix = SymMatrix::diagonal(sorted);
    cand.u = Matrix::Ones(1, 1);
    return finish(cand, std::nullopt, std::nullopt, g);
  }

  const Graph tree = spanning_tree(g);
  const ExponentSchedule schedule = exponent_schedule(tree, ScheduleMode::uniform);
  const std::map<double, SymMatrix> solutions =
      continuation(schedule, unit_target, options.t_schedule);

  double best_margin = 0.0;
  auto attempt = [&](const SymMatrix& on_tree, std::optional<double> t,
                     int relax) -> std::optional<GenericRealization> {
    if (!in_pattern(on_tree, tree).ok || !ssp_check(on_tree, tree).holds) return std::nullopt;
    auto accept = [&](const Candidate& cand, std::optional<double> eps)
        -> std::optional<GenericRealization> {
      best_margin = std::max(best_margin, cand.margin);
      if (cand.margin < options.margin_floor) return std::nullopt;
      if (!in_pattern(cand.matrix, g).ok || !ssp_check(cand.matrix, g).holds) return std::nullopt;
      try {
        GenericRealization out = finish(cand, t, eps, tree);
        if (relax > 0) out.certificate.extra["relaxation_steps"] = relax;
        return out;
      } catch (const NumericError&) {
        return std::nullopt;
      }
    };

    if (tree == g) return accept(evaluate(on_tree, norm, sorted_tests), std::nullopt);

    double eps = options.eps0;
    const double eps_min = options.eps0 * std::ldexp(1.0, -options.max_eps_halvings);
    while (eps >= eps_min) {
      EdgeExtendOptions ext;
      ext.eps = eps;
      ext.max_halvings = static_cast<int>(std::floor(std::log2(eps / eps_min)));
      ext.seed = options.seed;
      EdgeExtendResult extended;
      try {
        extended = ssp_edge_extend(on_tree, tree, g, ext);
      } catch (const NumericError&) {
        break;
      } catch (const InputError&) {
        break;
      }
      if (auto done = accept(evaluate(extended.matrix, norm, sorted_tests),
                             extended.eps_used * norm.unit))
        return done;
      eps = extended.eps_used / 2.0;
    }
    return std::nullopt;
  };

  for (auto it = solutions.rbegin(); it != solutions.rend(); ++it)
    if (auto done = attempt(it->second, it->first, 0)) return *std::move(done);

  if (!solutions.empty()) {
    const auto top = std::prev(solutions.end());
    const std::vector<SymMatrix> relaxed =
        relax_on_tree(top->second, tree, unit_target, options.relax_steps, options.relax_growth);
    std::vector<std::pair<double, int>> order;
    for (std::size_t k = 0; k < relaxed.size(); ++k)
      order.emplace_back(evaluate(relaxed[k], norm, sorted_tests).margin, static_cast<int>(k));
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [margin, k] : order)
      if (auto done = attempt(relaxed[k], top->first, k + 1)) return *std::move(done);
  }
  throw NumericError("generic_realize: t/eps schedules exhausted; best margin " +
                         std::to_string(best_margin),
                     best_margin);
}

BlockRealization realize_01_multiplicity(const Graph& g, const MultiplicityMatrix& v,
                                         std::span<const double> eigenvalues,
                                         std::span<const std::vector<Vector>> test_vectors,
                                         const GenericOptions& options) {
  if (!v.is_01()) throw InputError("realize_01_multiplicity: entries must be 0 or 1");
  if (!fits(v, g)) throw InputError("realize_01_multiplicity: v does not fit g");
  if (static_cast<int>(eigenvalues.size()) != v.rows())
    throw InputError("realize_01_multiplicity: need one eigenvalue per row");
  require_strictly_ascending(eigenvalues, "realize_01_multiplicity");
  if (!test_vectors.empty() && static_cast<int>(test_vectors.size()) != v.cols())
    throw InputError("realize_01_multiplicity: need one test-vector set per component");

  BlockRealization out;
  out.components = components(g);
  Matrix m = Matrix::Zero(g.order(), g.order());
  std::vector<double> all;
  for (int c = 0; c < v.cols(); ++c) {
    std::vector<double> values;
    for (int j = 0; j < v.rows(); ++j)
      if (v(j, c) == 1) values.push_back(eigenvalues[j]);
    all.insert(all.end(), values.begin(), values.end());
    const Component& comp = out.components[c];
    std::span<const Vector> tests;
    if (!test_vectors.empty()) tests = test_vectors[c];
    GenericRealization part = generic_realize(comp.graph, values, tests, options);
    for (std::size_t a = 0; a < comp.vertices.size(); ++a)
      for (std::size_t b = 0; b < comp.vertices.size(); ++b)
        m(comp.vertices[a] - 1, comp.vertices[b] - 1) = part.matrix(a, b);
    out.parts.push_back(std::move(part));
  }
  out.matrix = SymMatrix(m);
  out.certificate = make_certificate("multiplicity01", g, out.matrix, all, options.spectral_tol_rel);
  out.certificate.parameters.seed = options.seed;
  out.certificate.extra["multiplicity_matrix"] = v;
  return out;
}

}  // namespace iepg

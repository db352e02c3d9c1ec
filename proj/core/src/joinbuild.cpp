#include "iepg/joinbuild.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>

#include "iepg/errors.hpp"
#include "iepg/json_io.hpp"
#include "random_orthogonal.hpp"

namespace iepg {

JoinPlan join_plan(int rows, double mu, double nu) {
  if (rows < 3) throw InputError("join_plan: needs at least 3 rows");
  if (!(mu < nu)) throw InputError("join_plan: needs mu < nu");
  JoinPlan plan;
  plan.mu = mu;
  plan.nu = nu;
  plan.rows = rows;
  plan.alpha.assign(rows, 0.0);
  plan.beta.assign(rows, 0.0);
  plan.b.assign(rows, 0.0);
  plan.alpha.front() = plan.beta.front() = mu;
  plan.alpha.back() = plan.beta.back() = nu;
  for (int j = 1; j + 1 < rows; ++j) {
    const double a = mu + j * (nu - mu) / (rows - 1);
    plan.alpha[j] = a;
    plan.beta[j] = mu + nu - a;
    plan.b[j] = std::sqrt((a - mu) * (nu - a));
  }
  return plan;
}

namespace {

// Block-diagonal realisation of one side with eigenvectors embedded in
// ambient coordinates; column `k` carries the eigenvalue of row row_of[k].
struct Side {
  Matrix matrix;
  Matrix basis;
  std::vector<int> row_of;
};

Side realise_side(const Graph& g, const MultiplicityMatrix& v, const std::vector<double>& values,
                  std::uint64_t seed) {
  const int n = g.order();
  Side side{Matrix::Zero(n, n), Matrix::Zero(n, n), {}};
  const std::vector<Component> comps = components(g);
  int next = 0;
  for (int c = 0; c < v.cols(); ++c) {
    const Component& comp = comps[c];
    const int size = comp.graph.order();
    std::vector<double> spectrum;
    std::vector<int> rows;
    bool zero_one = true;
    for (int j = 0; j < v.rows(); ++j) {
      zero_one = zero_one && v(j, c) <= 1;
      for (int copy = 0; copy < v(j, c); ++copy) {
        spectrum.push_back(values[j]);
        rows.push_back(j);
      }
    }
    const std::vector<Vector> tests = standard_basis(size);
    Matrix local;
    Matrix u;
    if (zero_one) {
      GenericOptions options;
      options.seed = seed + c;
      GenericRealization r = generic_realize(comp.graph, spectrum, tests, options);
      local = r.matrix.dense();
      u = r.u;
    } else if (is_complete_graph(comp.graph)) {
      CompleteOptions options;
      options.seed = seed + c;
      CompleteRealization r = complete_realize(spectrum, tests, options);
      local = r.matrix.dense();
      u = r.u;
    } else {
      throw UnsupportedError(
          "join_two_eigenvalues: column " + std::to_string(c) +
          " has an entry above 1 on a component that is not complete");
    }
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) side.matrix(comp.vertices[a] - 1, comp.vertices[b] - 1) = local(a, b);
      for (int k = 0; k < size; ++k) side.basis(comp.vertices[a] - 1, next + k) = u(a, k);
    }
    side.row_of.insert(side.row_of.end(), rows.begin(), rows.end());
    next += size;
  }
  return side;
}

Matrix columns_for_row(const Side& side, int row) {
  std::vector<int> cols;
  for (std::size_t k = 0; k < side.row_of.size(); ++k)
    if (side.row_of[k] == row) cols.push_back(static_cast<int>(k));
  Matrix out(side.basis.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = side.basis.col(cols[k]);
  return out;
}

}  // namespace

JoinResult join_two_eigenvalues(const Graph& g, const Graph& h, const MultiplicityMatrix& v,
                                const MultiplicityMatrix& w, double mu, double nu,
                                const JoinOptions& options) {
  if (!(mu < nu)) throw InputError("join_two_eigenvalues: needs mu < nu");
  if (!fits(v, g)) throw InputError("join_two_eigenvalues: v does not fit g");
  if (!fits(w, h)) throw InputError("join_two_eigenvalues: w does not fit h");
  if (v.rows() != w.rows() || v.rows() < 3)
    throw InputError("join_two_eigenvalues: v and w need the same row count r >= 3");
  const CompatibilityReport compat = compatible(v, w);
  if (!compat.compatible) throw InputError("join_two_eigenvalues: v and w are not compatible");

  const JoinPlan plan = join_plan(v.rows(), mu, nu);
  const Side left = realise_side(g, v, plan.alpha, options.seed);
  const Side right = realise_side(h, w, plan.beta, options.seed + 1000);

  const int n = g.order();
  const int m = h.order();
  const Graph joined = join(g, h);
  const double width = nu - mu;

  std::vector<double> target;
  for (int j = 0; j < v.rows(); ++j) {
    const int pairs = (j == 0 || j + 1 == v.rows()) ? 0 : v.row_sum(j);
    const int mus = (j == 0 ? v.row_sum(j) + w.row_sum(j) : 0) + pairs;
    const int nus = (j + 1 == v.rows() ? v.row_sum(j) + w.row_sum(j) : 0) + pairs;
    target.insert(target.end(), mus, mu);
    target.insert(target.end(), nus, nu);
  }

  std::mt19937_64 rng(options.seed);
  double best = 0.0;
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    Matrix b = Matrix::Zero(n, m);
    for (int j = 1; j + 1 < v.rows(); ++j) {
      const Matrix x = columns_for_row(left, j);
      const Matrix y = columns_for_row(right, j);
      const int p = static_cast<int>(x.cols());
      if (p == 0) continue;
      const Matrix r = attempt == 0 ? Matrix::Identity(p, p) : detail::random_orthogonal(p, rng);
      b += plan.b[j] * x * r * y.transpose();
    }
    const double cross = b.size() == 0 ? width : b.cwiseAbs().minCoeff();
    best = std::max(best, cross);
    if (cross < options.cross_floor * width) continue;

    Matrix full(n + m, n + m);
    full << left.matrix, b, b.transpose(), right.matrix;
    const SymMatrix matrix(full);
    const Matrix id = Matrix::Identity(n + m, n + m);
    const double identity = ((full - mu * id) * (full - nu * id)).norm();
    if (identity > options.identity_tol_rel * width * width) continue;
    if (spectrum_grouped(matrix).distinct() != 2) continue;

    JoinResult out;
    out.matrix = matrix;
    out.plan = plan;
    out.identity_residual = identity;
    out.cross_margin = cross;
    out.attempts_used = attempt + 1;
    try {
      out.certificate = make_certificate("join2", joined, matrix, target, options.spectral_tol_rel);
    } catch (const NumericError&) {
      continue;
    }
    out.certificate.parameters.seed = options.seed;
    Json& extra = out.certificate.extra;
    extra["mu"] = mu;
    extra["nu"] = nu;
    extra["v"] = v;
    extra["w"] = w;
    extra["alpha"] = plan.alpha;
    extra["coupling"] = plan.b;
    extra["identity_residual"] = identity;
    extra["cross_margin"] = cross;
    extra["attempt"] = attempt;
    return out;
  }
  throw NumericError("join_two_eigenvalues: cross block stayed near zero after all attempts", best);
}

// ---------------------------------------------------------------------------

PartialJoinResult partial_join_extend(const SymMatrix& m, const Graph& g, const VertexSet& v1,
                                      const VertexSet& v2, const Graph& h,
                                      std::span<const double> sigma_extra,
                                      const PartialJoinOptions& options) {
  const int n = g.order();
  if (m.dim() != n) throw InputError("partial_join_extend: matrix/graph dimension mismatch");
  if (v1 != make_vertex_set(v1) || v2 != make_vertex_set(v2))
    throw InputError("partial_join_extend: vertex sets must be sorted and duplicate-free");
  VertexSet all = v1;
  all.insert(all.end(), v2.begin(), v2.end());
  if (make_vertex_set(all).size() != all.size() || static_cast<int>(all.size()) != n ||
      (!all.empty() && (*std::min_element(all.begin(), all.end()) < 1 ||
                        *std::max_element(all.begin(), all.end()) > n)))
    throw InputError("partial_join_extend: v1 and v2 must partition the vertex set");
  if (v2.empty()) throw InputError("partial_join_extend: v2 must be nonempty");
  if (!h.is_connected()) throw InputError("partial_join_extend: h must be connected");
  const int t = static_cast<int>(sigma_extra.size());
  if (h.order() != static_cast<int>(v2.size()) + t)
    throw InputError("partial_join_extend: |sigma_extra| must equal |h| - |v2|");
  if (!in_pattern(m, g).ok) throw InputError("partial_join_extend: m is not in S(g)");

  const VertexSet x = vertex_boundary(g, v2);
  if (!std::includes(v1.begin(), v1.end(), x.begin(), x.end()))
    throw InputError("partial_join_extend: boundary of v2 is not contained in v1");

  const int n1 = static_cast<int>(v1.size());
  const int k = static_cast<int>(v2.size());
  const int nh = h.order();
  const Matrix a = v1.empty() ? Matrix(0, 0) : principal_submatrix(m, v1).dense();
  const SymMatrix c = principal_submatrix(m, v2);
  Matrix b0 = v1.empty() ? Matrix(0, k) : block(m, v1, v2);
  for (int r = 0; r < n1; ++r)
    if (!std::binary_search(x.begin(), x.end(), v1[r])) b0.row(r).setZero();

  const EigenDecomposition eig_c = eigen_decompose(c);
  const Matrix& q = eig_c.vectors;
  std::vector<double> values = to_std(eig_c.values);
  values.insert(values.end(), sigma_extra.begin(), sigma_extra.end());

  std::vector<Vector> tests;
  for (int r = 0; r < n1; ++r) {
    if (!std::binary_search(x.begin(), x.end(), v1[r])) continue;
    Vector y = Vector::Zero(nh);
    y.head(k) = q.transpose() * b0.row(r).transpose();
    tests.push_back(y);
  }

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  SymMatrix c_new;
  Matrix u;
  Json route;
  if (group_values(sorted).distinct() == nh) {
    GenericOptions generic;
    generic.seed = options.seed;
    generic.margin_floor = options.margin_floor;
    GenericRealization r = generic_realize(h, values, tests, generic);
    c_new = r.matrix;
    u = r.u;
    route = "generic";
  } else if (is_cycle_graph(h)) {
    CycleOptions cycle;
    cycle.seed = options.seed;
    const CycleRealization r = cycle_realize(sorted, cycle);
    const MixedBasis basis =
        generic_eigenbasis(r.matrix, values, tests, options.margin_floor, options.seed,
                           options.mix_attempts);
    c_new = r.matrix;
    u = basis.u;
    route = "cycle";
  } else {
    throw UnsupportedError(
        "partial_join_extend: repeated values in sigma(m[v2]) ∪ sigma_extra are only handled "
        "when h is a cycle");
  }

  Matrix padded = Matrix::Zero(n1, nh);
  padded.leftCols(k) = b0 * q;
  const Matrix z = padded * u.transpose();

  Matrix full = Matrix::Zero(n1 + nh, n1 + nh);
  full.topLeftCorner(n1, n1) = a;
  full.topRightCorner(n1, nh) = z;
  full.bottomLeftCorner(nh, n1) = z.transpose();
  full.bottomRightCorner(nh, nh) = c_new.dense();
  const SymMatrix matrix(full);

  VertexSet x_local;
  for (int r = 0; r < n1; ++r)
    if (std::binary_search(x.begin(), x.end(), v1[r])) x_local.push_back(r + 1);
  VertexSet h_all;
  for (int i = 1; i <= nh; ++i) h_all.push_back(i);
  const Graph g1 = v1.empty() ? Graph(0) : g.induced(v1);
  const PartialJoin pj = partial_join(g1, x_local, h, h_all);

  std::vector<double> target = to_std(eigenvalues(m));
  target.insert(target.end(), sigma_extra.begin(), sigma_extra.end());

  PartialJoinResult out;
  out.matrix = matrix;
  out.graph = pj.graph;
  out.x = x;
  out.sigma_c = to_std(eig_c.values);
  out.sigma_extra.assign(sigma_extra.begin(), sigma_extra.end());
  out.cross_margin = nowhere_zero_margin(u, tests);
  if (tests.empty()) out.cross_margin = 0.0;
  out.certificate = make_certificate("partial_join", pj.graph, matrix, target,
                                     options.spectral_tol_rel);
  out.certificate.parameters.seed = options.seed;
  Json& extra = out.certificate.extra;
  extra["v1"] = v1;
  extra["v2"] = v2;
  extra["boundary"] = x;
  extra["sigma_extra"] = out.sigma_extra;
  extra["h_offset"] = pj.h_offset;
  extra["route"] = route;
  extra["cross_margin"] = out.cross_margin;
  return out;
}

std::vector<double> gap_midpoints(std::span<const double> sorted, int count) {
  if (count < 0) throw InputError("gap_midpoints: count must be non-negative");
  if (sorted.empty()) throw InputError("gap_midpoints: empty list");
  std::vector<double> points(sorted.begin(), sorted.end());
  points.insert(points.begin(), sorted.front() - 1.0);
  points.push_back(sorted.back() + 1.0);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<int> order(points.size() - 1);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
      return points[p + 1] - points[p] > points[q + 1] - points[q];
    });
    const int take = std::min<int>(count - static_cast<int>(out.size()), static_cast<int>(order.size()));
    std::vector<double> fresh;
    for (int k = 0; k < take; ++k)
      fresh.push_back((points[order[k]] + points[order[k] + 1]) / 2.0);
    out.insert(out.end(), fresh.begin(), fresh.end());
    points.insert(points.end(), fresh.begin(), fresh.end());
    std::sort(points.begin(), points.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartialJoinResult partial_join_distinct(const SymMatrix& m, const Graph& g, const VertexSet& v1,
                                        const VertexSet& v2, const Graph& h, int t,
                                        const PartialJoinOptions& options) {
  if (v2.empty()) throw InputError("partial_join_distinct: v2 must be nonempty");
  const std::vector<double> sigma = to_std(eigenvalues(principal_submatrix(m, v2)));
  if (group_values(sigma).distinct() != static_cast<int>(sigma.size()))
    throw InputError("partial_join_distinct: m[v2] has a repeated eigenvalue");
  const std::vector<double> extra = gap_midpoints(sigma, t);
  return partial_join_extend(m, g, v1, v2, h, extra, options);
}

int q_join_upper_bound(const Graph& g, const Graph& h) {
  if (!g.is_connected() || !h.is_connected())
    throw InputError("q_join_upper_bound: both graphs must be connected");
  return std::max(2, std::abs(g.order() - h.order()));
}

int q_join_upper_bound(int q_g_join_path, int path_order, int h_order) {
  if (q_g_join_path < 1 || path_order < 1 || h_order < path_order)
    throw InputError("q_join_upper_bound: needs q >= 1 and |H| >= n >= 1");
  return q_g_join_path + h_order - path_order;
}

}  // namespace iepg

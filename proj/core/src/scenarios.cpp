#include "iepg/scenarios.hpp"

#include <algorithm>
#include <random>

#include "iepg/errors.hpp"
#include "iepg/json_io.hpp"
#include "iepg/multiplicity.hpp"

namespace iepg {

std::vector<double> seeded_lambdas(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  std::vector<double> out;
  double value = start(rng);
  for (int k = 0; k < count; ++k) {
    out.push_back(value);
    value += gap(rng);
  }
  return out;
}

namespace {

std::vector<double> base_lambdas(int count, const ScenarioOptions& options) {
  if (options.lambdas.empty()) return seeded_lambdas(count, options.seed);
  if (static_cast<int>(options.lambdas.size()) != count)
    throw InputError("scenario: expected " + std::to_string(count) + " base eigenvalues");
  std::vector<double> out = options.lambdas;
  std::sort(out.begin(), out.end());
  if (group_values(out).distinct() != count)
    throw InputError("scenario: base eigenvalues must be distinct");
  return out;
}

VertexSet range(int first, int last) {
  VertexSet out;
  for (int v = first; v <= last; ++v) out.push_back(v);
  return out;
}

ScenarioResult finish(PartialJoinResult&& pj, const char* name) {
  ScenarioResult out;
  out.certificate = std::move(pj.certificate);
  out.spectrum = spectrum_grouped(out.certificate.matrix);
  out.multiplicities = out.spectrum.multiplicities();
  out.certificate.extra["scenario"] = name;
  out.report["multiplicities"] = out.multiplicities;
  return out;
}

// Cycle matrix with every base value doubled.
CycleRealization doubled_cycle(const std::vector<double>& lambdas, std::uint64_t seed) {
  std::vector<double> doubled;
  for (double l : lambdas) doubled.insert(doubled.end(), 2, l);
  CycleOptions options;
  options.seed = seed;
  return cycle_realize(doubled, options);
}

}  // namespace

bool wheel_parity_ok(const Spectrum& spectrum) {
  const auto& groups = spectrum.groups;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    if (groups[a].multiplicity != 3) continue;
    int between = 0;
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      if (groups[b].multiplicity == 3 && between % 2 == 0) return false;
      between += groups[b].multiplicity;
    }
  }
  return true;
}

ScenarioResult wheel_scenario(int m, const ScenarioOptions& options) {
  if (m < 2) throw InputError("wheel scenario: needs m >= 2");
  const std::vector<double> lambdas = base_lambdas(m, options);
  const CycleRealization cycle = doubled_cycle(lambdas, options.seed);

  const Graph g = cycle_graph(2 * m);
  const VertexSet v1{2 * m};
  const VertexSet v2 = range(1, 2 * m - 1);
  const std::vector<double> sigma = to_std(eigenvalues(principal_submatrix(cycle.matrix, v2)));
  PartialJoinOptions pj_options;
  pj_options.seed = options.seed;
  pj_options.spectral_tol_rel = options.spectral_tol_rel;
  PartialJoinResult pj =
      partial_join_extend(cycle.matrix, g, v1, v2, cycle_graph(4 * m - 2), sigma, pj_options);
  const bool is_wheel = pj.graph == join(Graph(1), cycle_graph(4 * m - 2));

  ScenarioResult out = finish(std::move(pj), "wheel");
  std::vector<int> expected;
  for (int k = 0; k < m; ++k) {
    if (k > 0) expected.push_back(1);
    expected.push_back(3);
  }
  out.report["expected_multiplicities"] = expected;
  out.report["multiplicities_ok"] = out.multiplicities == expected;
  out.report["parity_ok"] = wheel_parity_ok(out.spectrum);
  out.report["graph_is_wheel"] = is_wheel;
  out.report["lambdas"] = lambdas;
  out.certificate.extra["m"] = m;
  return out;
}

Graph k2join_partner(int m, Family family) {
  const int n = 3 * m - 2;
  switch (family) {
    case Family::path: return path_graph(n);
    case Family::cycle: return cycle_graph(n);
    case Family::complete: return complete_graph(n);
    case Family::star: {
      const int leaves[] = {n - 1};
      return make_family(Family::star, leaves);
    }
    default:
      throw InputError("k2join scenario: family must be path, cycle, complete or star");
  }
}

ScenarioResult k2join_scenario(int m, const Graph& h, const ScenarioOptions& options) {
  if (m < 2) throw InputError("k2join scenario: needs m >= 2");
  if (h.order() != 3 * m - 2) throw InputError("k2join scenario: h must have 3m - 2 vertices");
  const std::vector<double> lambdas = base_lambdas(m, options);
  const CycleRealization cycle = doubled_cycle(lambdas, options.seed);

  const Graph g = cycle_graph(2 * m);
  PartialJoinOptions pj_options;
  pj_options.seed = options.seed;
  pj_options.spectral_tol_rel = options.spectral_tol_rel;
  PartialJoinResult pj = partial_join_extend(cycle.matrix, g, range(2 * m - 1, 2 * m),
                                             range(1, 2 * m - 2), h, lambdas, pj_options);
  const bool is_join = pj.graph == join(complete_graph(2), h);

  ScenarioResult out = finish(std::move(pj), "k2join");
  out.report["expected_multiplicities"] = std::vector<int>(m, 3);
  out.report["multiplicities_ok"] = out.multiplicities == std::vector<int>(m, 3);
  out.report["graph_is_join"] = is_join;
  out.report["lambdas"] = lambdas;
  out.certificate.extra["m"] = m;
  return out;
}

namespace {

Graph union_of_paths(std::span<const int> orders) {
  if (orders.empty()) throw InputError("scenario: need at least one component");
  Graph out(0);
  for (int n : orders) {
    if (n < 1) throw InputError("scenario: component orders must be positive");
    out = disjoint_union(out, path_graph(n));
  }
  return out;
}

}  // namespace

ScenarioResult diff2_scenario(std::span<const int> orders_g, std::span<const int> orders_h,
                              double mu, double nu, const ScenarioOptions& options) {
  const Graph g = union_of_paths(orders_g);
  const Graph h = union_of_paths(orders_h);
  const Diff2Pair pair = construct_diff2(orders_g, orders_h);
  JoinOptions join_options;
  join_options.seed = options.seed;
  join_options.spectral_tol_rel = options.spectral_tol_rel;
  JoinResult joined = join_two_eigenvalues(g, h, pair.v, pair.w, mu, nu, join_options);

  ScenarioResult out;
  out.certificate = std::move(joined.certificate);
  out.spectrum = spectrum_grouped(out.certificate.matrix);
  out.multiplicities = out.spectrum.multiplicities();
  out.certificate.extra["scenario"] = "diff2";
  out.report["multiplicities"] = out.multiplicities;
  out.report["q"] = out.spectrum.distinct();
  out.report["identity_residual"] = joined.identity_residual;
  out.report["cross_margin"] = joined.cross_margin;
  return out;
}

ScenarioResult star_scenario(int k, const Graph& h, const ScenarioOptions& options) {
  if (k < 1) throw InputError("star scenario: needs k >= 1");
  if (!h.is_connected()) throw InputError("star scenario: h must be connected");
  const int arm = h.order();
  std::vector<int> arms(k, 1);
  arms.push_back(arm);
  const Graph g = make_family(Family::generalized_star, arms);
  const int n = g.order();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::uniform_real_distribution<double> diag(-2.0, 2.0);
  Matrix m = Matrix::Zero(n, n);
  m(0, 0) = diag(rng);
  const double leaf = diag(rng);
  for (int v = 2; v <= k + 1; ++v) m(v - 1, v - 1) = leaf;
  for (int v = k + 2; v <= n; ++v) m(v - 1, v - 1) = diag(rng);
  for (const Edge& e : g.edges()) {
    const double w = weight(rng);
    m(e.u - 1, e.v - 1) = m(e.v - 1, e.u - 1) = w;
  }
  const SymMatrix matrix(m);

  PartialJoinOptions pj_options;
  pj_options.seed = options.seed;
  pj_options.spectral_tol_rel = options.spectral_tol_rel;
  PartialJoinResult pj =
      partial_join_extend(matrix, g, range(1, k + 1), range(k + 2, n), h, {}, pj_options);
  const bool graph_ok =
      pj.graph == join(Graph(1), disjoint_union(empty_graph(k), h));

  ScenarioResult out = finish(std::move(pj), "star");
  std::vector<int> before = spectrum_grouped(matrix).multiplicities();
  std::vector<int> after = out.multiplicities;
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  out.report["source_multiplicities"] = spectrum_grouped(matrix).multiplicities();
  out.report["multiplicity_list_preserved"] = before == after;
  out.report["graph_ok"] = graph_ok;
  out.certificate.extra["k"] = k;
  return out;
}

}  // namespace iepg

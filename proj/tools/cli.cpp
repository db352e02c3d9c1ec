#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "iepg/certificate.hpp"
#include "iepg/errors.hpp"
#include "iepg/joinbuild.hpp"
#include "iepg/json_io.hpp"
#include "iepg/multiplicity.hpp"
#include "iepg/realize.hpp"
#include "iepg/scenarios.hpp"
#include "iepg/ssp.hpp"

namespace iepg::cli {

namespace {

const std::vector<std::pair<std::string, Command>>& table() {
  static const std::vector<std::pair<std::string, Command>> t{
      {"realize", Command::realize},   {"ssp", Command::ssp},
      {"compat", Command::compat},     {"search01", Command::search01},
      {"join2", Command::join2},       {"partialjoin", Command::partialjoin},
      {"cycles", Command::cycles},     {"scenario", Command::scenario},
      {"verify", Command::verify}};
  return t;
}

double spectral_rel(const RunConfig& config) { return config.spectral_tol.value_or(1e-8); }

template <class T>
T field_or(const Json& j, const char* field, T fallback) {
  return j.contains(field) ? parse_field<T>(j, field) : fallback;
}

// A graph is either {"n", "edges"} or {"family", "params"}.
Graph graph_field(const Json& j, const char* field) {
  const Json& spec = require(j, field);
  if (spec.is_object() && spec.contains("family")) {
    const Family family = parse_family(parse_field<std::string>(spec, "family"));
    return make_family(family, parse_field<std::vector<int>>(spec, "params"));
  }
  return parse_field<Graph>(j, field);
}

std::vector<double> sorted_values(const Json& j, const char* field) {
  std::vector<double> v = parse_field<std::vector<double>>(j, field);
  for (double x : v)
    if (!std::isfinite(x)) throw InputError(std::string("field '") + field + "': non-finite value");
  return v;
}

std::vector<Vector> test_vectors_field(const Json& j, int n) {
  if (!j.contains("test_vectors")) return standard_basis(n);
  std::vector<Vector> out;
  for (const auto& row : parse_field<std::vector<std::vector<double>>>(j, "test_vectors")) {
    if (static_cast<int>(row.size()) != n)
      throw InputError("field 'test_vectors': each vector needs " + std::to_string(n) + " entries");
    out.push_back(to_eigen(row));
  }
  return out;
}

VertexSet vertex_set_field(const Json& j, const char* field) {
  return make_vertex_set(parse_field<std::vector<int>>(j, field));
}

Json certified(const Certificate& cert) {
  Json out;
  out["certificate"] = cert;
  out["verify"] = verify_certificate(cert);
  return out;
}

RunResult realize(const RunConfig& config, const Json& in) {
  const std::string method = field_or<std::string>(in, "method", "generic");
  RunResult out;
  if (method == "generic") {
    const Graph g = graph_field(in, "graph");
    const std::vector<double> values = sorted_values(in, "eigenvalues");
    GenericOptions options;
    options.seed = config.seed;
    options.spectral_tol_rel = spectral_rel(config);
    options.margin_floor = field_or<double>(in, "margin_floor", options.margin_floor);
    const GenericRealization r =
        generic_realize(g, values, test_vectors_field(in, g.order()), options);
    out.artifact = certified(r.certificate);
  } else if (method == "jacobi") {
    std::vector<double> values = sorted_values(in, "eigenvalues");
    const SymMatrix a = jacobi_from_spectrum(values);
    out.artifact = certified(make_certificate("jacobi", path_graph(a.dim()), a, values,
                                              spectral_rel(config)));
  } else if (method == "homotopy") {
    const Graph tree = graph_field(in, "graph");
    const std::string mode = field_or<std::string>(in, "schedule", "uniform");
    if (mode != "uniform" && mode != "injective")
      throw InputError("field 'schedule': expected uniform or injective");
    const ExponentSchedule s = exponent_schedule(
        tree, mode == "uniform" ? ScheduleMode::uniform : ScheduleMode::injective);
    const std::vector<double> values = sorted_values(in, "eigenvalues");
    const HomotopySolution sol = tree_homotopy_solve(s, values, parse_field<double>(in, "t"));
    std::vector<double> target = values;
    std::sort(target.begin(), target.end());
    Certificate cert = make_certificate("homotopy", tree, sol.matrix, target, spectral_rel(config));
    cert.parameters.t = sol.t;
    cert.extra["iterations"] = sol.iterations;
    cert.extra["f"] = s.f;
    out.artifact = certified(cert);
  } else if (method == "decay") {
    const Graph tree = graph_field(in, "graph");
    const ExponentSchedule s = exponent_schedule(tree, ScheduleMode::injective);
    const std::vector<double> values = sorted_values(in, "eigenvalues");
    const std::vector<double> ts =
        field_or<std::vector<double>>(in, "t_values", default_decay_t_values());
    const DecayTable table = decay_ratio_table(s, values, ts);
    Json rows = Json::array();
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      const DecayRow& row = table.rows[k];
      rows.push_back({{"t", row.t},
                      {"residual", row.residual},
                      {"max_off_diagonal", row.max_off_diagonal},
                      {"ratio", matrix_to_json(row.ratio)}});
    }
    out.artifact = {{"schedule", {{"n0", s.n0}, {"g", s.g}, {"f", s.f}, {"s", s.s}}},
                    {"c", matrix_to_json(table.c)},
                    {"rows", rows}};
    out.csv = table.to_csv();
  } else if (method == "multiplicity01") {
    const Graph g = graph_field(in, "graph");
    const MultiplicityMatrix v = parse_field<MultiplicityMatrix>(in, "multiplicity");
    GenericOptions options;
    options.seed = config.seed;
    options.spectral_tol_rel = spectral_rel(config);
    const BlockRealization r =
        realize_01_multiplicity(g, v, sorted_values(in, "eigenvalues"), {}, options);
    out.artifact = certified(r.certificate);
  } else if (method == "complete") {
    const std::vector<double> values = sorted_values(in, "eigenvalues");
    CompleteOptions options;
    options.seed = config.seed;
    options.spectral_tol_rel = spectral_rel(config);
    const CompleteRealization r = complete_realize(
        values, test_vectors_field(in, static_cast<int>(values.size())), options);
    out.artifact = certified(r.certificate);
  } else if (method == "eigenbasis") {
    EigenbasisOptions options;
    options.seed = config.seed;
    options.zero_tol = config.zero_tol.value_or(0.0);
    options.gap_tol = config.gap_tol.value_or(0.0);
    const EigenbasisResult r = nowhere_zero_eigenbasis(parse_field<SymMatrix>(in, "matrix"), options);
    out.artifact = {{"found", r.found},
                    {"mixes", r.mixes},
                    {"min_abs_entry", r.min_abs_entry},
                    {"values", to_std(r.values)},
                    {"basis", matrix_to_json(r.basis)}};
    if (!r.found) {
      out.artifact["stuck"] = {{"row", r.stuck_row + 1}, {"column", r.stuck_column + 1}};
      out.exit_code = Exit::numeric;
    }
  } else {
    throw InputError("field 'method': unknown method '" + method + "'");
  }
  return out;
}

RunResult ssp(const RunConfig& config, const Json& in) {
  const SymMatrix a = parse_field<SymMatrix>(in, "matrix");
  RunResult out;
  if (in.contains("extend_to")) {
    const Graph sub = graph_field(in, "graph");
    const Graph super = graph_field(in, "extend_to");
    EdgeExtendOptions options;
    options.eps = field_or<double>(in, "eps", options.eps);
    options.random_signs = field_or<bool>(in, "random_signs", false);
    options.seed = config.seed;
    const EdgeExtendResult r = ssp_edge_extend(a, sub, super, options);
    Certificate cert = make_certificate("ssp_extend", super, r.matrix,
                                        to_std(eigenvalues(a)), spectral_rel(config));
    cert.ssp = ssp_check(r.matrix, super);
    cert.parameters.eps = r.eps_used;
    cert.parameters.seed = config.seed;
    cert.extra["distance"] = r.distance;
    cert.extra["halvings"] = r.halvings;
    out.artifact = certified(cert);
    return out;
  }
  SspReport report;
  if (in.contains("graph")) {
    report = ssp_check(a, graph_field(in, "graph"));
  } else {
    SspOptions options;
    options.zero_tol = config.zero_tol.value_or(0.0);
    report = ssp_check(a, options);
  }
  out.artifact = report;
  out.exit_code = report.holds ? Exit::ok : Exit::negative;
  return out;
}

RunResult compat(const RunConfig&, const Json& in) {
  const MultiplicityMatrix v = parse_field<MultiplicityMatrix>(in, "v");
  const MultiplicityMatrix w = parse_field<MultiplicityMatrix>(in, "w");
  const CompatibilityReport report = compatible(v, w);
  RunResult out;
  out.artifact = report;
  bool ok = report.compatible;
  if (in.contains("g")) {
    const Graph g = graph_field(in, "g");
    out.artifact["fits_g"] = fits(v, g);
    ok = ok && out.artifact["fits_g"].get<bool>();
  }
  if (in.contains("h")) {
    const Graph h = graph_field(in, "h");
    out.artifact["fits_h"] = fits(w, h);
    ok = ok && out.artifact["fits_h"].get<bool>();
  }
  out.exit_code = ok ? Exit::ok : Exit::negative;
  return out;
}

RunResult search01(const RunConfig&, const Json& in) {
  const auto g = parse_field<std::vector<int>>(in, "orders_g");
  const auto h = parse_field<std::vector<int>>(in, "orders_h");
  SearchOptions options;
  options.r_max = field_or<int>(in, "r_max", 0);
  const SearchResult r = search_compatible_01(g, h, options);
  RunResult out;
  out.artifact = {{"found", r.found},
                  {"exhaustive", r.exhaustive},
                  {"rows_searched", r.rows_searched},
                  {"nodes", r.nodes}};
  if (r.found) {
    out.artifact["v"] = r.v;
    out.artifact["w"] = r.w;
    out.exit_code = Exit::ok;
  } else {
    out.exit_code = r.exhaustive ? Exit::negative : Exit::numeric;
  }
  return out;
}

std::vector<int> component_orders(const Graph& g, std::vector<bool>& complete) {
  std::vector<int> orders;
  for (const Component& c : components(g)) {
    orders.push_back(c.graph.order());
    complete.push_back(is_complete_graph(c.graph));
  }
  return orders;
}

RunResult join2(const RunConfig& config, const Json& in) {
  const Graph g = graph_field(in, "g");
  const Graph h = graph_field(in, "h");
  const double mu = field_or<double>(in, "mu", 0.0);
  const double nu = field_or<double>(in, "nu", 2.0);
  MultiplicityMatrix v, w;
  if (in.contains("v") || in.contains("w")) {
    v = parse_field<MultiplicityMatrix>(in, "v");
    w = parse_field<MultiplicityMatrix>(in, "w");
  } else {
    std::vector<bool> complete_g, complete_h;
    const std::vector<int> og = component_orders(g, complete_g);
    const std::vector<int> oh = component_orders(h, complete_h);
    std::unique_ptr<bool[]> mask(new bool[og.size()]);
    for (std::size_t i = 0; i < og.size(); ++i) mask[i] = complete_g[i] && complete_h[i];
    const Diff2Pair pair = construct_diff2(og, oh, std::span<const bool>(mask.get(), og.size()));
    v = pair.v;
    w = pair.w;
  }
  JoinOptions options;
  options.seed = config.seed;
  options.spectral_tol_rel = spectral_rel(config);
  const JoinResult r = join_two_eigenvalues(g, h, v, w, mu, nu, options);
  RunResult out;
  out.artifact = certified(r.certificate);
  out.artifact["q"] = spectrum_grouped(r.matrix, config.gap_tol.value_or(0.0)).distinct();
  return out;
}

RunResult partialjoin(const RunConfig& config, const Json& in) {
  const SymMatrix m = parse_field<SymMatrix>(in, "matrix");
  const Graph g = graph_field(in, "graph");
  const VertexSet v1 = vertex_set_field(in, "v1");
  const VertexSet v2 = vertex_set_field(in, "v2");
  const Graph h = graph_field(in, "h");
  PartialJoinOptions options;
  options.seed = config.seed;
  options.spectral_tol_rel = spectral_rel(config);
  const PartialJoinResult r =
      in.contains("sigma_extra")
          ? partial_join_extend(m, g, v1, v2, h, sorted_values(in, "sigma_extra"), options)
          : partial_join_distinct(m, g, v1, v2, h, field_or<int>(in, "t", h.order() - static_cast<int>(v2.size())),
                                  options);
  RunResult out;
  out.artifact = certified(r.certificate);
  return out;
}

RunResult cycles(const RunConfig& config, const Json& in) {
  std::vector<double> values = sorted_values(in, "eigenvalues");
  std::sort(values.begin(), values.end());
  const double tol = config.gap_tol.value_or(default_gap_tol(values));
  RunResult out;
  const bool accepted = cycle_spectrum_check(values, tol);
  out.artifact["accepted"] = accepted;
  if (!accepted) {
    out.exit_code = Exit::negative;
    return out;
  }
  if (!field_or<bool>(in, "realize", true)) return out;
  CycleOptions options;
  options.seed = config.seed;
  options.spectral_tol_rel = spectral_rel(config);
  const CycleRealization r = cycle_realize(values, options);
  out.artifact.update(certified(r.certificate));
  out.artifact["restarts_used"] = r.restarts_used;
  if (field_or<bool>(in, "eigenbasis", false)) {
    EigenbasisOptions eb;
    eb.seed = config.seed;
    const EigenbasisResult basis = nowhere_zero_eigenbasis(r.matrix, eb);
    out.artifact["eigenbasis"] = {{"found", basis.found},
                                  {"min_abs_entry", basis.min_abs_entry},
                                  {"basis", matrix_to_json(basis.basis)}};
  }
  return out;
}

RunResult scenario(const RunConfig& config, const Json& in) {
  const std::string name =
      !config.scenario.empty() ? config.scenario : parse_field<std::string>(in, "name");
  ScenarioOptions options;
  options.seed = config.seed;
  options.spectral_tol_rel = spectral_rel(config);
  options.lambdas = field_or<std::vector<double>>(in, "lambdas", {});
  ScenarioResult r;
  if (name == "wheel") {
    r = wheel_scenario(field_or<int>(in, "m", 2), options);
  } else if (name == "k2join") {
    const int m = field_or<int>(in, "m", 2);
    const Graph h = in.contains("h") ? graph_field(in, "h")
                                     : k2join_partner(m, parse_family(field_or<std::string>(
                                                             in, "family", "path")));
    r = k2join_scenario(m, h, options);
  } else if (name == "diff2") {
    r = diff2_scenario(field_or<std::vector<int>>(in, "orders_g", {3, 5}),
                       field_or<std::vector<int>>(in, "orders_h", {4, 4}),
                       field_or<double>(in, "mu", 0.0), field_or<double>(in, "nu", 2.0), options);
  } else if (name == "star") {
    const Graph h = in.contains("h") ? graph_field(in, "h")
                                     : make_family(Family::generalized_star,
                                                   field_or<std::vector<int>>(in, "arms", {2, 1}));
    r = star_scenario(field_or<int>(in, "k", 2), h, options);
  } else {
    throw InputError("unknown scenario '" + name + "' (wheel, k2join, diff2, star)");
  }
  RunResult out;
  out.artifact = certified(r.certificate);
  out.artifact["scenario"] = name;
  out.artifact["report"] = r.report;
  out.artifact["multiplicities"] = r.multiplicities;
  return out;
}

RunResult verify(const RunConfig& config, const Json& in) {
  const Json& cert = in.contains("certificate") ? in["certificate"] : in;
  VerifyOptions options;
  options.zero_tol = config.zero_tol.value_or(0.0);
  options.gap_tol = config.gap_tol.value_or(0.0);
  if (config.spectral_tol) {
    const std::vector<double> target = parse_field<std::vector<double>>(cert, "target");
    options.spectral_tol = *config.spectral_tol * residual_scale(target);
  }
  const VerifyReport report = verify_certificate(cert, options);
  RunResult out;
  out.artifact = report;
  out.exit_code = report.ok ? Exit::ok : Exit::negative;
  return out;
}

Json error_artifact(const char* kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [n, c] : table())
    if (n == name) return c;
  throw InputError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  for (const auto& [n, cmd] : table())
    if (cmd == c) return n;
  return "unknown";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : table()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

RunResult run(Command command, const RunConfig& config, const Json& input) {
  try {
    for (const auto& tol : {config.zero_tol, config.gap_tol, config.spectral_tol})
      if (tol && !(*tol > 0.0)) throw InputError("tolerances must be positive");
    if (!input.is_object()) throw InputError("input must be a JSON object");
    switch (command) {
      case Command::realize: return realize(config, input);
      case Command::ssp: return ssp(config, input);
      case Command::compat: return compat(config, input);
      case Command::search01: return search01(config, input);
      case Command::join2: return join2(config, input);
      case Command::partialjoin: return partialjoin(config, input);
      case Command::cycles: return cycles(config, input);
      case Command::scenario: return scenario(config, input);
      case Command::verify: return verify(config, input);
    }
    throw InputError("unknown command");
  } catch (const InputError& e) {
    return {Exit::input, error_artifact("input", e.what()), std::nullopt};
  } catch (const nlohmann::json::exception& e) {
    return {Exit::input, error_artifact("input", e.what()), std::nullopt};
  } catch (const NumericError& e) {
    RunResult out{Exit::numeric, error_artifact("numeric", e.what()), std::nullopt};
    const double best = e.best_residual();
    out.artifact["error"]["best"] = best >= 0.0 && std::isfinite(best) ? Json(best) : Json(nullptr);
    return out;
  } catch (const UnsupportedError& e) {
    return {Exit::numeric, error_artifact("unsupported", e.what()), std::nullopt};
  }
}

}  // namespace iepg::cli

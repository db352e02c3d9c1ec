#include "iepg/json_io.hpp"

#include <cmath>
#include <limits>

#include "iepg/errors.hpp"

namespace iepg {

const Json& require(const Json& j, const char* field) {
  if (!j.is_object()) throw InputError(std::string("expected an object containing '") + field + "'");
  const auto it = j.find(field);
  if (it == j.end()) throw InputError(std::string("missing field '") + field + "'");
  return *it;
}

namespace {

// JSON has no infinity; unbounded values are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

void to_json(Json& j, const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j = Json{{"n", g.order()}, {"edges", edges}};
}

void from_json(const Json& j, Graph& g) {
  const int n = parse_field<int>(j, "n");
  if (n < 0) throw InputError("field 'n': must be non-negative");
  Graph out(n);
  const Json& edges = require(j, "edges");
  if (!edges.is_array()) throw InputError("field 'edges': expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Json& e = edges[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError("field 'edges[" + std::to_string(k) + "]': expected [i, j]");
    try {
      out.add_edge(e[0].get<int>(), e[1].get<int>());
    } catch (const InputError& err) {
      throw InputError("field 'edges[" + std::to_string(k) + "]': " + err.what());
    }
  }
  g = std::move(out);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string("field '") + field + "': expected row lists");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError(std::string("field '") + field + "': rows must have equal length");
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!row[k].is_number())
        throw InputError(std::string("field '") + field + "': entries must be numbers");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

void to_json(Json& j, const SymMatrix& m) {
  j = Json{{"n", m.dim()}, {"rows", matrix_to_json(m.dense())}};
}

void from_json(const Json& j, SymMatrix& m) {
  const int n = parse_field<int>(j, "n");
  const Matrix dense = matrix_from_json(require(j, "rows"), "rows");
  if (dense.rows() != n || dense.cols() != n)
    throw InputError("field 'rows': expected an n x n matrix");
  if (n > 0 && (dense - dense.transpose()).cwiseAbs().maxCoeff() >
                   1e-12 * (1.0 + dense.cwiseAbs().maxCoeff()))
    throw InputError("field 'rows': matrix is not symmetric");
  m = SymMatrix(dense);
}

void to_json(Json& j, const Spectrum& s) {
  j = Json::array();
  for (const SpectralGroup& g : s.groups) j.push_back({{"value", g.value}, {"mult", g.multiplicity}});
}

void to_json(Json& j, const MultiplicityMatrix& m) { j = m.to_rows(); }

void from_json(const Json& j, MultiplicityMatrix& m) {
  if (!j.is_array()) throw InputError("multiplicity matrix: expected row lists");
  std::vector<std::vector<int>> rows;
  for (const Json& row : j) {
    if (!row.is_array()) throw InputError("multiplicity matrix: expected row lists");
    std::vector<int> r;
    for (const Json& e : row) {
      if (!e.is_number_integer()) throw InputError("multiplicity matrix: entries must be integers");
      r.push_back(e.get<int>());
    }
    rows.push_back(std::move(r));
  }
  m = MultiplicityMatrix::from_rows(rows);
}

void to_json(Json& j, const SspReport& r) {
  j = Json{{"holds", r.holds},
           {"nullity", r.nullity},
           {"smallest_singular_value", number(r.smallest_singular_value)},
           {"threshold", r.threshold},
           {"free_entries", r.free_entries}};
  if (r.witness) j["witness"] = *r.witness;
}

void from_json(const Json& j, SspReport& r) {
  r = SspReport{};
  r.holds = parse_field<bool>(j, "holds");
  if (j.contains("nullity")) r.nullity = j["nullity"].get<int>();
  if (j.contains("smallest_singular_value"))
    r.smallest_singular_value = number_from(j["smallest_singular_value"]);
  if (j.contains("threshold")) r.threshold = j["threshold"].get<double>();
  if (j.contains("free_entries")) r.free_entries = j["free_entries"].get<int>();
  if (j.contains("witness")) r.witness = j["witness"].get<SymMatrix>();
}

void from_json(const Json& j, PatternReport& r) {
  r = PatternReport{};
  r.ok = parse_field<bool>(j, "ok");
  if (j.contains("zero_tol")) r.zero_tol = j["zero_tol"].get<double>();
  if (j.contains("min_edge_abs")) r.min_edge_abs = number_from(j["min_edge_abs"]);
  if (j.contains("max_non_edge_abs")) r.max_non_edge_abs = j["max_non_edge_abs"].get<double>();
  if (j.contains("violations"))
    for (const Json& v : j["violations"])
      r.violations.push_back({v.at("i").get<int>(), v.at("j").get<int>(),
                              v.at("is_edge").get<bool>(), v.at("value").get<double>()});
}

void to_json(Json& j, const PatternReport& r) {
  Json violations = Json::array();
  for (const PatternViolation& v : r.violations)
    violations.push_back({{"i", v.i}, {"j", v.j}, {"is_edge", v.is_edge}, {"value", v.value}});
  j = Json{{"ok", r.ok},
           {"zero_tol", r.zero_tol},
           {"min_edge_abs", number(r.min_edge_abs)},
           {"max_non_edge_abs", r.max_non_edge_abs},
           {"violations", violations}};
}

void to_json(Json& j, const CompatibilityReport& r) {
  j = Json{{"compatible", r.compatible},
           {"row_sum_check", r.row_sum_check},
           {"nowhere_zero_check", r.nowhere_zero_check}};
  if (r.first_zero) j["first_zero"] = {r.first_zero->first, r.first_zero->second};
  if (r.first_row_mismatch) j["first_row_mismatch"] = *r.first_row_mismatch;
}

void to_json(Json& j, const Certificate& c) {
  j = Json{{"kind", c.kind},
           {"graph", c.graph},
           {"matrix", c.matrix},
           {"target", c.target},
           {"spectrum", group_values(c.target)},
           {"spectral_residual", c.spectral_residual},
           {"spectral_tol", c.spectral_tol},
           {"pattern", c.pattern},
           {"seed", c.parameters.seed},
           {"extra", c.extra}};
  Json params = Json::object();
  if (c.parameters.t) params["t"] = *c.parameters.t;
  if (c.parameters.eps) params["eps"] = *c.parameters.eps;
  params["seed"] = c.parameters.seed;
  j["parameters"] = params;
  if (c.eigenbasis) {
    j["eigenbasis"] = matrix_to_json(*c.eigenbasis);
    j["eigenbasis_values"] = c.eigenbasis_values;
  }
  if (!c.test_vectors.empty()) {
    Json tests = Json::array();
    for (const Vector& y : c.test_vectors) tests.push_back(to_std(y));
    j["test_vectors"] = tests;
  }
  if (c.nowhere_zero_margin) j["nowhere_zero_margin"] = number(*c.nowhere_zero_margin);
  if (c.ssp) j["ssp"] = *c.ssp;
}

void from_json(const Json& j, Certificate& c) {
  Certificate out;
  out.kind = j.contains("kind") ? j["kind"].get<std::string>() : std::string("unknown");
  out.graph = parse_field<Graph>(j, "graph");
  out.matrix = parse_field<SymMatrix>(j, "matrix");
  out.target = parse_field<std::vector<double>>(j, "target");
  if (j.contains("spectral_tol")) out.spectral_tol = j["spectral_tol"].get<double>();
  if (j.contains("spectral_residual")) out.spectral_residual = j["spectral_residual"].get<double>();
  if (j.contains("parameters")) {
    const Json& p = j["parameters"];
    if (p.contains("t")) out.parameters.t = p["t"].get<double>();
    if (p.contains("eps")) out.parameters.eps = p["eps"].get<double>();
    if (p.contains("seed")) out.parameters.seed = p["seed"].get<std::uint64_t>();
  }
  if (j.contains("eigenbasis")) {
    out.eigenbasis = matrix_from_json(j["eigenbasis"], "eigenbasis");
    out.eigenbasis_values = parse_field<std::vector<double>>(j, "eigenbasis_values");
  }
  if (j.contains("test_vectors")) {
    for (const Json& y : j["test_vectors"]) out.test_vectors.push_back(to_eigen(y.get<std::vector<double>>()));
  }
  if (j.contains("nowhere_zero_margin"))
    out.nowhere_zero_margin = number_from(j["nowhere_zero_margin"]);
  if (j.contains("pattern")) out.pattern = j["pattern"].get<PatternReport>();
  if (j.contains("ssp")) out.ssp = j["ssp"].get<SspReport>();
  if (j.contains("extra")) out.extra = j["extra"];
  c = std::move(out);
}

void to_json(Json& j, const VerifyReport& r) {
  j = Json{{"ok", r.ok},
           {"pattern_ok", r.pattern_ok},
           {"spectrum_ok", r.spectrum_ok},
           {"spectral_residual", r.spectral_residual},
           {"spectrum", r.spectrum},
           {"failures", r.failures}};
  if (r.eigenbasis_ok) j["eigenbasis_ok"] = *r.eigenbasis_ok;
  if (r.margin_ok) j["margin_ok"] = *r.margin_ok;
  if (r.margin) j["margin"] = number(*r.margin);
  if (r.ssp_ok) j["ssp_ok"] = *r.ssp_ok;
}

}  // namespace iepg

#include "iepg/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iepg/errors.hpp"
#include "iepg/json_io.hpp"

namespace iepg {

Certificate make_certificate(std::string kind, const Graph& graph, const SymMatrix& matrix,
                             std::vector<double> target, double spectral_tol_rel) {
  if (graph.order() != matrix.dim()) throw InputError(kind + ": graph/matrix dimension mismatch");
  if (static_cast<int>(target.size()) != matrix.dim())
    throw InputError(kind + ": target size differs from matrix dimension");
  std::sort(target.begin(), target.end());

  Certificate cert;
  cert.kind = std::move(kind);
  cert.graph = graph;
  cert.matrix = matrix;
  cert.spectral_tol = spectral_tol_rel * residual_scale(target);
  cert.spectral_residual = sorted_residual(to_std(eigenvalues(matrix)), target);
  cert.target = std::move(target);
  cert.pattern = in_pattern(matrix, graph);
  if (cert.spectral_residual > cert.spectral_tol)
    throw NumericError(cert.kind + ": spectral residual above tolerance", cert.spectral_residual);
  if (!cert.pattern.ok)
    throw NumericError(cert.kind + ": matrix is not in S(G)", cert.spectral_residual);
  return cert;
}

double nowhere_zero_margin(const Matrix& u, std::span<const Vector> test_vectors) {
  double margin = std::numeric_limits<double>::infinity();
  for (const Vector& y : test_vectors) {
    const double norm = y.norm();
    if (!(norm > 0.0)) throw InputError("test vector is zero");
    if (y.size() != u.cols()) throw InputError("test vector dimension mismatch");
    margin = std::min(margin, (u * y).cwiseAbs().minCoeff() / norm);
  }
  return margin;
}

void attach_eigenbasis(Certificate& cert, const Matrix& u, std::vector<double> values,
                       std::vector<Vector> test_vectors) {
  cert.eigenbasis = u;
  cert.eigenbasis_values = std::move(values);
  cert.nowhere_zero_margin =
      test_vectors.empty() ? std::nullopt : std::optional(nowhere_zero_margin(u, test_vectors));
  cert.test_vectors = std::move(test_vectors);
}

void normalize_column_signs(Matrix& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    double pivot = j < u.rows() ? u(j, j) : 0.0;
    if (pivot == 0.0) {
      for (Eigen::Index i = 0; i < u.rows() && pivot == 0.0; ++i) pivot = u(i, j);
    }
    if (pivot < 0.0) u.col(j) = -u.col(j);
  }
}

std::vector<Vector> standard_basis(int n) {
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) out.push_back(Vector::Unit(n, i));
  return out;
}

VerifyReport verify_certificate(const Certificate& cert, const VerifyOptions& options) {
  VerifyReport report;
  const SymMatrix& m = cert.matrix;
  if (cert.graph.order() != m.dim()) {
    report.failures.push_back("graph order differs from matrix dimension");
    return report;
  }

  const PatternReport pattern = in_pattern(m, cert.graph, options.zero_tol);
  report.pattern_ok = pattern.ok;
  if (!pattern.ok) report.failures.push_back("pattern: matrix is not in S(G)");

  const std::vector<double> values = to_std(eigenvalues(m));
  report.spectrum = group_values(values, options.gap_tol);
  if (static_cast<int>(cert.target.size()) != m.dim()) {
    report.failures.push_back("spectrum: target size differs from matrix dimension");
  } else {
    std::vector<double> target = cert.target;
    std::sort(target.begin(), target.end());
    const double tol = options.spectral_tol > 0.0
                           ? options.spectral_tol
                           : 1e-8 * std::max(residual_scale(target), 1.0);
    report.spectral_residual = sorted_residual(values, target);
    report.spectrum_ok = report.spectral_residual <= tol;
    if (!report.spectrum_ok) report.failures.push_back("spectrum: residual above tolerance");
  }

  if (cert.eigenbasis) {
    const Matrix& u = *cert.eigenbasis;
    bool ok = u.rows() == m.dim() && u.cols() == m.dim() &&
              static_cast<int>(cert.eigenbasis_values.size()) == m.dim();
    if (ok) {
      const double scale = std::max(1.0, m.max_abs());
      const Matrix identity = Matrix::Identity(m.dim(), m.dim());
      ok = (u.transpose() * u - identity).cwiseAbs().maxCoeff() <= options.orthogonality_tol;
      const Matrix lambda = to_eigen(cert.eigenbasis_values).asDiagonal();
      ok = ok && (m.dense() * u - u * lambda).cwiseAbs().maxCoeff() <=
                     options.orthogonality_tol * scale;
    }
    report.eigenbasis_ok = ok;
    if (!ok) report.failures.push_back("eigenbasis: U is not an orthogonal eigenbasis of the matrix");
    if (ok && !cert.test_vectors.empty()) {
      report.margin = nowhere_zero_margin(u, cert.test_vectors);
      report.margin_ok = *report.margin > options.margin_floor;
      if (!*report.margin_ok) report.failures.push_back("margin: U·y has a zero entry");
    }
  }

  if (cert.ssp) {
    report.ssp_ok = ssp_check(m, cert.graph).holds;
    if (!*report.ssp_ok && cert.ssp->holds)
      report.failures.push_back("ssp: claimed but does not hold");
  }

  report.ok = report.failures.empty();
  return report;
}

VerifyReport verify_certificate(const Json& j, const VerifyOptions& options) {
  Certificate cert;
  from_json(j, cert);
  return verify_certificate(cert, options);
}

}  // namespace iepg

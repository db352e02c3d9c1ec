#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iepg/graph.hpp"
#include "iepg/json_fwd.hpp"
#include "iepg/ssp.hpp"
#include "iepg/symmat.hpp"

namespace iepg {

struct CertificateParameters {
  std::optional<double> t;
  std::optional<double> eps;
  std::uint64_t seed = 0;
};

/// A constructed matrix together with the measurements that show it has the
/// required pattern and spectrum. Everything except `kind`, `target`,
/// `spectral_tol`, `test_vectors` and `parameters` can be recomputed from the
/// matrix, which is what verify_certificate does.
struct Certificate {
  std::string kind;
  Graph graph;
  SymMatrix matrix;
  std::vector<double> target;  // ascending, repeated by multiplicity
  double spectral_residual = 0.0;
  double spectral_tol = 0.0;
  PatternReport pattern;
  /// Orthogonal U with UᵀAU = diag(eigenbasis_values).
  std::optional<Matrix> eigenbasis;
  std::vector<double> eigenbasis_values;
  std::vector<Vector> test_vectors;
  /// min over y and i of |(U y)_i| / ‖y‖.
  std::optional<double> nowhere_zero_margin;
  std::optional<SspReport> ssp;
  CertificateParameters parameters;
  Json extra = Json::object();
};

/// Builds a certificate after measuring residual and pattern. Throws
/// NumericError unless the residual is within spectral_tol_rel·scale of the
/// target and the matrix lies in S(graph).
Certificate make_certificate(std::string kind, const Graph& graph, const SymMatrix& matrix,
                             std::vector<double> target, double spectral_tol_rel);

/// Attaches an eigenbasis with the margin it achieves over `test_vectors`.
void attach_eigenbasis(Certificate& cert, const Matrix& u, std::vector<double> values,
                       std::vector<Vector> test_vectors);

/// min over y and i of |(U y)_i| / ‖y‖; +inf for an empty set.
double nowhere_zero_margin(const Matrix& u, std::span<const Vector> test_vectors);

/// Scales columns so that diagonal entries are non-negative (first nonzero
/// entry positive when the diagonal entry vanishes).
void normalize_column_signs(Matrix& u);

std::vector<Vector> standard_basis(int n);

struct VerifyOptions {
  /// <= 0: 1e-8·scale of the stored target.
  double spectral_tol = 0.0;
  double zero_tol = 0.0;
  double gap_tol = 0.0;
  double margin_floor = 0.0;  // margins must exceed this (strictly positive by default)
  double orthogonality_tol = 1e-8;
};

struct VerifyReport {
  bool ok = false;
  bool pattern_ok = false;
  bool spectrum_ok = false;
  std::optional<bool> eigenbasis_ok;
  std::optional<bool> margin_ok;
  std::optional<bool> ssp_ok;
  double spectral_residual = 0.0;
  std::optional<double> margin;
  Spectrum spectrum;
  std::vector<std::string> failures;
};

/// Recomputes every check from the embedded matrix; stored measurements are
/// ignored.
VerifyReport verify_certificate(const Certificate& cert, const VerifyOptions& options = {});
VerifyReport verify_certificate(const Json& cert, const VerifyOptions& options = {});

}  // namespace iepg

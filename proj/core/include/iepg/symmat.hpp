#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "iepg/graph.hpp"

namespace iepg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real symmetric matrix. Construction from a general square matrix
/// symmetrises it as (M + Mᵀ)/2, so entries (i,j) and (j,i) are always
/// bit-identical. Indices are 0-based; vertex v of a graph is index v-1.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  static SymMatrix zeros(int n);
  static SymMatrix diagonal(std::span<const double> d);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  /// Writes both (i,j) and (j,i).
  void set(int i, int j, double value);
  const Matrix& dense() const noexcept { return m_; }

  double max_abs() const;
  double max_abs_off_diagonal() const;

 private:
  Matrix m_;
};

/// 1e-8·(1 + max|entry|).
double default_zero_tol(const SymMatrix& m);

struct PatternViolation {
  Vertex i = 0;  // 1-based, i < j
  Vertex j = 0;
  bool is_edge = false;  // true: edge entry too small; false: non-edge entry too large
  double value = 0.0;
};

struct PatternReport {
  bool ok = false;
  double zero_tol = 0.0;
  double min_edge_abs = 0.0;      // +inf when the graph has no edges
  double max_non_edge_abs = 0.0;  // 0 when there are no non-edges
  std::vector<PatternViolation> violations;
};

/// Membership in S(G): edge entries above zero_tol, off-diagonal non-edge
/// entries at most zero_tol. Diagonal unconstrained. zero_tol <= 0 selects
/// the default.
PatternReport in_pattern(const SymMatrix& m, const Graph& g, double zero_tol = 0.0);

/// Eigenvalues ascending, orthonormal eigenvectors in columns.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};
EigenDecomposition eigen_decompose(const SymMatrix& m);
Vector eigenvalues(const SymMatrix& m);

struct SpectralGroup {
  double value = 0.0;
  int multiplicity = 0;
};

struct Spectrum {
  std::vector<SpectralGroup> groups;
  double gap_tol = 0.0;

  int distinct() const noexcept { return static_cast<int>(groups.size()); }
  int dim() const noexcept;
  std::vector<int> multiplicities() const;
  /// Group values repeated by multiplicity, ascending.
  std::vector<double> expanded() const;
};

/// 1e-6·(spread + 1).
double default_gap_tol(std::span<const double> sorted_values);

/// Greedy left-to-right clustering of ascending values: a new group starts
/// when the gap to the previous value exceeds gap_tol; group value is the
/// mean of its members. gap_tol <= 0 selects the default.
Spectrum group_values(std::span<const double> sorted_values, double gap_tol = 0.0);
Spectrum spectrum_grouped(const SymMatrix& m, double gap_tol = 0.0);

/// Rows/columns in `keep` (1-based labels), order preserved.
SymMatrix principal_submatrix(const SymMatrix& m, const VertexSet& keep);
/// A(i): row and column i (1-based) removed.
SymMatrix remove_index(const SymMatrix& m, Vertex i);
/// Off-diagonal block rows × cols (1-based labels).
Matrix block(const SymMatrix& m, const VertexSet& rows, const VertexSet& cols);

/// max - min, 0 for fewer than two values.
double spread(std::span<const double> values);
/// Scale against which spectral residuals are measured: the spread, or
/// 1 + max|value| when the spread vanishes.
double residual_scale(std::span<const double> values);
/// max_k |a_k - b_k| after sorting both.
double sorted_residual(std::span<const double> a, std::span<const double> b);

std::vector<double> to_std(const Vector& v);
Vector to_eigen(std::span<const double> v);

}  // namespace iepg

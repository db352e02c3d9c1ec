#include "iepg/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iepg/errors.hpp"

namespace iepg {

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("SymMatrix: matrix is not square");
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zeros(int n) {
  SymMatrix out;
  out.m_ = Matrix::Zero(n, n);
  return out;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix out = zeros(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) out.m_(i, i) = d[i];
  return out;
}

void SymMatrix::set(int i, int j, double value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

double SymMatrix::max_abs() const {
  return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

double SymMatrix::max_abs_off_diagonal() const {
  double out = 0.0;
  for (int j = 0; j < dim(); ++j)
    for (int i = 0; i < j; ++i) out = std::max(out, std::abs(m_(i, j)));
  return out;
}

double default_zero_tol(const SymMatrix& m) { return 1e-8 * (1.0 + m.max_abs()); }

PatternReport in_pattern(const SymMatrix& m, const Graph& g, double zero_tol) {
  if (m.dim() != g.order()) {
    throw InputError("in_pattern: matrix dimension " + std::to_string(m.dim()) +
                     " does not match graph order " + std::to_string(g.order()));
  }
  PatternReport report;
  report.zero_tol = zero_tol > 0.0 ? zero_tol : default_zero_tol(m);
  report.min_edge_abs = std::numeric_limits<double>::infinity();
  for (Vertex i = 1; i <= g.order(); ++i) {
    for (Vertex j = i + 1; j <= g.order(); ++j) {
      const double value = m(i - 1, j - 1);
      const bool edge = g.has_edge(i, j);
      if (edge) {
        report.min_edge_abs = std::min(report.min_edge_abs, std::abs(value));
        if (!(std::abs(value) > report.zero_tol))
          report.violations.push_back({i, j, true, value});
      } else {
        report.max_non_edge_abs = std::max(report.max_non_edge_abs, std::abs(value));
        if (std::abs(value) > report.zero_tol)
          report.violations.push_back({i, j, false, value});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

EigenDecomposition eigen_decompose(const SymMatrix& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.dense());
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Vector eigenvalues(const SymMatrix& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
  return solver.eigenvalues();
}

int Spectrum::dim() const noexcept {
  int total = 0;
  for (const auto& g : groups) total += g.multiplicity;
  return total;
}

std::vector<int> Spectrum::multiplicities() const {
  std::vector<int> out;
  for (const auto& g : groups) out.push_back(g.multiplicity);
  return out;
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  for (const auto& g : groups) out.insert(out.end(), g.multiplicity, g.value);
  return out;
}

double default_gap_tol(std::span<const double> sorted_values) {
  return 1e-6 * (spread(sorted_values) + 1.0);
}

Spectrum group_values(std::span<const double> sorted_values, double gap_tol) {
  Spectrum out;
  out.gap_tol = gap_tol > 0.0 ? gap_tol : default_gap_tol(sorted_values);
  double sum = 0.0;
  for (std::size_t k = 0; k < sorted_values.size(); ++k) {
    const double x = sorted_values[k];
    if (k == 0 || x - sorted_values[k - 1] > out.gap_tol) {
      if (!out.groups.empty()) out.groups.back().value = sum / out.groups.back().multiplicity;
      out.groups.push_back({x, 0});
      sum = 0.0;
    }
    out.groups.back().multiplicity += 1;
    sum += x;
  }
  if (!out.groups.empty()) out.groups.back().value = sum / out.groups.back().multiplicity;
  return out;
}

Spectrum spectrum_grouped(const SymMatrix& m, double gap_tol) {
  const std::vector<double> values = to_std(eigenvalues(m));
  return group_values(values, gap_tol);
}

Matrix block(const SymMatrix& m, const VertexSet& rows, const VertexSet& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (rows[a] < 1 || rows[a] > m.dim() || cols[b] < 1 || cols[b] > m.dim())
        throw InputError("block: index out of range");
      out(a, b) = m(rows[a] - 1, cols[b] - 1);
    }
  }
  return out;
}

SymMatrix principal_submatrix(const SymMatrix& m, const VertexSet& keep) {
  if (keep.empty()) throw InputError("principal_submatrix: empty index set");
  return SymMatrix(block(m, keep, keep));
}

SymMatrix remove_index(const SymMatrix& m, Vertex i) {
  VertexSet keep;
  for (Vertex v = 1; v <= m.dim(); ++v)
    if (v != i) keep.push_back(v);
  return principal_submatrix(m, keep);
}

double spread(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double residual_scale(std::span<const double> values) {
  const double s = spread(values);
  if (s > 0.0) return s;
  double big = 0.0;
  for (double v : values) big = std::max(big, std::abs(v));
  return 1.0 + big;
}

double sorted_residual(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double out = 0.0;
  for (std::size_t k = 0; k < sa.size(); ++k) out = std::max(out, std::abs(sa[k] - sb[k]));
  return out;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector to_eigen(std::span<const double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace iepg

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iepg/graph.hpp"

namespace iepg {

/// Non-negative integer r×k matrix. Column i is the ordered multiplicity
/// vector of the i-th connected component; row j belongs to the j-th
/// smallest eigenvalue.
class MultiplicityMatrix {
 public:
  MultiplicityMatrix() = default;
  MultiplicityMatrix(int rows, int cols);
  /// Row lists; all rows must have the same length.
  static MultiplicityMatrix from_rows(const std::vector<std::vector<int>>& rows);
  /// Single column.
  static MultiplicityMatrix column(std::span<const int> entries);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int operator()(int i, int j) const { return data_[index(i, j)]; }
  int& operator()(int i, int j) { return data_[index(i, j)]; }

  int row_sum(int i) const;
  int col_sum(int j) const;
  std::vector<int> col(int j) const;
  bool is_01() const;
  /// First and last rows removed; requires rows >= 3.
  MultiplicityMatrix trimmed() const;
  MultiplicityMatrix without_row(int i) const;
  std::vector<std::vector<int>> to_rows() const;

  bool operator==(const MultiplicityMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

/// Column sums equal the orders of the components of g, in canonical
/// component order.
bool fits(const MultiplicityMatrix& v, const Graph& g);

/// Whether a single ordered multiplicity vector is realisable for a
/// connected graph that is a path, cycle or complete graph. Zero entries
/// (absent eigenvalues) are ignored. Throws UnsupportedError for any other
/// family.
bool is_ordered_multiplicity_vector(std::span<const int> column, const Graph& component);

/// Requires fits(v, g); every component must be a path, cycle or complete
/// graph (UnsupportedError otherwise).
bool is_multiplicity_matrix(const MultiplicityMatrix& v, const Graph& g);

struct CompatibilityReport {
  bool compatible = false;
  bool row_sum_check = false;
  bool nowhere_zero_check = false;
  /// First zero entry (column of v, column of w), 0-based, when the
  /// nowhere-zero clause fails.
  std::optional<std::pair<int, int>> first_zero;
  /// First interior row (0-based, in the untrimmed matrix) whose sums differ.
  std::optional<int> first_row_mismatch;
};

/// Trimmed row sums agree and ṼᵀW̃ is nowhere-zero. Requires equal row
/// counts r >= 3.
CompatibilityReport compatible(const MultiplicityMatrix& v, const MultiplicityMatrix& w);

struct SearchOptions {
  /// <= 0 selects 2·max(Σ orders_g, Σ orders_h) + 2.
  int r_max = 0;
  std::uint64_t node_budget = 200'000'000;
};

struct SearchResult {
  bool found = false;
  /// The search ran to completion within the exhaustive scope (Σ orders <= 16
  /// and node budget not exhausted). A negative answer is a proof only when set.
  bool exhaustive = false;
  int rows_searched = 0;  // largest r examined
  std::uint64_t nodes = 0;
  MultiplicityMatrix v;
  MultiplicityMatrix w;
};

/// Backtracking over 0-1 matrices with the given column sums, r = 3, 4, ...
/// up to the effective bound; returns the first compatible pair for the
/// smallest r in lexicographic row-major order.
SearchResult search_compatible_01(std::span<const int> orders_g, std::span<const int> orders_h,
                                  const SearchOptions& options = {});

/// Effective row bound used by the search: min(r_max, min(Σg, Σh) + 2).
int effective_row_bound(std::span<const int> orders_g, std::span<const int> orders_h, int r_max);

struct Diff2Pair {
  MultiplicityMatrix v;
  MultiplicityMatrix w;
};

/// The explicit pair for |G_i| - |H_i| within 2: trimmed block E with columns
/// e_1 + ... + e_{p_i}, p_i = min(|G_i|, |H_i|), and 0-1 border rows that top
/// up the column sums (top row first). If `g_complete[i]` is set, column i of
/// v may instead carry larger border entries so that |G_i| may exceed |H_i|
/// by any amount, provided |H_i| <= |G_i| + 2.
Diff2Pair construct_diff2(std::span<const int> orders_g, std::span<const int> orders_h,
                          std::span<const bool> g_complete = {});

}  // namespace iepg

namespace iepg {

/// Step k (0-based) is true when sorted value k equals value k+1. True iff
/// the equalities sit only at even k or only at odd k, i.e. the list has one
/// of the shapes λ1 <= λ2 < λ3 <= λ4 < ... or λ1 < λ2 <= λ3 < λ4 <= ...
bool alternating_equalities_ok(const std::vector<bool>& equal_steps);

}  // namespace iepg

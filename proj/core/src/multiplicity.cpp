#include "iepg/multiplicity.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "iepg/errors.hpp"

namespace iepg {

MultiplicityMatrix::MultiplicityMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {
  if (rows < 1 || cols < 1) throw InputError("multiplicity matrix needs r >= 1 and k >= 1");
}

MultiplicityMatrix MultiplicityMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw InputError("multiplicity matrix needs at least one row and column");
  MultiplicityMatrix out(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < out.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != out.cols())
      throw InputError("multiplicity matrix rows have different lengths");
    for (int j = 0; j < out.cols(); ++j) {
      if (rows[i][j] < 0) throw InputError("multiplicity matrix entries must be non-negative");
      out(i, j) = rows[i][j];
    }
  }
  return out;
}

MultiplicityMatrix MultiplicityMatrix::column(std::span<const int> entries) {
  std::vector<std::vector<int>> rows;
  for (int e : entries) rows.push_back({e});
  return from_rows(rows);
}

std::size_t MultiplicityMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw InputError("multiplicity matrix index out of range");
  return static_cast<std::size_t>(i * cols_ + j);
}

int MultiplicityMatrix::row_sum(int i) const {
  int s = 0;
  for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
  return s;
}

int MultiplicityMatrix::col_sum(int j) const {
  int s = 0;
  for (int i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

std::vector<int> MultiplicityMatrix::col(int j) const {
  std::vector<int> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

bool MultiplicityMatrix::is_01() const {
  return std::all_of(data_.begin(), data_.end(), [](int x) { return x == 0 || x == 1; });
}

MultiplicityMatrix MultiplicityMatrix::trimmed() const {
  if (rows_ < 3) throw InputError("trimming needs at least 3 rows");
  MultiplicityMatrix out(rows_ - 2, cols_);
  for (int i = 1; i + 1 < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i - 1, j) = (*this)(i, j);
  return out;
}

MultiplicityMatrix MultiplicityMatrix::without_row(int r) const {
  if (rows_ < 2) throw InputError("cannot delete the only row");
  MultiplicityMatrix out(rows_ - 1, cols_);
  for (int i = 0, o = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (int j = 0; j < cols_; ++j) out(o, j) = (*this)(i, j);
    ++o;
  }
  return out;
}

std::vector<std::vector<int>> MultiplicityMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

// ---------------------------------------------------------------------------

bool fits(const MultiplicityMatrix& v, const Graph& g) {
  const auto comps = components(g);
  if (static_cast<int>(comps.size()) != v.cols()) return false;
  for (int i = 0; i < v.cols(); ++i)
    if (v.col_sum(i) != comps[i].graph.order()) return false;
  return true;
}

bool alternating_equalities_ok(const std::vector<bool>& equal_steps) {
  bool odd_only = true;   // equalities only at 0-based even steps: λ1 <= λ2 < λ3 <= ...
  bool even_only = true;  // equalities only at 0-based odd steps:  λ1 < λ2 <= λ3 < ...
  for (std::size_t k = 0; k < equal_steps.size(); ++k) {
    if (!equal_steps[k]) continue;
    if (k % 2 == 0) even_only = false;
    else odd_only = false;
  }
  return odd_only || even_only;
}

bool is_ordered_multiplicity_vector(std::span<const int> column, const Graph& component) {
  if (!component.is_connected()) throw InputError("component must be connected");
  std::vector<int> mults;
  for (int m : column) {
    if (m < 0) return false;
    if (m > 0) mults.push_back(m);
  }
  if (std::accumulate(mults.begin(), mults.end(), 0) != component.order()) return false;

  if (is_path_graph(component))
    return std::all_of(mults.begin(), mults.end(), [](int m) { return m == 1; });
  if (is_complete_graph(component)) return mults.size() >= 2;
  if (is_cycle_graph(component)) {
    std::vector<bool> steps;
    for (int m : mults) {
      if (!steps.empty()) steps.push_back(false);
      for (int c = 1; c < m; ++c) steps.push_back(true);
    }
    return alternating_equalities_ok(steps);
  }
  throw UnsupportedError(
      "ordered multiplicity vectors are only characterised here for paths, cycles and "
      "complete graphs");
}

bool is_multiplicity_matrix(const MultiplicityMatrix& v, const Graph& g) {
  if (!fits(v, g)) throw InputError("is_multiplicity_matrix: matrix does not fit the graph");
  const auto comps = components(g);
  for (int i = 0; i < v.cols(); ++i) {
    const auto column = v.col(i);
    if (!is_ordered_multiplicity_vector(column, comps[i].graph)) return false;
  }
  return true;
}

CompatibilityReport compatible(const MultiplicityMatrix& v, const MultiplicityMatrix& w) {
  if (v.rows() != w.rows()) throw InputError("compatible: row counts differ");
  if (v.rows() < 3) throw InputError("compatible: needs at least 3 rows");
  CompatibilityReport report;
  report.row_sum_check = true;
  for (int i = 1; i + 1 < v.rows(); ++i) {
    if (v.row_sum(i) != w.row_sum(i)) {
      report.row_sum_check = false;
      report.first_row_mismatch = i;
      break;
    }
  }
  report.nowhere_zero_check = true;
  for (int a = 0; a < v.cols() && report.nowhere_zero_check; ++a) {
    for (int b = 0; b < w.cols(); ++b) {
      long long dot = 0;
      for (int i = 1; i + 1 < v.rows(); ++i) dot += static_cast<long long>(v(i, a)) * w(i, b);
      if (dot == 0) {
        report.nowhere_zero_check = false;
        report.first_zero = std::pair{a, b};
        break;
      }
    }
  }
  report.compatible = report.row_sum_check && report.nowhere_zero_check;
  return report;
}

// ---------------------------------------------------------------------------
// Search

int effective_row_bound(std::span<const int> orders_g, std::span<const int> orders_h, int r_max) {
  const int total_g = std::accumulate(orders_g.begin(), orders_g.end(), 0);
  const int total_h = std::accumulate(orders_h.begin(), orders_h.end(), 0);
  if (r_max <= 0) r_max = 2 * std::max(total_g, total_h) + 2;
  // Interior rows of a minimal pair are nonzero on both sides, so there are at
  // most min(Σg, Σh) of them.
  return std::min(r_max, std::min(total_g, total_h) + 2);
}

namespace {

class CompatibleSearch {
 public:
  CompatibleSearch(std::span<const int> orders_g, std::span<const int> orders_h,
                   std::uint64_t budget)
      : g_(orders_g.begin(), orders_g.end()),
        h_(orders_h.begin(), orders_h.end()),
        budget_(budget) {
    const std::size_t widest = std::max(g_.size(), h_.size());
    g_masks_.resize(widest + 1);
    h_masks_.resize(widest + 1);
    for (unsigned mask = 1; mask < (1u << g_.size()); ++mask)
      g_masks_[std::popcount(mask)].push_back(mask);
    for (unsigned mask = 1; mask < (1u << h_.size()); ++mask)
      h_masks_[std::popcount(mask)].push_back(mask);
  }

  // Returns true when a compatible pair with `rows` rows was found.
  bool run(int rows) {
    interior_ = rows - 2;
    v_rows_.assign(interior_, 0);
    w_rows_.assign(interior_, 0);
    sum_g_.assign(g_.size(), 0);
    sum_h_.assign(h_.size(), 0);
    covered_.assign(g_.size(), 0);
    return descend(0);
  }

  bool out_of_budget() const { return nodes_ > budget_; }
  std::uint64_t nodes() const { return nodes_; }

  MultiplicityMatrix assemble(const std::vector<int>& orders, const std::vector<unsigned>& rows) const {
    const int k = static_cast<int>(orders.size());
    MultiplicityMatrix out(interior_ + 2, k);
    for (int i = 0; i < interior_; ++i)
      for (int c = 0; c < k; ++c) out(i + 1, c) = (rows[i] >> c) & 1u;
    for (int c = 0; c < k; ++c) {
      const int need = orders[c] - out.col_sum(c);
      if (need >= 1) out(0, c) = 1;
      if (need == 2) out(interior_ + 1, c) = 1;
    }
    return out;
  }

  MultiplicityMatrix v() const { return assemble(g_, v_rows_); }
  MultiplicityMatrix w() const { return assemble(h_, w_rows_); }

 private:
  static bool sums_feasible(const std::vector<int>& orders, const std::vector<int>& sums,
                            int remaining) {
    for (std::size_t c = 0; c < orders.size(); ++c) {
      if (sums[c] > orders[c]) return false;
      if (sums[c] + remaining < orders[c] - 2) return false;
    }
    return true;
  }

  bool descend(int row) {
    if (++nodes_ > budget_) return false;
    const int remaining = interior_ - row;
    if (!sums_feasible(g_, sum_g_, remaining) || !sums_feasible(h_, sum_h_, remaining))
      return false;
    const unsigned full = (1u << h_.size()) - 1u;
    if (remaining == 0) {
      for (unsigned c : covered_)
        if (c != full) return false;
      return true;
    }
    for (std::size_t pop = 1; pop < g_masks_.size(); ++pop) {
      for (unsigned vm : g_masks_[pop]) {
        for (unsigned wm : h_masks_[pop]) {
          if (try_row(row, vm, wm)) return true;
          if (out_of_budget()) return false;
        }
      }
    }
    return false;
  }

  bool try_row(int row, unsigned vm, unsigned wm) {
    {
      std::vector<unsigned> saved = covered_;
      for (std::size_t a = 0; a < g_.size(); ++a) {
        if ((vm >> a) & 1u) {
          ++sum_g_[a];
          covered_[a] |= wm;
        }
      }
      for (std::size_t b = 0; b < h_.size(); ++b) sum_h_[b] += (wm >> b) & 1u;
      v_rows_[row] = vm;
      w_rows_[row] = wm;
      if (descend(row + 1)) return true;
      for (std::size_t a = 0; a < g_.size(); ++a) sum_g_[a] -= (vm >> a) & 1u;
      for (std::size_t b = 0; b < h_.size(); ++b) sum_h_[b] -= (wm >> b) & 1u;
      covered_ = std::move(saved);
    }
    return false;
  }

  std::vector<int> g_, h_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<unsigned>> g_masks_, h_masks_;  // nonzero row masks by popcount
  int interior_ = 0;
  std::vector<unsigned> v_rows_, w_rows_;
  std::vector<int> sum_g_, sum_h_;
  std::vector<unsigned> covered_;  // covered_[a]: columns b of w sharing a row with column a of v
};

}  // namespace

SearchResult search_compatible_01(std::span<const int> orders_g, std::span<const int> orders_h,
                                  const SearchOptions& options) {
  if (orders_g.empty() || orders_h.empty()) throw InputError("search: empty order list");
  for (int o : orders_g)
    if (o < 1) throw InputError("search: component orders must be positive");
  for (int o : orders_h)
    if (o < 1) throw InputError("search: component orders must be positive");
  if (orders_g.size() > 16 || orders_h.size() > 16)
    throw InputError("search: at most 16 components per side");
  if (options.r_max > 0 && options.r_max < 3) throw InputError("search: r_max must be >= 3");

  const int bound = effective_row_bound(orders_g, orders_h, options.r_max);
  const int total = std::accumulate(orders_g.begin(), orders_g.end(), 0) +
                    std::accumulate(orders_h.begin(), orders_h.end(), 0);

  SearchResult result;
  CompatibleSearch search(orders_g, orders_h, options.node_budget);
  for (int r = 3; r <= bound; ++r) {
    result.rows_searched = r;
    if (search.run(r)) {
      result.found = true;
      result.v = search.v();
      result.w = search.w();
      break;
    }
    if (search.out_of_budget()) break;
  }
  result.nodes = search.nodes();
  result.exhaustive = result.found || (!search.out_of_budget() && total <= 16);
  return result;
}

// ---------------------------------------------------------------------------

Diff2Pair construct_diff2(std::span<const int> orders_g, std::span<const int> orders_h,
                          std::span<const bool> g_complete) {
  const std::size_t k = orders_g.size();
  if (k == 0 || orders_h.size() != k)
    throw InputError("construct_diff2: both sides need the same positive number of components");
  if (!g_complete.empty() && g_complete.size() != k)
    throw InputError("construct_diff2: completeness mask has the wrong length");

  std::vector<int> p(k);
  int p_max = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (orders_g[i] < 1 || orders_h[i] < 1)
      throw InputError("construct_diff2: component orders must be positive");
    const bool complete = !g_complete.empty() && g_complete[i];
    const int diff = orders_g[i] - orders_h[i];
    if (diff < -2 || (diff > 2 && !complete)) {
      throw InputError("construct_diff2: component " + std::to_string(i + 1) +
                       " has order difference " + std::to_string(diff) +
                       "; no 0-1 border rows exist");
    }
    p[i] = std::min(orders_g[i], orders_h[i]);
    p_max = std::max(p_max, p[i]);
  }

  const int rows = p_max + 2;
  Diff2Pair out{MultiplicityMatrix(rows, static_cast<int>(k)),
                MultiplicityMatrix(rows, static_cast<int>(k))};
  auto fill = [&](MultiplicityMatrix& m, std::span<const int> orders, std::size_t i) {
    for (int j = 0; j < p[i]; ++j) m(j + 1, static_cast<int>(i)) = 1;
    const int need = orders[i] - p[i];
    m(0, static_cast<int>(i)) = need - need / 2;
    m(rows - 1, static_cast<int>(i)) = need / 2;
  };
  for (std::size_t i = 0; i < k; ++i) {
    fill(out.v, orders_g, i);
    fill(out.w, orders_h, i);
  }
  return out;
}

}  // namespace iepg

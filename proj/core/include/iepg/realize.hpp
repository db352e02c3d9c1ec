#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iepg/certificate.hpp"
#include "iepg/graph.hpp"
#include "iepg/multiplicity.hpp"
#include "iepg/symmat.hpp"

namespace iepg {

/// Irreducible tridiagonal matrix with positive off-diagonal and the given
/// strictly ascending spectrum (Lanczos on diag(λ) from the normalised ones
/// vector, so all spectral weights are 1/n).
SymMatrix jacobi_from_spectrum(std::span<const double> lambdas);

enum class ScheduleMode { uniform, injective };

/// Edge exponents on a tree. Edge entries of the homotopy matrix are
/// t^f(e) with f = N0 + g; s(i,j) is the sum of f along the tree path.
struct ExponentSchedule {
  Graph tree;
  ScheduleMode mode = ScheduleMode::uniform;
  std::vector<Edge> edges;  // ascending
  std::vector<long> g;      // per edge
  std::vector<long> f;      // per edge
  long n0 = 0;
  int diameter = 0;
  std::vector<std::vector<long>> s;  // 0-based vertex indices

  long f_of(Vertex i, Vertex j) const;
  long s_of(Vertex i, Vertex j) const { return s[i - 1][j - 1]; }
  long max_f() const;
  long max_s() const;
  /// Smallest t with t^max_s >= 1e-300.
  double min_t() const;
};

/// Throws InputError unless `tree` is a tree, or when the injective schedule
/// would underflow for every t >= 1e-12.
ExponentSchedule exponent_schedule(const Graph& tree, ScheduleMode mode);

/// c(i,j) = Π over the path from i to j, excluding j, of (λ_j - λ_k)^-1;
/// 0-based, c(j,j) = 1. λ is indexed by vertex.
Matrix decay_constants(const ExponentSchedule& schedule, std::span<const double> lambdas);

struct HomotopyOptions {
  std::optional<Vector> initial_diagonal;
  int max_iterations = 100;
  double residual_rel = 1e-10;
  int max_backtracks = 40;
};

struct HomotopySolution {
  SymMatrix matrix;
  double t = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Tree edges fixed to t^f(e), diagonal found by Newton so that the sorted
/// eigenvalues equal `target` (ascending, distinct). Throws NumericError on
/// divergence.
HomotopySolution tree_homotopy_solve(const ExponentSchedule& schedule,
                                     std::span<const double> target, double t,
                                     const HomotopyOptions& options = {});

/// Eigenvectors of a matrix supported on a tree, column k for values[k],
/// computed by the leaf-to-root ratio recursion rooted at vertex k+1. Entries
/// far below machine precision relative to the largest are resolved to
/// relative accuracy, which a dense eigensolver cannot do. Columns are unit
/// norm with positive root entry. Requires simple eigenvalues and no
/// vanishing pivot.
Matrix tree_eigenvectors(const SymMatrix& a, const Graph& tree, const Vector& values);

// ---------------------------------------------------------------------------
// Generic realisation

/// Default continuation grid: 0.99 down to 1e-6.
std::vector<double> default_t_schedule();

struct GenericOptions {
  std::uint64_t seed = 0;
  /// Margins must reach margin_floor·‖y‖.
  double margin_floor = 1e-6;
  std::vector<double> t_schedule = default_t_schedule();
  /// Initial new-edge size for the supergraph step, relative to the mean gap.
  double eps0 = 0.5;
  int max_eps_halvings = 24;
  double spectral_tol_rel = 1e-8;
  /// Fallback when no homotopy point clears the floor: tree edges are grown
  /// by relax_growth per step and the spectrum restored by Newton.
  int relax_steps = 40;
  double relax_growth = 1.25;
};

struct GenericRealization {
  SymMatrix matrix;
  /// Column k is the eigenvector for values[k] in the caller's order.
  Matrix u;
  Certificate certificate;
};

/// A in S(g) with eigenvalues `values` (distinct, any order), the SSP, and
/// U·y nowhere-zero with margin >= margin_floor for every test vector.
/// Test vectors are expressed in the basis of `values` as given.
GenericRealization generic_realize(const Graph& g, std::span<const double> values,
                                   std::span<const Vector> test_vectors,
                                   const GenericOptions& options = {});

struct BlockRealization {
  SymMatrix matrix;
  Certificate certificate;
  /// Per component, in canonical component order.
  std::vector<GenericRealization> parts;
  std::vector<Component> components;
};

/// Block-diagonal realisation of a 0-1 multiplicity matrix: component i gets
/// the values λ_j with v(j,i) = 1. `test_vectors[i]`, when given, applies to
/// component i in the order of its selected values.
BlockRealization realize_01_multiplicity(const Graph& g, const MultiplicityMatrix& v,
                                         std::span<const double> eigenvalues,
                                         std::span<const std::vector<Vector>> test_vectors = {},
                                         const GenericOptions& options = {});

// ---------------------------------------------------------------------------
// Cycles and complete graphs

/// λ1 <= λ2 < λ3 <= λ4 < ... or λ1 < λ2 <= λ3 < λ4 <= ... Values closer than
/// `tol` count as equal. Throws InputError for n < 3 or unsorted input.
bool cycle_spectrum_check(std::span<const double> lambdas, double tol = 0.0);

struct CycleOptions {
  std::uint64_t seed = 0;
  int restarts = 20;
  double spectral_tol_rel = 1e-8;
  /// Relative to the mean gap, for the distinct-value path.
  double eps0 = 0.25;
};

struct CycleRealization {
  SymMatrix matrix;
  Certificate certificate;
  int restarts_used = 0;
};

/// A in S(C_n) with the given spectrum (ascending, repeats allowed). Input
/// failing cycle_spectrum_check is refused with InputError before any
/// numerics.
CycleRealization cycle_realize(std::span<const double> lambdas, const CycleOptions& options = {});

struct CompleteOptions {
  std::uint64_t seed = 0;
  int attempts = 100;
  double margin_floor = 1e-6;
  double spectral_tol_rel = 1e-8;
};

struct CompleteRealization {
  SymMatrix matrix;
  /// Column k is an eigenvector for values[k] in the caller's order.
  Matrix u;
  Certificate certificate;
};

/// A = QΛQᵀ in S(K_m) from a seeded Haar-random Q. Requires at least two
/// distinct values unless m = 1.
CompleteRealization complete_realize(std::span<const double> values,
                                     std::span<const Vector> test_vectors,
                                     const CompleteOptions& options = {});

struct EigenbasisOptions {
  std::uint64_t seed = 0;
  int max_mixes = 50;
  double zero_tol = 0.0;  // <= 0: default_zero_tol(a)
  double gap_tol = 0.0;   // <= 0: default_gap_tol(eigenvalues)
};

struct EigenbasisResult {
  bool found = false;
  Matrix basis;
  Vector values;
  int mixes = 0;
  double min_abs_entry = 0.0;
  /// On failure, a coordinate that stayed at or below zero_tol (0-based).
  int stuck_row = -1;
  int stuck_column = -1;
};

/// Orthonormal eigenbasis with every entry above zero_tol: each eigenspace
/// of dimension >= 2 is rotated and then mixed by seeded random orthogonal
/// matrices until no entry is small.
EigenbasisResult nowhere_zero_eigenbasis(const SymMatrix& a, const EigenbasisOptions& options = {});

struct MixedBasis {
  Matrix u;  // column k for ordered_values[k]
  double margin = 0.0;
  int attempts = 0;
};

/// Eigenbasis of `a` in the order of `ordered_values` (which must match its
/// spectrum as a multiset), mixed within repeated eigenspaces until U·y has
/// margin >= margin_floor for each test vector.
MixedBasis generic_eigenbasis(const SymMatrix& a, std::span<const double> ordered_values,
                              std::span<const Vector> test_vectors, double margin_floor,
                              std::uint64_t seed, int attempts = 200);

// ---------------------------------------------------------------------------
// Decay of eigenvector entries along the homotopy

struct DecayRow {
  double t = 0.0;
  double residual = 0.0;
  Matrix u;      // column j for λ_j, u(j,j) >= 0
  Matrix ratio;  // u(i,j) / t^s(i,j)
  double max_off_diagonal = 0.0;
};

struct DecayTable {
  ExponentSchedule schedule;
  std::vector<double> lambdas;
  Matrix c;
  std::vector<DecayRow> rows;

  /// |ratio - c| / |c| for row k at (i,j), 0-based.
  double relative_error(std::size_t k, int i, int j) const;
  /// Header t,i,j,s,u,ratio,c,rel_error; one line per t and ordered pair.
  std::string to_csv() const;
};

std::vector<double> default_decay_t_values();

/// Requires a tree of order <= 6 and t values inside the underflow guard.
DecayTable decay_ratio_table(const ExponentSchedule& schedule, std::span<const double> lambdas,
                             std::span<const double> t_values = {});

}  // namespace iepg

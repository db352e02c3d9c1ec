#pragma once

#include <cstdint>
#include <optional>

#include "iepg/graph.hpp"
#include "iepg/symmat.hpp"

namespace iepg {

/// Outcome of the strong spectral property test. `witness`, when present, is
/// a unit-norm symmetric X with zero diagonal, zero on the support of A and
/// AX = XA (to the reported singular value).
struct SspReport {
  bool holds = false;
  int nullity = 0;
  double smallest_singular_value = 0.0;
  double threshold = 0.0;
  int free_entries = 0;
  std::optional<SymMatrix> witness;
};

struct SspOptions {
  /// Kernel threshold relative to ‖A - (tr A/n)I‖_F.
  double tol = 1e-8;
  /// Entries with |a(i,j)| <= zero_tol are free in X. <= 0 selects
  /// 1e-8·(1 + max off-diagonal |a(i,j)|), which is invariant under shifts.
  double zero_tol = 0.0;
};

/// Support inferred from the entries of `a`.
SspReport ssp_check(const SymMatrix& a, const SspOptions& options = {});
/// Support given explicitly: X is free exactly on the non-edges of `pattern`.
SspReport ssp_check(const SymMatrix& a, const Graph& pattern, double tol = 1e-8);

struct EdgeExtendOptions {
  double eps = 0.1;
  int max_halvings = 20;
  int max_iterations = 60;
  bool random_signs = false;
  std::uint64_t seed = 0;
  /// Acceptance bound on max |λ_k(A) - λ_k(a)| relative to the spread.
  double residual_rel = 1e-9;
};

struct EdgeExtendResult {
  SymMatrix matrix;
  double eps_used = 0.0;  // eps / 2^halvings; new entries have magnitude eps_used/2
  double residual = 0.0;
  double distance = 0.0;  // max entrywise |A - a|
  int iterations = 0;
  int halvings = 0;
};

/// Spectrum-preserving move from S(sub) into S(super): new edges are set to
/// ±eps/2 and the diagonal plus the old edges are corrected by Gauss–Newton
/// (minimum-norm steps) until the sorted eigenvalues return to those of `a`.
/// Retries with eps halved; the accepted result satisfies ‖A - a‖₂ <= eps_used,
/// lies in S(super) and has the SSP. Requires `a` in S(sub) with the SSP and
/// simple eigenvalues.
EdgeExtendResult ssp_edge_extend(const SymMatrix& a, const Graph& sub,
                                 const Graph& super,
                                 const EdgeExtendOptions& options = {});

}  // namespace iepg

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iepg/certificate.hpp"
#include "iepg/graph.hpp"
#include "iepg/multiplicity.hpp"
#include "iepg/realize.hpp"
#include "iepg/symmat.hpp"

namespace iepg {

/// Eigenvalue assignment for a two-eigenvalue join. Row 0 carries μ and row
/// r-1 carries ν on both sides; interior row j carries alpha[j] on the G side
/// and beta[j] = μ + ν - alpha[j] on the H side, coupled with strength b[j] so
/// that [[α, b], [b, β]] has eigenvalues {μ, ν}. Entries 0 and r-1 of the
/// vectors are unused.
struct JoinPlan {
  double mu = 0.0;
  double nu = 0.0;
  int rows = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> b;
};

/// Interior values equally spaced in (μ, ν).
JoinPlan join_plan(int rows, double mu, double nu);

struct JoinOptions {
  std::uint64_t seed = 0;
  int attempts = 20;
  /// Minimum |B(i,j)| relative to ν - μ.
  double cross_floor = 1e-6;
  double spectral_tol_rel = 1e-8;
  double identity_tol_rel = 1e-7;
};

struct JoinResult {
  SymMatrix matrix;
  Certificate certificate;
  JoinPlan plan;
  /// ‖(M - μI)(M - νI)‖_F.
  double identity_residual = 0.0;
  double cross_margin = 0.0;
  int attempts_used = 0;
};

/// M in S(g ∨ h) with exactly the two eigenvalues μ < ν, from compatible
/// multiplicity matrices v (for g) and w (for h). Columns must be 0-1, or
/// belong to a complete component. Throws InputError on incompatibility,
/// UnsupportedError when a column is outside what can be realised here and
/// NumericError when the retries are exhausted.
JoinResult join_two_eigenvalues(const Graph& g, const Graph& h, const MultiplicityMatrix& v,
                                const MultiplicityMatrix& w, double mu, double nu,
                                const JoinOptions& options = {});

struct PartialJoinOptions {
  std::uint64_t seed = 0;
  double margin_floor = 1e-6;
  double spectral_tol_rel = 1e-8;
  int mix_attempts = 200;
};

struct PartialJoinResult {
  SymMatrix matrix;
  Certificate certificate;
  Graph graph;
  /// Boundary of v2 in g, as labels of g.
  VertexSet x;
  std::vector<double> sigma_c;
  std::vector<double> sigma_extra;
  /// min over x in X of min |N(x, h)| relative to ‖b_x‖.
  double cross_margin = 0.0;
};

/// N in S((g[v1], X) ∨ h) with σ(N) = σ(m) ∪ sigma_extra, X the vertex
/// boundary of v2. Vertices of v1 keep their relative order and become
/// 1..|v1|; h follows. σ(m[v2]) ∪ sigma_extra must be distinct, or h must be a
/// cycle and the union a valid cycle spectrum.
PartialJoinResult partial_join_extend(const SymMatrix& m, const Graph& g, const VertexSet& v1,
                                      const VertexSet& v2, const Graph& h,
                                      std::span<const double> sigma_extra,
                                      const PartialJoinOptions& options = {});

/// `count` new values at the midpoints of the largest gaps of `sorted`
/// extended by one unit past each end; ties go to the leftmost gap.
std::vector<double> gap_midpoints(std::span<const double> sorted, int count);

/// partial_join_extend with sigma_extra = gap_midpoints(σ(m[v2]), t).
/// Requires σ(m[v2]) to be simple.
PartialJoinResult partial_join_distinct(const SymMatrix& m, const Graph& g, const VertexSet& v1,
                                        const VertexSet& v2, const Graph& h, int t,
                                        const PartialJoinOptions& options = {});

/// max{2, ||g| - |h||} for connected g and h.
int q_join_upper_bound(const Graph& g, const Graph& h);
/// q(G ∨ P_n) + |H| - n.
int q_join_upper_bound(int q_g_join_path, int path_order, int h_order);

}  // namespace iepg

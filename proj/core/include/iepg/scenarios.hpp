#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iepg/certificate.hpp"
#include "iepg/graph.hpp"
#include "iepg/joinbuild.hpp"
#include "iepg/realize.hpp"

namespace iepg {

struct ScenarioOptions {
  std::uint64_t seed = 0;
  /// Distinct base eigenvalues; drawn from the seed when empty.
  std::vector<double> lambdas;
  double spectral_tol_rel = 1e-8;
};

struct ScenarioResult {
  Certificate certificate;
  Spectrum spectrum;
  /// Grouped multiplicities of the produced matrix, ascending eigenvalues.
  std::vector<int> multiplicities;
  /// Scenario-specific checks.
  Json report = Json::object();
};

/// `count` strictly ascending values with gaps in [0.5, 1.5] drawn from seed.
std::vector<double> seeded_lambdas(int count, std::uint64_t seed);

/// N in S(K1 ∨ C_{4m-2}) with ordered multiplicities (3,1,3,...,1,3).
ScenarioResult wheel_scenario(int m, const ScenarioOptions& options = {});

/// Between any two eigenvalues of multiplicity 3 lies an odd number of
/// eigenvalues (with multiplicity).
bool wheel_parity_ok(const Spectrum& spectrum);

/// N in S(K2 ∨ h), |h| = 3m - 2, with spectrum {λ1^(3), ..., λm^(3)}.
ScenarioResult k2join_scenario(int m, const Graph& h, const ScenarioOptions& options = {});
/// h from a family name: path, cycle, complete or star on 3m - 2 vertices.
Graph k2join_partner(int m, Family family);

/// Two-eigenvalue join of unions of paths with the given component orders.
ScenarioResult diff2_scenario(std::span<const int> orders_g, std::span<const int> orders_h,
                              double mu = 0.0, double nu = 2.0,
                              const ScenarioOptions& options = {});

/// Generalised star with k unit arms and one arm of length |h|, carried to
/// K1 ∨ (k K1 ∪ h) by a partial join without new eigenvalues. The report
/// records whether the unordered multiplicity list is preserved.
ScenarioResult star_scenario(int k, const Graph& h, const ScenarioOptions& options = {});

}  // namespace iepg

#pragma once

// Direct minimization of the divergence from the empirical distribution over
// the Bloch sphere. Shares no machinery with the projector: a deterministic
// nested grid search over spherical angles.

#include <array>
#include <functional>
#include <vector>

#include "blochmle/stokes.hpp"

namespace blochmle {

struct OracleConfig {
  /// Grid points per angle in the coarse scan.
  int coarse_grid = 180;
  int refine_iterations = 200;
  /// Factor applied to the angular window after each refinement pass.
  double refine_shrink = 0.5;
  /// Refinement stops once the angular window is below this (radians).
  double tolerance = 1e-10;
  /// Half-width of the refinement grid, in points per side.
  int refine_points = 4;

  /// Throws DomainError when the configuration is unusable.
  void validate() const;
};

struct SphereSearchResult {
  std::array<double, 3> point{};
  double value = 0.0;
  /// Incumbent objective value after the coarse scan and after every
  /// refinement pass; non-increasing.
  std::vector<double> history;
};

using SphereObjective = std::function<double(const std::array<double, 3>&)>;

/// Minimizes `objective` over the unit sphere. Ties go to the lowest grid index.
[[nodiscard]] SphereSearchResult minimize_on_sphere(const SphereObjective& objective,
                                                    const OracleConfig& cfg);

/// sum_i s_i D_binary(xi_hat_i || xi_i) with 0 log 0 = 0.
[[nodiscard]] double empirical_divergence(const StokesVector& xi, const StokesVector& xi_hat,
                                          const WeightVector& s);

/// Sphere minimizer of empirical_divergence; returns xi_hat itself when
/// |xi_hat| <= 1.
[[nodiscard]] StokesVector oracle_mle(const StokesVector& xi_hat, const WeightVector& s,
                                      const OracleConfig& cfg = {});

/// Same search, also returning the incumbent history.
[[nodiscard]] SphereSearchResult oracle_search(const StokesVector& xi_hat, const WeightVector& s,
                                               const OracleConfig& cfg = {});

/// -sum_i [n+_i log((1+xi_i)/2) + n-_i log((1-xi_i)/2)].
/// Throws DomainError when a positive count meets a zero-probability outcome.
[[nodiscard]] double negative_log_likelihood(const StokesVector& xi, const CountRecord& counts);

}  // namespace blochmle

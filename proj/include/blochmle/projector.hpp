#pragma once

// Maximum-likelihood correction of a temporal estimate that fell outside the
// Bloch ball.
//
// The MLE is the point xi* of the unit sphere satisfying
//
//     xi*_i (1 - xi*_i^2) = lambda s_i (xi_hat_i - xi*_i),   i = 1, 2, 3,
//
// for some lambda > 0. Each equation is a cubic in xi*_i with a unique root in
// (-1, 1), available in closed trigonometric form; the sphere condition then
// becomes one scalar equation in lambda, solved by bracketing.

#include <cstddef>
#include <optional>
#include <vector>

#include "blochmle/stokes.hpp"

namespace blochmle {

struct ProjectionResult {
  StokesVector xi_star;
  /// Multiplier; empty when the input was already inside the ball.
  std::optional<double> lambda_star;
  double norm_residual = 0.0;
  std::array<double, kAxes> equation_residuals{};
  int iterations = 0;
  bool was_projected = false;
  /// Number of decreases seen while sampling the norm residual during bracket
  /// expansion. The residual is increasing in lambda, so anything but zero
  /// points at a numerical problem.
  int monotonicity_violations = 0;
};

/// Result of the scalar root search.
struct LambdaRoot {
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int monotonicity_violations = 0;
};

/// Root x of x (1 - x^2) = mu (a - x) with sgn x = sgn a, |x| <= |a|.
/// Requires mu > 0 and |a| <= 1. For |a| < 1 the root is the unique one in
/// (-1, 1); for |a| = 1 and mu >= 2 it is x = a.
[[nodiscard]] double cubic_solve(double mu, double a);

/// |x (1 - x^2) - mu (a - x)|.
[[nodiscard]] double cubic_residual(double mu, double a, double x);

/// sum_i cubic_solve(lambda s_i, xi_hat_i)^2 - 1. Requires lambda > 0 and
/// |xi_hat| > 1.
[[nodiscard]] double norm_residual_of_lambda(double lambda, const WeightVector& s,
                                             const StokesVector& xi_hat);

/// The positive root of norm_residual_of_lambda.
[[nodiscard]] LambdaRoot solve_lambda(const WeightVector& s, const StokesVector& xi_hat);

/// Projects xi_hat onto the Bloch sphere along the weighted Fisher metric.
/// Points with |xi_hat|^2 <= 1 are returned unchanged.
[[nodiscard]] ProjectionResult project_mle(const StokesVector& xi_hat, const WeightVector& s);

/// The curve lambda -> (cubic_solve(lambda s_i, xi_hat_i))_i sampled at
/// n_samples equally spaced lambda in [0, lambda*]. The first point is the
/// origin and the last is the MLE.
[[nodiscard]] std::vector<StokesVector> projection_trajectory(const StokesVector& xi_hat,
                                                              const WeightVector& s,
                                                              std::size_t n_samples);

}  // namespace blochmle

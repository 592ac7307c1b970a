#include "blochmle/projector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blochmle/errors.hpp"

namespace blochmle {
namespace {

constexpr double kLambdaFloor = 1e-12;
constexpr double kLambdaTolerance = 1e-12;
constexpr int kMaxDoublings = 200;
constexpr int kMaxIterations = 200;
// Rounding can push the arctan radicand slightly below zero near its double
// root (mu = 2, |a| = 1); anything more negative is a logic error.
constexpr double kRadicandSlack = 1e-12;

// x (1 - x^2) - mu (a - x), signed.
double cubic_value(double mu, double a, double x) { return x * (1.0 - x * x) - mu * (a - x); }

void require_exterior(const StokesVector& xi_hat) {
  if (!(norm_squared(xi_hat) > 1.0)) {
    throw DomainError("temporal estimate lies inside the Bloch ball; nothing to project");
  }
}

std::array<double, kAxes> solve_components(double lambda, const WeightVector& s,
                                           const StokesVector& xi_hat) {
  std::array<double, kAxes> x{};
  for (std::size_t i = 0; i < kAxes; ++i) x[i] = cubic_solve(lambda * s[i], xi_hat[i]);
  return x;
}

}  // namespace

double cubic_solve(double mu, double a) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("cubic_solve: mu must be positive");
  if (!(std::abs(a) <= 1.0)) throw DomainError("cubic_solve: |a| must not exceed 1");
  if (a == 0.0) return 0.0;

  // Solve for |a| and restore the sign at the end: x(mu, -a) = -x(mu, a).
  const double b = std::abs(a);
  const double ratio = (mu + 1.0) / mu;
  // 4 (mu+1)^3 / (27 mu^2 b^2) - 1, arranged to avoid overflow of mu^2.
  double radicand = (4.0 / 27.0) * ratio * ratio * (mu + 1.0) / (b * b) - 1.0;
  if (radicand < 0.0) {
    if (radicand < -kRadicandSlack) throw SolverError("cubic_solve: negative discriminant");
    radicand = 0.0;
  }
  const double angle = (std::numbers::pi + std::atan(std::sqrt(radicand))) / 3.0;
  double x = 2.0 * std::sqrt((mu + 1.0) / 3.0) * std::cos(angle);

  // Newton polish; the derivative 1 + mu - 3x^2 is positive at the middle root
  // except at the double root mu = 2, b = 1, where the step is skipped.
  const double r = cubic_value(mu, b, x);
  const double slope = 1.0 + mu - 3.0 * x * x;
  if (slope != 0.0 && r != 0.0) {
    const double polished = x - r / slope;
    if (std::abs(cubic_value(mu, b, polished)) < std::abs(r)) x = polished;
  }
  x = std::clamp(x, 0.0, b);
  return std::copysign(x, a);
}

double cubic_residual(double mu, double a, double x) { return std::abs(cubic_value(mu, a, x)); }

double norm_residual_of_lambda(double lambda, const WeightVector& s, const StokesVector& xi_hat) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("norm_residual_of_lambda: lambda must be positive");
  }
  require_exterior(xi_hat);
  return norm_squared(solve_components(lambda, s, xi_hat)) - 1.0;
}

LambdaRoot solve_lambda(const WeightVector& s, const StokesVector& xi_hat) {
  require_exterior(xi_hat);
  auto f = [&](double lambda) { return norm_squared(solve_components(lambda, s, xi_hat)) - 1.0; };

  LambdaRoot root;
  double lo = kLambdaFloor;
  double f_lo = f(lo);
  if (!(f_lo < 0.0)) throw SolverError("solve_lambda: residual not negative at the lower bracket");

  double hi = 1.0;
  double f_hi = 0.0;
  double previous = f_lo;
  bool bracketed = false;
  for (int k = 0; k <= kMaxDoublings; ++k) {
    f_hi = f(hi);
    ++root.iterations;
    if (f_hi < previous) ++root.monotonicity_violations;
    previous = f_hi;
    if (f_hi >= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
  }
  if (!bracketed) throw SolverError("solve_lambda: bracket expansion failed");

  if (f_hi == 0.0) {
    root.lambda = hi;
    return root;
  }

  // Bisection; geometric midpoints while the bracket spans many decades.
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = (hi > 4.0 * lo) ? std::sqrt(lo * hi) : lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    ++root.iterations;
    if (f_mid == 0.0) {
      root.lambda = mid;
      return root;
    }
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }

  double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double best_f = std::min(std::abs(f_lo), std::abs(f_hi));
  // Final secant step across the bracket.
  const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  if (secant > lo && secant < hi) {
    const double f_sec = f(secant);
    ++root.iterations;
    if (std::abs(f_sec) < best_f) {
      best = secant;
      best_f = std::abs(f_sec);
    }
  }
  if (!(best_f < kLambdaTolerance)) {
    throw SolverError("solve_lambda: residual tolerance not reached");
  }
  root.lambda = best;
  root.residual = best_f;
  return root;
}

ProjectionResult project_mle(const StokesVector& xi_hat, const WeightVector& s) {
  ProjectionResult result;
  const double n2 = norm_squared(xi_hat);
  if (n2 <= 1.0) {
    result.xi_star = xi_hat;
    result.norm_residual = std::abs(n2 - 1.0);
    return result;
  }

  const LambdaRoot root = solve_lambda(s, xi_hat);
  const auto x = solve_components(root.lambda, s, xi_hat);
  result.xi_star = StokesVector(x);
  result.lambda_star = root.lambda;
  result.norm_residual = std::abs(norm_squared(x) - 1.0);
  for (std::size_t i = 0; i < kAxes; ++i) {
    result.equation_residuals[i] = cubic_residual(root.lambda * s[i], xi_hat[i], x[i]);
  }
  result.iterations = root.iterations;
  result.was_projected = true;
  result.monotonicity_violations = root.monotonicity_violations;
  return result;
}

std::vector<StokesVector> projection_trajectory(const StokesVector& xi_hat, const WeightVector& s,
                                                std::size_t n_samples) {
  if (n_samples < 2) throw DomainError("projection_trajectory: need at least two samples");
  require_exterior(xi_hat);
  const double lambda_star = solve_lambda(s, xi_hat).lambda;

  std::vector<StokesVector> curve;
  curve.reserve(n_samples);
  curve.emplace_back(0.0, 0.0, 0.0);
  for (std::size_t k = 1; k < n_samples; ++k) {
    const double lambda = (k + 1 == n_samples)
                              ? lambda_star
                              : lambda_star * static_cast<double>(k) /
                                    static_cast<double>(n_samples - 1);
    curve.emplace_back(solve_components(lambda, s, xi_hat));
  }
  return curve;
}

}  // namespace blochmle

#include "doctest.h"

#include <cmath>

#include "blochmle/errors.hpp"
#include "blochmle/infogeo.hpp"
#include "blochmle/projector.hpp"
#include "blochmle/sampling.hpp"

using namespace blochmle;

namespace {

// Bisection on x -> x(1-x^2) - mu(b-x) over [0, b], b = |a|; negative at 0,
// nonnegative at b.
double bisect_cubic(double mu, double a) {
  if (a == 0.0) return 0.0;
  const double b = std::abs(a);
  double lo = 0.0, hi = b;
  auto g = [&](double x) { return x * (1 - x * x) - mu * (b - x); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::copysign(0.5 * (lo + hi), a);
}

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

}  // namespace

TEST_CASE("cubic root examples") {
  CHECK(cubic_solve(0.3, 0.0) == 0.0);
  CHECK(cubic_solve(1e6, -0.0) == 0.0);
  // mpmath bisection: 0.25865202250415276
  CHECK(std::abs(cubic_solve(1.0, 0.5) - 0.2586) < 1e-3);
  CHECK(cubic_solve(1.0, 0.5) == doctest::Approx(0.25865202250415276).epsilon(1e-14));
  const double boundary = cubic_solve(2.0, 1.0);
  CHECK(cubic_residual(2.0, 1.0, boundary) < 1e-12);
  CHECK(boundary == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(cubic_solve(1000.0, 0.7) - 0.7) < 1e-3);
  CHECK(cubic_solve(1000.0, 0.7) == doctest::Approx(0.69964283239907626).epsilon(1e-14));
}

TEST_CASE("cubic root errors") {
  CHECK_THROWS_AS((void)cubic_solve(0.0, 0.5), DomainError);
  CHECK_THROWS_AS((void)cubic_solve(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS((void)cubic_solve(1.0, 1.5), DomainError);
}

TEST_CASE("cubic root agrees with bisection and satisfies its contract") {
  for (int e = -60; e <= 60; e += 3) {
    const double mu = std::pow(10.0, e / 10.0);
    for (int k = -50; k <= 50; ++k) {
      const double a = k / 50.0;
      const double x = cubic_solve(mu, a);
      CHECK(cubic_residual(mu, a, x) / std::max(1.0, mu) < 1e-12);
      CHECK(std::abs(x - bisect_cubic(mu, a)) < 1e-9);
      if (a != 0.0 && std::abs(a) < 1.0) {
        CHECK(std::signbit(x) == std::signbit(a));
        CHECK(std::abs(x) < std::abs(a));
        CHECK(std::abs(x) < 1.0);
      }
      CHECK(cubic_solve(mu, -a) == -x);
    }
  }
}

TEST_CASE("boundary data |a| = 1") {
  // mu < 2: the interior root (-1 + sqrt(1 + 4 mu)) / 2.
  for (double mu : {1e-3, 0.5, 1.0, 1.9}) {
    CHECK(cubic_solve(mu, 1.0) == doctest::Approx((-1 + std::sqrt(1 + 4 * mu)) / 2).epsilon(1e-12));
  }
  for (double mu : {2.5, 10.0, 1e4}) {
    CHECK(cubic_solve(mu, 1.0) == 1.0);
    CHECK(cubic_solve(mu, -1.0) == -1.0);
  }
}

TEST_CASE("norm residual as a function of lambda") {
  const StokesVector xi_hat(0.8, 0.8, 0.8);
  const WeightVector s;
  CHECK(norm_residual_of_lambda(1e-12, s, xi_hat) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(norm_residual_of_lambda(1e6, s, xi_hat) == doctest::Approx(0.92).epsilon(1e-4));
  const auto root = solve_lambda(s, xi_hat);
  CHECK(std::abs(norm_residual_of_lambda(root.lambda, s, xi_hat)) < 1e-12);
  CHECK_THROWS_AS((void)norm_residual_of_lambda(0.0, s, xi_hat), DomainError);
  CHECK_THROWS_AS((void)norm_residual_of_lambda(1.0, s, StokesVector(0.5, 0.5, 0.5)), DomainError);
}

TEST_CASE("solve lambda") {
  SUBCASE("symmetric case") {
    const auto root = solve_lambda(WeightVector(), StokesVector(0.8, 0.8, 0.8));
    // Back-substituted from xi* = 1/sqrt(3) (mpmath): 5.18617531751109094...
    CHECK(root.lambda == doctest::Approx(5.186175317511091).epsilon(1e-10));
    CHECK(root.monotonicity_violations == 0);
  }
  SUBCASE("boundary component") {
    const StokesVector xi_hat(1.0, 0.3, 0.0);
    const auto root = solve_lambda(WeightVector(), xi_hat);
    CHECK(std::abs(norm_residual_of_lambda(root.lambda, WeightVector(), xi_hat)) < 1e-12);
    CHECK(root.lambda == doctest::Approx(5.818139548798517).epsilon(1e-9));
  }
  SUBCASE("single sign change on a dense grid") {
    const StokesVector xi_hat(0.9, 0.8, 0.5);
    const auto root = solve_lambda(WeightVector(), xi_hat);
    CHECK(root.lambda > 0.0);
    int changes = 0;
    double previous = norm_residual_of_lambda(1e-6, WeightVector(), xi_hat);
    for (int k = 1; k <= 4000; ++k) {
      const double f = norm_residual_of_lambda(1e-6 * std::pow(10.0, k * 0.003), WeightVector(), xi_hat);
      if ((f > 0) != (previous > 0)) ++changes;
      previous = f;
    }
    CHECK(changes == 1);
    CHECK(root.lambda == doctest::Approx(5.805665995834018).epsilon(1e-9));
  }
  CHECK_THROWS_AS((void)solve_lambda(WeightVector(), StokesVector(0.6, 0.0, 0.3)), DomainError);
}

TEST_CASE("project_mle examples") {
  SUBCASE("interior point is returned untouched") {
    const StokesVector xi_hat(0.6, 0.0, 0.3);
    for (const auto& s : {WeightVector(), WeightVector(0.2, 0.5, 0.3)}) {
      const auto r = project_mle(xi_hat, s);
      CHECK_FALSE(r.was_projected);
      CHECK(r.xi_star == xi_hat);
      CHECK_FALSE(r.lambda_star.has_value());
    }
  }
  SUBCASE("unit norm input counts as inside") {
    const auto r = project_mle(StokesVector(1.0, 0.0, 0.0), WeightVector());
    CHECK_FALSE(r.was_projected);
  }
  SUBCASE("symmetric exterior point") {
    const auto r = project_mle(StokesVector(0.8, 0.8, 0.8), WeightVector());
    CHECK(r.was_projected);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.xi_star[i] - kInvSqrt3) < 1e-10);
    CHECK(r.norm_residual < 1e-10);
    REQUIRE(r.lambda_star.has_value());
    CHECK(*r.lambda_star > 0.0);
  }
  SUBCASE("zero component stays zero") {
    const auto r = project_mle(StokesVector(1.0, 0.3, 0.0), WeightVector());
    CHECK(r.xi_star[2] == 0.0);
    CHECK(r.xi_star[0] > 0.0);
    CHECK(r.xi_star[1] > 0.0);
    CHECK(std::abs(r.xi_star[0] * r.xi_star[0] + r.xi_star[1] * r.xi_star[1] - 1.0) < 1e-10);
    // mpmath reference
    CHECK(r.xi_star[0] == doctest::Approx(0.97965531445654793).epsilon(1e-10));
    CHECK(r.xi_star[1] == doctest::Approx(0.20068748056877437).epsilon(1e-9));
  }
  SUBCASE("generic point against the high-precision reference") {
    // Reference from a 40-digit bisection and an independent SLSQP minimization.
    const auto r = project_mle(StokesVector(0.9, 0.8, 0.5), WeightVector());
    CHECK(r.xi_star[0] == doctest::Approx(0.72115275814616592).epsilon(1e-10));
    CHECK(r.xi_star[1] == doctest::Approx(0.60164361289308042).epsilon(1e-10));
    CHECK(r.xi_star[2] == doctest::Approx(0.34345838537316094).epsilon(1e-10));
    const auto w = project_mle(StokesVector(0.9, 0.8, 0.5), WeightVector(0.25, 0.5, 0.25));
    CHECK(w.xi_star[0] == doctest::Approx(0.65924535416588631).epsilon(1e-10));
    CHECK(w.xi_star[1] == doctest::Approx(0.68221768096388532).epsilon(1e-10));
    CHECK(w.xi_star[2] == doctest::Approx(0.31618760062809785).epsilon(1e-10));
  }
}

TEST_CASE("projection properties on random exterior points") {
  InstanceSampler rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const auto xi_hat = rng.exterior();
    const auto s = rng.weights();
    const auto r = project_mle(xi_hat, s);
    REQUIRE(r.was_projected);
    CHECK(r.norm_residual < 1e-10);
    for (double e : r.equation_residuals) CHECK(e < 1e-10);
    CHECK(r.monotonicity_violations == 0);
    const double best = sliced_divergence(xi_hat, r.xi_star, s);
    if (t < 20) {
      for (int k = 0; k < 200; ++k) {
        const auto p = rng.sphere_point();
        const StokesVector other(std::clamp(p[0], -1.0, 1.0), std::clamp(p[1], -1.0, 1.0),
                                 std::clamp(p[2], -1.0, 1.0));
        CHECK(best <= sliced_divergence(xi_hat, other, s) + 1e-12);
      }
    }
  }
}

TEST_CASE("projection trajectory") {
  const StokesVector xi_hat(0.9, 0.8, 0.5);
  const auto curve = projection_trajectory(xi_hat, WeightVector(), 25);
  REQUIRE(curve.size() == 25);
  CHECK(curve.front() == StokesVector(0, 0, 0));
  const auto r = project_mle(xi_hat, WeightVector());
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(curve.back()[i] - r.xi_star[i]) < 1e-10);

  const auto planar = projection_trajectory(StokesVector(0.9, 0.9, 0.0), WeightVector(), 40);
  for (const auto& p : planar) CHECK(p[2] == 0.0);
  // Norm grows monotonically along the curve.
  for (std::size_t k = 1; k < planar.size(); ++k) {
    CHECK(norm_squared(planar[k]) >= norm_squared(planar[k - 1]));
  }

  CHECK_THROWS_AS((void)projection_trajectory(xi_hat, WeightVector(), 1), DomainError);
  CHECK_THROWS_AS((void)projection_trajectory(StokesVector(0.1, 0, 0), WeightVector(), 5), DomainError);
}

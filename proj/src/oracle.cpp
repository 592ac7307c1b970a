#include "blochmle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blochmle/errors.hpp"
#include "blochmle/infogeo.hpp"

namespace blochmle {
namespace {

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(norm_squared(v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

// Spherical chart whose equator passes through `center` at zero longitude, so
// the incumbent never sits on a pole or on the longitude seam.
struct LocalChart {
  Vec3 center;
  Vec3 east;
  Vec3 north;

  explicit LocalChart(const Vec3& c) : center(c) {
    std::size_t weakest = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::abs(c[i]) < std::abs(c[weakest])) weakest = i;
    }
    Vec3 axis{};
    axis[weakest] = 1.0;
    east = normalized(cross(axis, c));
    north = cross(c, east);
  }

  [[nodiscard]] Vec3 at(double latitude, double longitude) const {
    const double cl = std::cos(latitude);
    const double a = cl * std::cos(longitude);
    const double b = cl * std::sin(longitude);
    const double c = std::sin(latitude);
    return {a * center[0] + b * east[0] + c * north[0],
            a * center[1] + b * east[1] + c * north[1],
            a * center[2] + b * east[2] + c * north[2]};
  }
};

double safe_value(const SphereObjective& objective, const Vec3& p) {
  const double v = objective(p);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

void OracleConfig::validate() const {
  if (coarse_grid < 8) throw DomainError("oracle: coarse_grid must be at least 8");
  if (refine_iterations < 0) throw DomainError("oracle: refine_iterations must be nonnegative");
  if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) {
    throw DomainError("oracle: refine_shrink must lie in (0, 1)");
  }
  if (!(tolerance > 0.0)) throw DomainError("oracle: tolerance must be positive");
  if (refine_points < 1) throw DomainError("oracle: refine_points must be positive");
}

SphereSearchResult minimize_on_sphere(const SphereObjective& objective, const OracleConfig& cfg) {
  cfg.validate();
  const int n = cfg.coarse_grid;
  const double polar_step = std::numbers::pi / n;
  const double azimuth_step = 2.0 * std::numbers::pi / n;

  SphereSearchResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int j = 0; j < n; ++j) {
    const double polar = polar_step * (j + 0.5);
    for (int k = 0; k < n; ++k) {
      const Vec3 p = from_angles(polar, azimuth_step * k);
      const double v = safe_value(objective, p);
      if (!found || v < best.value) {
        best.point = p;
        best.value = v;
        found = true;
      }
    }
  }
  best.history.push_back(best.value);

  const int m = cfg.refine_points;
  double window = azimuth_step;
  for (int it = 0; it < cfg.refine_iterations && window >= cfg.tolerance; ++it) {
    const LocalChart chart(best.point);
    Vec3 incumbent = best.point;
    double incumbent_value = best.value;
    for (int a = -m; a <= m; ++a) {
      for (int b = -m; b <= m; ++b) {
        if (a == 0 && b == 0) continue;
        const Vec3 p = chart.at(window * a / m, window * b / m);
        const double v = safe_value(objective, p);
        if (v < incumbent_value) {
          incumbent = p;
          incumbent_value = v;
        }
      }
    }
    best.point = incumbent;
    best.value = incumbent_value;
    best.history.push_back(best.value);
    window *= cfg.refine_shrink;
  }
  return best;
}

double empirical_divergence(const StokesVector& xi, const StokesVector& xi_hat,
                            const WeightVector& s) {
  return sliced_divergence(xi_hat, xi, s);
}

SphereSearchResult oracle_search(const StokesVector& xi_hat, const WeightVector& s,
                                 const OracleConfig& cfg) {
  auto objective = [&](const Vec3& p) {
    // Trig round-off can leave a component a hair outside [-1, 1].
    const StokesVector xi(std::clamp(p[0], -1.0, 1.0), std::clamp(p[1], -1.0, 1.0),
                          std::clamp(p[2], -1.0, 1.0));
    return empirical_divergence(xi, xi_hat, s);
  };
  return minimize_on_sphere(objective, cfg);
}

StokesVector oracle_mle(const StokesVector& xi_hat, const WeightVector& s,
                        const OracleConfig& cfg) {
  cfg.validate();
  if (norm_squared(xi_hat) <= 1.0) return xi_hat;
  const Vec3 p = oracle_search(xi_hat, s, cfg).point;
  return StokesVector(std::clamp(p[0], -1.0, 1.0), std::clamp(p[1], -1.0, 1.0),
                      std::clamp(p[2], -1.0, 1.0));
}

double negative_log_likelihood(const StokesVector& xi, const CountRecord& counts) {
  double nll = 0.0;
  for (std::size_t i = 0; i < kAxes; ++i) {
    const auto& c = counts.axis(i);
    const double p_plus = 0.5 * (1.0 + xi[i]);
    const double p_minus = 0.5 * (1.0 - xi[i]);
    if (c.n_plus > 0) {
      if (!(p_plus > 0.0)) throw DomainError("negative_log_likelihood: xi_i = -1 with n+_i > 0");
      nll -= static_cast<double>(c.n_plus) * std::log(p_plus);
    }
    if (c.n_minus > 0) {
      if (!(p_minus > 0.0)) throw DomainError("negative_log_likelihood: xi_i = 1 with n-_i > 0");
      nll -= static_cast<double>(c.n_minus) * std::log(p_minus);
    }
  }
  return nll;
}

}  // namespace blochmle

#include "blochmle/checks.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "blochmle/errors.hpp"
#include "blochmle/infogeo.hpp"
#include "blochmle/projector.hpp"
#include "blochmle/sampling.hpp"
#include "blochmle/simulator.hpp"

namespace blochmle {
namespace {

using Vec3 = std::array<double, 3>;

CheckResult below(std::string name, double worst, double threshold) {
  return {std::move(name), worst < threshold, fmt::format("worst {:.3e} (limit {:.0e})", worst, threshold)};
}

CheckResult holds(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

StokesVector permuted(const StokesVector& v, const std::array<std::size_t, 3>& perm) {
  return StokesVector(v[perm[0]], v[perm[1]], v[perm[2]]);
}

WeightVector permuted(const WeightVector& w, const std::array<std::size_t, 3>& perm) {
  return WeightVector(w[perm[0]], w[perm[1]], w[perm[2]]);
}

// Orthonormal basis of the plane orthogonal to the unit vector n.
std::array<Vec3, 2> tangent_basis(const Vec3& n) {
  std::size_t weakest = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[weakest])) weakest = i;
  }
  Vec3 t1{};
  t1[weakest] = 1.0;
  const double proj = t1[0] * n[0] + t1[1] * n[1] + t1[2] * n[2];
  for (std::size_t i = 0; i < 3; ++i) t1[i] -= proj * n[i];
  const double len = std::sqrt(norm_squared(t1));
  for (double& c : t1) c /= len;
  const Vec3 t2{n[1] * t1[2] - n[2] * t1[1], n[2] * t1[0] - n[0] * t1[2],
                n[0] * t1[1] - n[1] * t1[0]};
  return {t1, t2};
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<CheckResult> run_infogeo_suite(std::uint64_t seed) {
  InstanceSampler rng(seed);
  std::vector<CheckResult> out;

  {
    double most_negative = 0.0;
    double self = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto s1 = rng.weights();
      const auto s2 = rng.weights();
      const auto p = randomized_distribution(s1, rng.interior());
      const auto q = randomized_distribution(s2, rng.interior());
      most_negative = std::min(most_negative, kl_divergence(p, q));
      self = std::max(self, std::abs(kl_divergence(p, p)));
    }
    out.push_back(holds("gibbs inequality", most_negative >= 0.0 && self < 1e-12,
                        fmt::format("min D(p||q) {:.3e}, max |D(p||p)| {:.3e}", most_negative, self)));
  }

  for (std::size_t k = 1; k <= 3; ++k) {
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto a = rng.box(0.99);
      const auto b = rng.box(0.99);
      const std::span<const double> pa(a.data(), k);
      const std::span<const double> pb(b.data(), k);
      const double canonical = canonical_divergence(pa, pb);
      const double direct = kl_divergence(product_distribution(pa), product_distribution(pb));
      worst = std::max(worst, std::abs(canonical - direct));
    }
    out.push_back(below(fmt::format("canonical divergence equals KL (k={})", k), worst, 1e-10));
  }

  {
    double identity = 0.0;
    double gradient = 0.0;
    constexpr double h = 1e-6;
    for (int t = 0; t < 100; ++t) {
      const auto xi = rng.box(0.99);
      const auto dc = dual_coordinates(xi);
      double pairing = 0.0;
      for (std::size_t i = 0; i < 3; ++i) pairing += dc.theta[i] * dc.eta[i];
      identity = std::max(identity, std::abs(dc.psi + dc.phi - pairing));
      for (std::size_t i = 0; i < 3; ++i) {
        auto up = dc.theta;
        auto down = dc.theta;
        up[i] += h;
        down[i] -= h;
        const double d = (log_partition(up) - log_partition(down)) / (2.0 * h);
        gradient = std::max(gradient, std::abs(d - dc.eta[i]));
      }
    }
    out.push_back(below("legendre identity psi + phi = theta.eta", identity, 1e-10));
    out.push_back(below("eta = grad psi (central differences)", gradient, 1e-6));
  }

  {
    double diag = 0.0;
    double off = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto xi = rng.interior();
      const auto s = rng.weights();
      const Matrix3 a = fisher_metric(xi, s);
      const Matrix3 e = fisher_information_by_expectation(xi, s);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          diag = std::max(diag, std::abs(a[i][j] - e[i][j]));
          if (i != j) off = std::max(off, std::abs(e[i][j]));
        }
      }
    }
    out.push_back(below("fisher metric matches outcome expectation", diag, 1e-8));
    out.push_back(below("fisher metric off-diagonal vanishes", off, 1e-8));
  }

  {
    double worst = 0.0;
    double leaf = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto s = rng.weights();
      const auto xi = rng.interior();
      worst = std::max(worst, foliation_orthogonality_defect(s, xi));
      const auto a = foliation_coordinates(s, xi);
      const auto b = foliation_coordinates(rng.weights(), xi);
      for (std::size_t i = 2; i < 5; ++i) leaf = std::max(leaf, std::abs(a.theta[i] - b.theta[i]));
    }
    out.push_back(below("foliation leaves are Fisher-orthogonal", worst, 1e-8));
    out.push_back(below("theta3..theta5 independent of s", leaf, 1e-12));
  }

  {
    double decomposition = 0.0;
    double pythagoras = 0.0;
    for (int t = 0; t < 100; ++t) {
      const auto s_hat = rng.weights();
      const auto s = rng.weights();
      const auto xi_hat = rng.interior();
      const auto xi = rng.interior();
      const auto q_hat = randomized_distribution(s_hat, xi_hat);
      const double lhs = kl_divergence(q_hat, randomized_distribution(s_hat, xi));
      double marginal = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double a[1] = {xi_hat[i]};
        const double b[1] = {xi[i]};
        marginal += s_hat[i] * kl_divergence(product_distribution(a), product_distribution(b));
      }
      decomposition = std::max(decomposition, std::abs(lhs - marginal));

      const double full = kl_divergence(q_hat, randomized_distribution(s, xi));
      const double split = lhs + kl_divergence(randomized_distribution(s_hat, xi),
                                               randomized_distribution(s, xi));
      pythagoras = std::max(pythagoras, std::abs(full - split));
    }
    out.push_back(below("divergence decomposes over axis slices", decomposition, 1e-12));
    out.push_back(below("pythagorean split across the foliation", pythagoras, 1e-10));
  }
  return out;
}

std::vector<CheckResult> run_projector_suite(std::uint64_t seed) {
  InstanceSampler rng(seed);
  std::vector<CheckResult> out;

  {
    double eq = 0.0;
    double norm = 0.0;
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto r = project_mle(rng.exterior(), rng.weights());
      for (double v : r.equation_residuals) eq = std::max(eq, v);
      norm = std::max(norm, r.norm_residual);
      violations += r.monotonicity_violations;
    }
    out.push_back(below("projection equation residuals", eq, 1e-10));
    out.push_back(below("projection lands on the sphere", norm, 1e-10));
    out.push_back(holds("lambda residual sampled monotone", violations == 0,
                        fmt::format("{} decreases seen", violations)));
  }

  {
    int failures = 0;
    for (int t = 0; t < 500; ++t) {
      auto v = rng.box(1.0);
      // Exercise zero components too.
      if (t % 5 == 0) v[t % 3] = 0.0;
      if (norm_squared(v) <= 1.0) continue;
      const StokesVector xi_hat(v);
      const auto r = project_mle(xi_hat, rng.weights());
      for (std::size_t i = 0; i < 3; ++i) {
        const double a = xi_hat[i];
        const double x = r.xi_star[i];
        const bool ok = (a == 0.0) ? x == 0.0
                                   : (std::signbit(a) == std::signbit(x) && std::abs(x) < std::abs(a));
        if (!ok) ++failures;
      }
    }
    out.push_back(holds("shrinkage toward the origin preserves signs", failures == 0,
                        fmt::format("{} violating components", failures)));
  }

  {
    double worst = 0.0;
    int skipped = 0;
    for (int t = 0; t < 500; ++t) {
      const auto xi_hat = rng.exterior();
      const auto s = rng.weights();
      const auto r = project_mle(xi_hat, s);
      const auto& x = r.xi_star.values();
      if (!r.xi_star.is_interior() ||
          std::any_of(x.begin(), x.end(), [](double c) { return std::abs(c) > 1.0 - 1e-9; })) {
        ++skipped;
        continue;
      }
      const Matrix3 g = fisher_metric(r.xi_star, s);
      const Vec3 v{xi_hat[0] - x[0], xi_hat[1] - x[1], xi_hat[2] - x[2]};
      for (const auto& t_vec : tangent_basis(x)) {
        worst = std::max(worst, std::abs(metric_inner(g, v, t_vec)));
      }
    }
    auto res = below("correction is Fisher-orthogonal to the sphere", worst, 1e-8);
    res.detail += fmt::format(", {} skipped", skipped);
    out.push_back(res);
  }

  {
    double worst_gap = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto xi_hat = rng.exterior();
      const auto s = rng.weights();
      const double best = sliced_divergence(xi_hat, project_mle(xi_hat, s).xi_star, s);
      for (int k = 0; k < 200; ++k) {
        const auto p = rng.sphere_point();
        const StokesVector r(std::clamp(p[0], -1.0, 1.0), std::clamp(p[1], -1.0, 1.0),
                             std::clamp(p[2], -1.0, 1.0));
        worst_gap = std::max(worst_gap, best - sliced_divergence(xi_hat, r, s));
      }
    }
    out.push_back(holds("projection minimizes divergence over sphere samples", worst_gap <= 1e-12,
                        fmt::format("max D(p*) - D(r) {:.3e}", worst_gap)));
  }

  {
    double worst = 0.0;
    const std::array<std::array<std::size_t, 3>, 2> perms{{{1, 2, 0}, {2, 1, 0}}};
    for (int t = 0; t < 200; ++t) {
      const auto xi_hat = rng.exterior();
      const auto s = rng.weights();
      const auto base = project_mle(xi_hat, s).xi_star;
      for (const auto& perm : perms) {
        const auto moved = project_mle(permuted(xi_hat, perm), permuted(s, perm)).xi_star;
        for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(moved[i] - base[perm[i]]));
      }
      auto flipped = xi_hat.values();
      const std::size_t axis = static_cast<std::size_t>(t % 3);
      flipped[axis] = -flipped[axis];
      const auto f = project_mle(StokesVector(flipped), s).xi_star;
      for (std::size_t i = 0; i < 3; ++i) {
        const double expect = (i == axis) ? -base[i] : base[i];
        worst = std::max(worst, std::abs(f[i] - expect));
      }
    }
    out.push_back(below("permutation and sign equivariance", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (int e = -60; e <= 60; ++e) {
      const double mu = std::pow(10.0, e / 10.0);
      for (int k = -100; k <= 100; ++k) {
        const double a = k / 100.0;
        const double x = cubic_solve(mu, a);
        worst = std::max(worst, cubic_residual(mu, a, x) / std::max(1.0, mu));
      }
    }
    out.push_back(below("cubic root back-substitution (scaled by max(1, mu))", worst, 1e-12));
  }

  {
    int decreases = 0;
    for (int t = 0; t < 50; ++t) {
      const auto xi_hat = rng.exterior();
      const auto s = rng.weights();
      double previous = -1.0;
      for (int e = -60; e <= 60; ++e) {
        const double f = norm_residual_of_lambda(std::pow(10.0, e / 10.0), s, xi_hat);
        if (f < previous) ++decreases;
        previous = f;
      }
    }
    out.push_back(holds("norm residual non-decreasing in lambda", decreases == 0,
                        fmt::format("{} decreases on log grid", decreases)));
  }
  return out;
}

std::vector<CheckResult> run_simulator_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  InstanceSampler rng(seed);

  {
    const SimulationSpec spec{StokesVector(0.3, -0.2, 0.5), RandomizedMode{WeightVector(), 5000},
                              seed};
    const SimulationSpec standard{StokesVector(0.3, -0.2, 0.5), StandardMode{2000}, seed};
    const bool ok = simulate(spec) == simulate(spec) && simulate(standard) == simulate(standard);
    out.push_back(holds("same seed reproduces counts", ok, ok ? "identical" : "mismatch"));
  }

  {
    const SimulationSpec spec{StokesVector(1.0, 0.0, 0.0), StandardMode{1000}, seed};
    const auto c = simulate(spec);
    out.push_back(holds("pure state never yields the forbidden outcome", c.axis(0).n_minus == 0,
                        fmt::format("n-_1 = {}", c.axis(0).n_minus)));
  }

  {
    const SimulationSpec spec{StokesVector(0.0, 0.0, 0.0), StandardMode{1000000}, seed};
    const auto [xi_hat, s_hat] = temporal_estimate(simulate(spec));
    double worst = 0.0;
    for (double v : xi_hat.values()) worst = std::max(worst, std::abs(v));
    out.push_back(below("maximally mixed state, N = 1e6: |xi_hat| small", worst, 0.01));
  }

  {
    const std::int64_t n = 300000;
    double worst_sigma = 0.0;
    for (const WeightVector& s : {WeightVector(), WeightVector(0.5, 0.3, 0.2)}) {
      const SimulationSpec spec{rng.interior(0.5), RandomizedMode{s, n}, seed};
      const auto c = simulate(spec);
      for (std::size_t i = 0; i < 3; ++i) {
        const double frac = static_cast<double>(c.axis_total(i)) / static_cast<double>(n);
        const double sigma = std::sqrt(s[i] * (1.0 - s[i]) / static_cast<double>(n));
        worst_sigma = std::max(worst_sigma, std::abs(frac - s[i]) / sigma);
      }
    }
    out.push_back(below("randomized axis fractions within 5 sigma of s", worst_sigma, 5.0));
  }

  {
    const StokesVector truth(0.48, 0.6, 0.64);
    const std::vector<double> sizes{1e2, 1e3, 1e4, 1e5};
    std::vector<double> rmse;
    std::vector<double> medians;
    for (double n : sizes) {
      std::vector<double> errors;
      for (std::uint64_t k = 0; k < 100; ++k) {
        const SimulationSpec spec{truth, RandomizedMode{WeightVector(), static_cast<std::int64_t>(n)},
                                  seed * 1000 + k};
        const auto [xi_hat, s_hat] = temporal_estimate(simulate(spec));
        const auto x = project_mle(xi_hat, s_hat).xi_star;
        double d2 = 0.0;
        for (std::size_t i = 0; i < 3; ++i) d2 += (x[i] - truth[i]) * (x[i] - truth[i]);
        errors.push_back(std::sqrt(d2));
      }
      double mse = 0.0;
      for (double e : errors) mse += e * e;
      rmse.push_back(std::sqrt(mse / static_cast<double>(errors.size())));
      std::nth_element(errors.begin(), errors.begin() + 50, errors.end());
      medians.push_back(errors[50]);
    }
    const double slope = loglog_slope(sizes, rmse);
    const double median_slope = loglog_slope(sizes, medians);
    const bool decreasing = std::is_sorted(medians.rbegin(), medians.rend());
    out.push_back(holds("consistency: RMSE log-log slope -0.5 +/- 0.15", std::abs(slope + 0.5) <= 0.15,
                        fmt::format("slope {:.4f}", slope)));
    out.push_back(holds("consistency: median error decreasing, slope -0.5 +/- 0.15",
                        decreasing && std::abs(median_slope + 0.5) <= 0.15,
                        fmt::format("slope {:.4f}", median_slope)));
  }
  return out;
}

std::vector<CheckResult> run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "infogeo") return run_infogeo_suite(seed);
  if (name == "projector") return run_projector_suite(seed);
  if (name == "simulator") return run_simulator_suite(seed);
  if (name == "all") {
    auto all = run_infogeo_suite(seed);
    for (auto& r : run_projector_suite(seed)) all.push_back(std::move(r));
    for (auto& r : run_simulator_suite(seed)) all.push_back(std::move(r));
    return all;
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

}  // namespace blochmle

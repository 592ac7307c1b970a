#include "blochmle/infogeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blochmle/errors.hpp"

namespace blochmle {
namespace {

void require_open_interval(std::span<const double> xi, const char* what) {
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!(std::abs(xi[i]) < 1.0)) {
      throw DomainError(std::string(what) + ": component " + std::to_string(i + 1) +
                        " must lie in (-1, 1)");
    }
  }
}

void require_dimension(std::span<const double> xi) {
  if (xi.empty() || xi.size() > 3) {
    throw DomainError("product model dimension must be 1, 2 or 3");
  }
}

// Stable log(1 + e^t).
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

// d p / d xi_i for the 6-outcome model.
std::array<double, 6> dp_dxi(const WeightVector& s, std::size_t i) {
  std::array<double, 6> d{};
  d[2 * i] = 0.5 * s[i];
  d[2 * i + 1] = -0.5 * s[i];
  return d;
}

// d p / d s_j for j in {0, 1}; s_3 = 1 - s_1 - s_2 moves against s_j.
std::array<double, 6> dp_ds(const StokesVector& xi, std::size_t j) {
  std::array<double, 6> d{};
  d[2 * j] = 0.5 * (1.0 + xi[j]);
  d[2 * j + 1] = 0.5 * (1.0 - xi[j]);
  d[4] = -0.5 * (1.0 + xi[2]);
  d[5] = -0.5 * (1.0 - xi[2]);
  return d;
}

double fisher_pair(const FiniteDistribution& p, const std::array<double, 6>& du,
                   const std::array<double, 6>& dv) {
  double g = 0.0;
  for (std::size_t w = 0; w < 6; ++w) g += du[w] * dv[w] / p[w];
  return g;
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("distribution over an empty outcome set");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] > 0.0) || !std::isfinite(probs_[i])) {
      throw DomainError("probability " + std::to_string(i) + " must be strictly positive");
    }
    sum += probs_[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("probabilities must sum to 1");
  }
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.size() != q.size()) {
    throw DomainError("kl_divergence: outcome sets differ in size");
  }
  double d = 0.0;
  for (std::size_t w = 0; w < p.size(); ++w) d += p[w] * std::log(p[w] / q[w]);
  return d;
}

FiniteDistribution product_distribution(std::span<const double> xi) {
  require_dimension(xi);
  require_open_interval(xi, "product_distribution");
  const std::size_t k = xi.size();
  const std::size_t n = std::size_t{1} << k;
  std::vector<double> probs(n);
  for (std::size_t w = 0; w < n; ++w) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      // Bit (k-1-i) of w selects the outcome of axis i; 0 means +1.
      const bool minus = ((w >> (k - 1 - i)) & 1U) != 0;
      p *= minus ? 0.5 * (1.0 - xi[i]) : 0.5 * (1.0 + xi[i]);
    }
    probs[w] = p;
  }
  return FiniteDistribution(std::move(probs));
}

FiniteDistribution randomized_distribution(const WeightVector& s, const StokesVector& xi) {
  require_open_interval(xi.values(), "randomized_distribution");
  std::vector<double> probs(6);
  for (std::size_t i = 0; i < kAxes; ++i) {
    probs[2 * i] = s[i] * 0.5 * (1.0 + xi[i]);
    probs[2 * i + 1] = s[i] * 0.5 * (1.0 - xi[i]);
  }
  return FiniteDistribution(std::move(probs));
}

double log_partition(std::span<const double> theta) {
  double psi = 0.0;
  for (double t : theta) psi += softplus(t);
  return psi;
}

double negative_entropy(std::span<const double> eta) {
  double phi = 0.0;
  for (double e : eta) {
    if (!(e > 0.0 && e < 1.0)) throw DomainError("expectation coordinate outside (0, 1)");
    phi += e * std::log(e) + (1.0 - e) * std::log1p(-e);
  }
  return phi;
}

DualCoordinates dual_coordinates(std::span<const double> xi) {
  require_dimension(xi);
  require_open_interval(xi, "dual_coordinates");
  DualCoordinates dc;
  dc.theta.reserve(xi.size());
  dc.eta.reserve(xi.size());
  for (double x : xi) {
    dc.theta.push_back(std::log1p(x) - std::log1p(-x));
    dc.eta.push_back(0.5 * (1.0 + x));
  }
  dc.psi = log_partition(dc.theta);
  dc.phi = negative_entropy(dc.eta);
  return dc;
}

double canonical_divergence(std::span<const double> p_xi, std::span<const double> q_xi) {
  if (p_xi.size() != q_xi.size()) {
    throw DomainError("canonical_divergence: dimension mismatch");
  }
  const DualCoordinates p = dual_coordinates(p_xi);
  const DualCoordinates q = dual_coordinates(q_xi);
  double pairing = 0.0;
  for (std::size_t i = 0; i < p_xi.size(); ++i) pairing += q.theta[i] * p.eta[i];
  return q.psi + p.phi - pairing;
}

Matrix3 fisher_metric(const StokesVector& xi, const WeightVector& s) {
  require_open_interval(xi.values(), "fisher_metric");
  Matrix3 g{};
  for (std::size_t i = 0; i < kAxes; ++i) g[i][i] = s[i] / (1.0 - xi[i] * xi[i]);
  return g;
}

Matrix3 fisher_information_by_expectation(const StokesVector& xi, const WeightVector& s) {
  const FiniteDistribution p = randomized_distribution(s, xi);
  // score[i][w] = d log p(w) / d xi_i
  std::array<std::array<double, 6>, 3> score{};
  for (std::size_t i = 0; i < kAxes; ++i) {
    const auto dp = dp_dxi(s, i);
    for (std::size_t w = 0; w < 6; ++w) score[i][w] = dp[w] / p[w];
  }
  Matrix3 g{};
  for (std::size_t i = 0; i < kAxes; ++i) {
    for (std::size_t j = 0; j < kAxes; ++j) {
      double e = 0.0;
      for (std::size_t w = 0; w < 6; ++w) e += p[w] * score[i][w] * score[j][w];
      g[i][j] = e;
    }
  }
  return g;
}

double metric_inner(const Matrix3& g, const std::array<double, 3>& u,
                    const std::array<double, 3>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) acc += u[i] * g[i][j] * v[j];
  }
  return acc;
}

FoliationCoordinates foliation_coordinates(const WeightVector& s, const StokesVector& xi) {
  require_open_interval(xi.values(), "foliation_coordinates");
  FoliationCoordinates fc;
  fc.eta = {s[0], s[1], s[0] * xi[0], s[1] * xi[1], (1.0 - s[0] - s[1]) * xi[2]};
  const auto& e = fc.eta;
  const double rest = 1.0 - e[0] - e[1];
  const double third = std::log((rest + e[4]) * (rest - e[4]));
  fc.theta[0] = 0.5 * (std::log((e[0] + e[2]) * (e[0] - e[2])) - third);
  fc.theta[1] = 0.5 * (std::log((e[1] + e[3]) * (e[1] - e[3])) - third);
  fc.theta[2] = 0.5 * std::log((e[0] + e[2]) / (e[0] - e[2]));
  fc.theta[3] = 0.5 * std::log((e[1] + e[3]) / (e[1] - e[3]));
  fc.theta[4] = 0.5 * std::log((rest + e[4]) / (rest - e[4]));
  return fc;
}

double foliation_orthogonality_defect(const WeightVector& s, const StokesVector& xi) {
  const FiniteDistribution p = randomized_distribution(s, xi);
  double defect = 0.0;
  for (std::size_t i = 0; i < kAxes; ++i) {
    const auto du = dp_dxi(s, i);
    for (std::size_t j = 0; j < 2; ++j) {
      defect = std::max(defect, std::abs(fisher_pair(p, du, dp_ds(xi, j))));
    }
  }
  return defect;
}

double binary_divergence(double a, double b) {
  if (!(std::abs(a) <= 1.0) || !(std::abs(b) <= 1.0)) {
    throw DomainError("binary_divergence: arguments must lie in [-1, 1]");
  }
  double d = 0.0;
  const double pa = 0.5 * (1.0 + a);
  const double ma = 0.5 * (1.0 - a);
  if (pa > 0.0) {
    const double pb = 0.5 * (1.0 + b);
    if (pb <= 0.0) return std::numeric_limits<double>::infinity();
    d += pa * std::log(pa / pb);
  }
  if (ma > 0.0) {
    const double mb = 0.5 * (1.0 - b);
    if (mb <= 0.0) return std::numeric_limits<double>::infinity();
    d += ma * std::log(ma / mb);
  }
  return d;
}

double sliced_divergence(const StokesVector& xi_hat, const StokesVector& xi,
                         const WeightVector& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < kAxes; ++i) d += s[i] * binary_divergence(xi_hat[i], xi[i]);
  return d;
}

}  // namespace blochmle

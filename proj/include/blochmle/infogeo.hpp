#pragma once

// Information geometry of the finite outcome spaces used in Pauli tomography:
//
//   * product Bernoulli models over {+1,-1}^k (k <= 3), ordered
//     lexicographically with +1 before -1 and axis 1 outermost;
//   * the 6-outcome randomized-tomography model, ordered
//     (sigma1,+1), (sigma1,-1), (sigma2,+1), (sigma2,-1), (sigma3,+1), (sigma3,-1).
//
// All logarithms are natural.

#include <array>
#include <span>
#include <vector>

#include "blochmle/stokes.hpp"

namespace blochmle {

/// Strictly positive probability vector over a fixed finite outcome set.
class FiniteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit FiniteDistribution(std::vector<double> probs);

  [[nodiscard]] std::size_t size() const { return probs_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return probs_[i]; }
  [[nodiscard]] std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Natural/expectation coordinates of a product Bernoulli point and the
/// values of the two Legendre-dual potentials there.
struct DualCoordinates {
  std::vector<double> theta;
  std::vector<double> eta;
  double psi = 0.0;
  double phi = 0.0;
};

/// 5-dimensional mixed coordinates of the randomized-tomography simplex.
struct FoliationCoordinates {
  std::array<double, 5> eta{};
  std::array<double, 5> theta{};
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// D(p||q) = sum p log(p/q).
[[nodiscard]] double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

/// 2^k-outcome product distribution, k = xi.size() in {1, 2, 3}, |xi_i| < 1.
[[nodiscard]] FiniteDistribution product_distribution(std::span<const double> xi);

/// The 6-outcome vector (s_i (1 + xi_i)/2, s_i (1 - xi_i)/2)_i.
[[nodiscard]] FiniteDistribution randomized_distribution(const WeightVector& s,
                                                         const StokesVector& xi);

/// theta^i = log((1+xi_i)/(1-xi_i)), eta_i = (1+xi_i)/2, psi and phi at that point.
[[nodiscard]] DualCoordinates dual_coordinates(std::span<const double> xi);

/// psi(theta) = sum_i log(1 + exp(theta^i)).
[[nodiscard]] double log_partition(std::span<const double> theta);

/// phi(eta) = sum_i [eta_i log eta_i + (1 - eta_i) log(1 - eta_i)], eta_i in (0,1).
[[nodiscard]] double negative_entropy(std::span<const double> eta);

/// Canonical divergence of the product manifold,
///   psi(theta(q)) + phi(eta(p)) - theta(q) . eta(p),
/// evaluated from the potentials only (no outcome-wise sum).
[[nodiscard]] double canonical_divergence(std::span<const double> p_xi,
                                          std::span<const double> q_xi);

/// Diagonal metric s_i / (1 - xi_i^2). Requires an interior point.
[[nodiscard]] Matrix3 fisher_metric(const StokesVector& xi, const WeightVector& s);

/// Fisher information of randomized_distribution(s, xi) with respect to xi,
/// computed as the expectation of score products over the six outcomes.
[[nodiscard]] Matrix3 fisher_information_by_expectation(const StokesVector& xi,
                                                        const WeightVector& s);

/// g(u, v) = sum_ij u_i g_ij v_j.
[[nodiscard]] double metric_inner(const Matrix3& g, const std::array<double, 3>& u,
                                  const std::array<double, 3>& v);

/// Mixed (eta_1..eta_5; theta^1..theta^5) coordinates of p_(s, xi).
[[nodiscard]] FoliationCoordinates foliation_coordinates(const WeightVector& s,
                                                         const StokesVector& xi);

/// max_{i, j} |g(d/dxi_i, d/ds_j)| on the 6-outcome model, j over the two free
/// weights (s_3 = 1 - s_1 - s_2).
[[nodiscard]] double foliation_orthogonality_defect(const WeightVector& s,
                                                    const StokesVector& xi);

/// Binary divergence D(((1+a)/2, (1-a)/2) || ((1+b)/2, (1-b)/2)), with the
/// 0 log 0 = 0 convention for |a| = 1. Returns +inf when b puts zero mass
/// on an outcome that a does not.
[[nodiscard]] double binary_divergence(double a, double b);

/// D(p_(s, xi_hat) || p_(s, xi)) = sum_i s_i binary_divergence(xi_hat_i, xi_i).
/// Accepts boundary components (0 log 0 = 0).
[[nodiscard]] double sliced_divergence(const StokesVector& xi_hat, const StokesVector& xi,
                                       const WeightVector& s);

}  // namespace blochmle

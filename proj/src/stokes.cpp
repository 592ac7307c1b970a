#include "blochmle/stokes.hpp"

#include <cmath>
#include <string>

#include "blochmle/errors.hpp"

namespace blochmle {

CountRecord::CountRecord(const std::array<AxisCounts, kAxes>& axes) : axes_(axes) {
  for (std::size_t i = 0; i < kAxes; ++i) {
    if (axes_[i].n_plus < 0 || axes_[i].n_minus < 0) {
      throw DomainError("negative count on axis " + std::to_string(i + 1));
    }
  }
}

std::int64_t CountRecord::total() const {
  std::int64_t n = 0;
  for (const auto& a : axes_) n += a.total();
  return n;
}

bool CountRecord::is_complete() const {
  for (const auto& a : axes_) {
    if (a.total() < 1) return false;
  }
  return true;
}

StokesVector::StokesVector(double xi1, double xi2, double xi3)
    : StokesVector(std::array<double, kAxes>{xi1, xi2, xi3}) {}

StokesVector::StokesVector(const std::array<double, kAxes>& xi) : xi_(xi) {
  for (std::size_t i = 0; i < kAxes; ++i) {
    // NaN fails the comparison as well.
    if (!(std::abs(xi_[i]) <= 1.0)) {
      throw DomainError("Stokes component " + std::to_string(i + 1) + " outside [-1, 1]");
    }
  }
}

bool StokesVector::is_interior() const {
  for (double v : xi_) {
    if (!(std::abs(v) < 1.0)) return false;
  }
  return true;
}

WeightVector::WeightVector() : s_{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0} {}

WeightVector::WeightVector(double s1, double s2, double s3)
    : WeightVector(std::array<double, kAxes>{s1, s2, s3}) {}

WeightVector::WeightVector(const std::array<double, kAxes>& s) : s_(s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kAxes; ++i) {
    if (!(s_[i] > 0.0) || !std::isfinite(s_[i])) {
      throw DomainError("weight " + std::to_string(i + 1) + " must be positive");
    }
    sum += s_[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("weights must sum to 1");
  }
}

WeightVector WeightVector::from_ratios(const std::array<double, kAxes>& ratios) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kAxes; ++i) {
    if (!(ratios[i] > 0.0) || !std::isfinite(ratios[i])) {
      throw DomainError("weight ratio " + std::to_string(i + 1) + " must be positive");
    }
    sum += ratios[i];
  }
  return WeightVector(ratios[0] / sum, ratios[1] / sum, ratios[2] / sum);
}

std::pair<StokesVector, WeightVector> temporal_estimate(const CountRecord& counts) {
  const std::int64_t total = counts.total();
  std::array<double, kAxes> xi{};
  std::array<double, kAxes> s{};
  for (std::size_t i = 0; i < kAxes; ++i) {
    const auto& a = counts.axis(i);
    const std::int64_t n_i = a.total();
    if (n_i < 1) {
      throw DomainError("axis " + std::to_string(i + 1) + " has no measurements");
    }
    xi[i] = static_cast<double>(a.n_plus - a.n_minus) / static_cast<double>(n_i);
    s[i] = static_cast<double>(n_i) / static_cast<double>(total);
  }
  return {StokesVector(xi), WeightVector(s)};
}

double norm_squared(const std::array<double, kAxes>& v) {
  return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
}

double norm_squared(const StokesVector& xi) { return norm_squared(xi.values()); }

}  // namespace blochmle

#pragma once

// Core value types for single-qubit Pauli tomography and the temporal
// (frequency) estimate computed straight from the tallies.

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>

namespace blochmle {

inline constexpr std::size_t kAxes = 3;

/// Outcome tallies of one Pauli axis.
struct AxisCounts {
  std::int64_t n_plus = 0;
  std::int64_t n_minus = 0;

  [[nodiscard]] std::int64_t total() const { return n_plus + n_minus; }
  friend bool operator==(const AxisCounts&, const AxisCounts&) = default;
};

/// Raw tallies for the three Pauli axes.
///
/// Construction only checks that every count is nonnegative; an axis that was
/// never measured (N_i = 0) is representable so that simulated randomized runs
/// can be reported faithfully. `temporal_estimate` rejects such records, and
/// `is_complete()` tells whether every axis was measured at least once.
class CountRecord {
 public:
  CountRecord() = default;
  explicit CountRecord(const std::array<AxisCounts, kAxes>& axes);
  CountRecord(AxisCounts x, AxisCounts y, AxisCounts z)
      : CountRecord(std::array<AxisCounts, kAxes>{x, y, z}) {}

  [[nodiscard]] const AxisCounts& axis(std::size_t i) const { return axes_.at(i); }
  [[nodiscard]] const std::array<AxisCounts, kAxes>& axes() const { return axes_; }
  [[nodiscard]] std::int64_t axis_total(std::size_t i) const { return axes_.at(i).total(); }
  [[nodiscard]] std::int64_t total() const;
  [[nodiscard]] bool is_complete() const;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;

 private:
  std::array<AxisCounts, kAxes> axes_{};
};

/// A point of the closed Stokes cube [-1, 1]^3.
class StokesVector {
 public:
  StokesVector() = default;
  StokesVector(double xi1, double xi2, double xi3);
  explicit StokesVector(const std::array<double, kAxes>& xi);

  [[nodiscard]] double operator[](std::size_t i) const { return xi_[i]; }
  [[nodiscard]] const std::array<double, kAxes>& values() const { return xi_; }

  /// True when every component lies in the open interval (-1, 1).
  [[nodiscard]] bool is_interior() const;

  friend bool operator==(const StokesVector&, const StokesVector&) = default;

 private:
  std::array<double, kAxes> xi_{};
};

/// Measurement fractions (s_1, s_2, s_3): strictly positive, summing to one.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Equal weights (1/3, 1/3, 1/3).
  WeightVector();
  WeightVector(double s1, double s2, double s3);
  explicit WeightVector(const std::array<double, kAxes>& s);

  /// Normalizes positive ratios, e.g. (5, 1, 1) -> (5/7, 1/7, 1/7).
  static WeightVector from_ratios(const std::array<double, kAxes>& ratios);

  [[nodiscard]] double operator[](std::size_t i) const { return s_[i]; }
  [[nodiscard]] const std::array<double, kAxes>& values() const { return s_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::array<double, kAxes> s_{};
};

/// xi_i = (n+_i - n-_i) / N_i and s_i = N_i / N.
/// Throws DomainError if some axis has N_i = 0.
[[nodiscard]] std::pair<StokesVector, WeightVector> temporal_estimate(const CountRecord& counts);

[[nodiscard]] double norm_squared(const StokesVector& xi);
[[nodiscard]] double norm_squared(const std::array<double, kAxes>& v);

}  // namespace blochmle

#pragma once

// Seeded random instances for invariant suites, benchmarks and tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "blochmle/stokes.hpp"

namespace blochmle {

class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Components uniform in [-bound, bound].
  std::array<double, 3> box(double bound) {
    return {uniform(-bound, bound), uniform(-bound, bound), uniform(-bound, bound)};
  }

  /// Uniform in [-1, 1]^3, rejected until the norm exceeds 1.
  StokesVector exterior() {
    for (;;) {
      const auto v = box(1.0);
      if (norm_squared(v) > 1.0) return StokesVector(v);
    }
  }

  /// Components uniform in (-bound, bound), bound < 1.
  StokesVector interior(double bound = 0.99) { return StokesVector(box(bound)); }

  /// Uniformly distributed point of the unit sphere.
  std::array<double, 3> sphere_point() {
    for (;;) {
      const auto v = box(1.0);
      const double n2 = norm_squared(v);
      if (n2 > 1e-6 && n2 <= 1.0) {
        const double n = std::sqrt(n2);
        return {v[0] / n, v[1] / n, v[2] / n};
      }
    }
  }

  /// Normalized ratios drawn uniformly from [floor, 1).
  WeightVector weights(double floor = 0.05) {
    return WeightVector::from_ratios(
        {uniform(floor, 1.0), uniform(floor, 1.0), uniform(floor, 1.0)});
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blochmle

#pragma once

// Seeded synthetic tallies for standard and randomized Pauli tomography.
//
// Random bits come from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Each run derives independent substreams from the user
// seed with SplitMix64:
//
//   substream_seed(seed, k) = splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15)
//
// with k = 0, 1, 2 for the three axes of a standard run and k = 3 for the
// single categorical stream of a randomized run. A uniform variate is
// (word >> 11) * 2^-53. Outcomes are decided by inverse CDF in canonical
// order (+1 before -1; axis 1, 2, 3), so counts reproduce bit-for-bit on any
// conforming platform.

#include <cstdint>
#include <variant>

#include "blochmle/stokes.hpp"

namespace blochmle {

/// N shots on every axis.
struct StandardMode {
  std::int64_t shots_per_axis = 0;
};

/// N shots in total, each measuring axis i with probability s_i.
struct RandomizedMode {
  WeightVector s;
  std::int64_t total_shots = 0;
};

struct SimulationSpec {
  /// Norm may exceed 1 by at most kNormSlack (rounding of pure states).
  static constexpr double kNormSlack = 1e-12;

  StokesVector xi_true;
  std::variant<StandardMode, RandomizedMode> mode;
  std::uint64_t seed = 0;

  void validate() const;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);
[[nodiscard]] std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// Draws one experiment. A randomized run with few shots may leave an axis
/// unmeasured; the record then reports N_i = 0 for it.
[[nodiscard]] CountRecord simulate(const SimulationSpec& spec);

}  // namespace blochmle

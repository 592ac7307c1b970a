#pragma once

// Families of projection curves started from a lattice in a coordinate plane.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blochmle/stokes.hpp"

namespace blochmle {

enum class Plane { xi1xi2, xi1xi3, xi2xi3 };

/// "xi1xi2", "xi1xi3" or "xi2xi3"; DomainError otherwise.
[[nodiscard]] Plane parse_plane(std::string_view name);

struct TrajectoryRow {
  int trajectory_id = 0;
  int sample_index = 0;
  StokesVector point;
};

/// Start points are the lattice (-1 + 2j/grid, -1 + 2k/grid) in `plane`, the
/// third coordinate zero, keeping only points outside the closed unit ball.
[[nodiscard]] std::vector<StokesVector> lattice_starts(Plane plane, int grid);

/// One projection_trajectory of `samples` points per start.
[[nodiscard]] std::vector<TrajectoryRow> trajectory_rows(const std::vector<StokesVector>& starts,
                                                         const WeightVector& s, int samples);

/// trajectory_id,sample_index,xi1,xi2,xi3
[[nodiscard]] std::string format_trajectories_csv(const std::vector<TrajectoryRow>& rows);

}  // namespace blochmle

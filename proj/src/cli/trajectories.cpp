#include "blochmle/trajectories.hpp"

#include <fmt/format.h>

#include "blochmle/errors.hpp"
#include "blochmle/io.hpp"
#include "blochmle/projector.hpp"

namespace blochmle {

Plane parse_plane(std::string_view name) {
  if (name == "xi1xi2") return Plane::xi1xi2;
  if (name == "xi1xi3") return Plane::xi1xi3;
  if (name == "xi2xi3") return Plane::xi2xi3;
  throw DomainError(fmt::format("plane: unknown value '{}' (expected xi1xi2, xi1xi3 or xi2xi3)", name));
}

std::vector<StokesVector> lattice_starts(Plane plane, int grid) {
  if (grid < 1) throw DomainError("grid must be at least 1");
  std::size_t u = 0;
  std::size_t v = 1;
  if (plane == Plane::xi1xi3) v = 2;
  if (plane == Plane::xi2xi3) u = 1, v = 2;

  std::vector<StokesVector> starts;
  for (int j = 0; j <= grid; ++j) {
    for (int k = 0; k <= grid; ++k) {
      std::array<double, 3> p{};
      p[u] = -1.0 + 2.0 * j / grid;
      p[v] = -1.0 + 2.0 * k / grid;
      if (norm_squared(p) > 1.0) starts.emplace_back(p);
    }
  }
  return starts;
}

std::vector<TrajectoryRow> trajectory_rows(const std::vector<StokesVector>& starts,
                                           const WeightVector& s, int samples) {
  if (samples < 2) throw DomainError("samples must be at least 2");
  std::vector<TrajectoryRow> rows;
  int id = 0;
  for (const auto& start : starts) {
    const auto curve = projection_trajectory(start, s, static_cast<std::size_t>(samples));
    for (std::size_t k = 0; k < curve.size(); ++k) {
      rows.push_back({id, static_cast<int>(k), curve[k]});
    }
    ++id;
  }
  return rows;
}

std::string format_trajectories_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "trajectory_id,sample_index,xi1,xi2,xi3\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", r.trajectory_id, r.sample_index, format_real(r.point[0]),
                       format_real(r.point[1]), format_real(r.point[2]));
  }
  return out;
}

}  // namespace blochmle

#pragma once

// Seeded property suites over the numerical invariants of each module. Every
// check reports the worst deviation it saw next to its threshold.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace blochmle {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

[[nodiscard]] std::vector<CheckResult> run_infogeo_suite(std::uint64_t seed);
[[nodiscard]] std::vector<CheckResult> run_projector_suite(std::uint64_t seed);
[[nodiscard]] std::vector<CheckResult> run_simulator_suite(std::uint64_t seed);

/// "infogeo", "projector", "simulator" or "all". Throws DomainError otherwise.
[[nodiscard]] std::vector<CheckResult> run_suite(std::string_view name, std::uint64_t seed);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace blochmle

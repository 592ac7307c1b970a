#pragma once

// Timing comparison of the closed-form projection against the oracle search on
// random exterior instances with equal weights.

#include <cstdint>
#include <string>
#include <vector>

#include "blochmle/oracle.hpp"

namespace blochmle {

struct BenchTrial {
  double projection_ms = 0.0;
  double oracle_ms = 0.0;
  /// max_i |xi*_i - xi_oracle_i|
  double discrepancy = 0.0;
};

struct MethodTiming {
  double mean_ms = 0.0;
  double median_ms = 0.0;
};

struct BenchSummary {
  std::vector<BenchTrial> trials;
  MethodTiming projection;
  MethodTiming oracle;
  double max_discrepancy = 0.0;

  /// oracle.mean_ms / projection.mean_ms
  [[nodiscard]] double speedup() const;
};

inline constexpr double kBenchDiscrepancyLimit = 1e-4;

[[nodiscard]] BenchSummary run_benchmark(int trials, std::uint64_t seed,
                                         const OracleConfig& cfg = {});

/// method,trials,mean_ms,median_ms,max_discrepancy
[[nodiscard]] std::string format_bench_csv(const BenchSummary& summary);

}  // namespace blochmle

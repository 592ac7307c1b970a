#pragma once

// Counts files and estimate reports.
//
// Counts, JSON:
//   {"axes": [{"axis": 1, "n_plus": 80, "n_minus": 20}, ... three records]}
// Counts, CSV:
//   axis,n_plus,n_minus
//   1,80,20
//   2,50,50
//   3,65,35

#include <optional>
#include <string>
#include <string_view>

#include "blochmle/errors.hpp"
#include "blochmle/oracle.hpp"
#include "blochmle/projector.hpp"
#include "blochmle/stokes.hpp"

namespace blochmle {

/// A malformed counts file; the message names the offending field.
class CountsFormatError : public DomainError {
 public:
  explicit CountsFormatError(const std::string& what) : DomainError(what) {}
};

enum class CountsFormat { json, csv };

/// Detects JSON (first non-blank character '{') or CSV.
[[nodiscard]] CountRecord parse_counts(std::string_view text);
[[nodiscard]] CountRecord parse_counts_json(std::string_view text);
[[nodiscard]] CountRecord parse_counts_csv(std::string_view text);
[[nodiscard]] std::string format_counts(const CountRecord& counts, CountsFormat format);

struct OracleComparison {
  StokesVector xi;
  double max_discrepancy = 0.0;
};

struct EstimateReport {
  StokesVector temporal;
  WeightVector weights;
  double norm = 0.0;
  ProjectionResult projection;
  /// D(p_(s, xi_hat) || p_(s, xi*)), 0 log 0 = 0.
  double kl_divergence = 0.0;
  std::optional<OracleComparison> oracle;
};

/// temporal_estimate -> project_mle, optionally cross-checked by the oracle.
[[nodiscard]] EstimateReport make_estimate_report(const CountRecord& counts,
                                                  const std::optional<OracleConfig>& oracle);

/// JSON with every real printed to 17 significant digits.
[[nodiscard]] std::string to_json(const EstimateReport& report);

/// printf "%.17g".
[[nodiscard]] std::string format_real(double value);

}  // namespace blochmle
